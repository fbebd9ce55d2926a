#include "enumlab/vm.hpp"

#include <sstream>
#include <stdexcept>

namespace enumlab::vm {

namespace {

const char* mnemonic(Opcode op) {
  switch (op) {
    case Opcode::HaltFalse: return "HALT_FALSE";
    case Opcode::HaltTrue: return "HALT_TRUE";
    case Opcode::HaltUndef: return "HALT_UNDEF";
    case Opcode::Left: return "LEFT";
    case Opcode::Right: return "RIGHT";
    case Opcode::Inc: return "INC";
    case Opcode::Dec: return "DEC";
    case Opcode::ReadInput: return "READ_INPUT";
    case Opcode::Jz: return "JZ";
    case Opcode::Jnz: return "JNZ";
    case Opcode::LoadData: return "LOAD_DATA";
    case Opcode::SetImm: return "SET_IMM";
    case Opcode::Add: return "ADD";
    case Opcode::Sub: return "SUB";
    case Opcode::Nop: return "NOP";
    case Opcode::Reserved: return "RESERVED";
  }
  return "?";
}

// Offsets are relative to the position of the jump's own opcode symbol.
int jump_offset(std::uint8_t hi, std::uint8_t lo) {
  return static_cast<int>(static_cast<std::int8_t>((hi << 4) | lo));
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 0xf]; }

unsigned hex_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
  throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ResultTrue: return "true";
    case Verdict::ResultFalse: return "false";
    case Verdict::ResultUndefined: return "undefined";
    case Verdict::OutOfSteps: return "out-of-steps";
    case Verdict::Invalid: return "invalid";
  }
  return "?";
}

Validity decode_static(std::span<const std::uint8_t> code) {
  if (code.empty()) return {false, "empty code"};
  std::size_t pc = 0;
  while (pc < code.size()) {
    if (code[pc] >= kSymbolCount) return {false, "symbol out of range"};
    auto op = static_cast<Opcode>(code[pc]);
    if (op == Opcode::Reserved)
      return {false, "reserved opcode at " + std::to_string(pc)};
    unsigned operands = operand_symbols(op);
    if (pc + 1 + operands > code.size())
      return {false, "truncated operand at " + std::to_string(pc)};
    if (op == Opcode::Jz || op == Opcode::Jnz) {
      int target = static_cast<int>(pc) + jump_offset(code[pc + 1], code[pc + 2]);
      if (target < 0 || target >= static_cast<int>(code.size()))
        return {false, "jump out of range at " + std::to_string(pc)};
    }
    pc += 1 + operands;
  }
  return {true, {}};
}

std::uint64_t loading_steps(const ProgramImage& program) {
  return program.length();
}

Outcome run(const ProgramImage& program, std::span<const std::uint8_t> input,
            std::uint64_t budget, const MachineConfig& config) {
  if (config.tape_cells < 1)
    throw std::invalid_argument("the work tape needs at least one cell");
  Outcome out;
  out.loading_steps = loading_steps(program);

  const auto& code = program.code;
  // Cells are zero until touched; the tape materializes lazily up to the
  // configured limit so short-lived runs stay cheap.
  std::vector<std::uint8_t> tape(std::min<std::size_t>(16, config.tape_cells), 0);
  auto grow_to = [&](std::size_t cell) {
    if (cell >= tape.size())
      tape.resize(std::min(config.tape_cells, std::max(cell + 1, tape.size() * 2)), 0);
  };
  std::size_t head = 0;
  std::size_t cursor = 0;
  std::size_t pc = 0;
  std::uint64_t steps = 0;

  auto fault = [&](std::string reason) {
    out.verdict = Verdict::Invalid;
    out.running_steps = steps;
    out.fault = std::move(reason);
    return out;
  };
  auto halt = [&](Verdict v) {
    out.verdict = v;
    out.running_steps = steps;
    return out;
  };

  for (;;) {
    if (pc >= code.size()) {
      // Fallthrough past the last instruction; jumps are range-checked, so
      // only sequential execution can get here.
      return fault("ran off the end of code");
    }
    if (steps == budget) {
      out.verdict = Verdict::OutOfSteps;
      out.running_steps = budget;
      return out;
    }
    std::uint8_t sym = code[pc];
    if (sym >= kSymbolCount) return fault("symbol out of range");
    auto op = static_cast<Opcode>(sym);
    unsigned operands = operand_symbols(op);
    if (pc + 1 + operands > code.size()) {
      // Reachable only via a jump landing on a tail fragment.
      ++steps;
      return fault("truncated instruction at " + std::to_string(pc));
    }
    ++steps;  // the instruction executes (and may fault while doing so)
    switch (op) {
      case Opcode::HaltFalse: return halt(Verdict::ResultFalse);
      case Opcode::HaltTrue: return halt(Verdict::ResultTrue);
      case Opcode::HaltUndef: return halt(Verdict::ResultUndefined);
      case Opcode::Left:
        if (head == 0) return fault("head moved below cell 0");
        --head;
        break;
      case Opcode::Right:
        if (head + 1 >= config.tape_cells)
          return fault("work-tape cell limit exceeded");
        ++head;
        grow_to(head);
        break;
      case Opcode::Inc:
        tape[head] = static_cast<std::uint8_t>(tape[head] + 1);
        break;
      case Opcode::Dec:
        tape[head] = static_cast<std::uint8_t>(tape[head] - 1);
        break;
      case Opcode::ReadInput:
        if (cursor >= input.size()) return fault("read past end of input");
        tape[head] = input[cursor++];
        break;
      case Opcode::Jz:
      case Opcode::Jnz: {
        bool taken = (tape[head] == 0) == (op == Opcode::Jz);
        if (taken) {
          int target = static_cast<int>(pc) + jump_offset(code[pc + 1], code[pc + 2]);
          if (target < 0 || target >= static_cast<int>(code.size()))
            return fault("jump out of range at runtime");
          pc = static_cast<std::size_t>(target);
          continue;
        }
        break;
      }
      case Opcode::LoadData:
        if (tape[head] >= program.data.size())
          return fault("data index out of range");
        tape[head] = program.data[tape[head]];
        break;
      case Opcode::SetImm:
        tape[head] = code[pc + 1];
        break;
      case Opcode::Add:
        if (head + 1 >= config.tape_cells)
          return fault("work-tape cell limit exceeded");
        grow_to(head + 1);
        tape[head] = static_cast<std::uint8_t>(tape[head] + tape[head + 1]);
        break;
      case Opcode::Sub:
        if (head + 1 >= config.tape_cells)
          return fault("work-tape cell limit exceeded");
        grow_to(head + 1);
        tape[head] = static_cast<std::uint8_t>(tape[head] - tape[head + 1]);
        break;
      case Opcode::Nop:
        break;
      case Opcode::Reserved:
        return fault("reserved opcode executed");
    }
    pc += 1 + operands;
  }
}

std::string serialize_image(const ProgramImage& image) {
  std::ostringstream out;
  out << image.code.size() << ' ' << image.data.size() << '\n';
  for (std::uint8_t s : image.code) out << hex_digit(s);
  out << '\n';
  for (std::uint8_t c : image.data) out << hex_digit(c >> 4) << hex_digit(c & 0xf);
  out << '\n';
  return out.str();
}

ProgramImage parse_image(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t code_count = 0, data_count = 0;
  if (!(in >> code_count >> data_count))
    throw std::invalid_argument("image header: expected code and data counts");
  std::string code_line, data_line;
  in >> std::ws;
  std::getline(in, code_line);
  std::getline(in, data_line);
  if (code_line.size() != code_count)
    throw std::invalid_argument("image: code symbol count mismatch");
  if (data_line.size() != 2 * data_count)
    throw std::invalid_argument("image: data cell count mismatch");
  ProgramImage image;
  image.code.reserve(code_count);
  for (char c : code_line) image.code.push_back(static_cast<std::uint8_t>(hex_value(c)));
  image.data.reserve(data_count);
  for (std::size_t i = 0; i < data_line.size(); i += 2)
    image.data.push_back(static_cast<std::uint8_t>((hex_value(data_line[i]) << 4) |
                                                   hex_value(data_line[i + 1])));
  return image;
}

std::string encode_hex(const ProgramImage& image) {
  std::string out;
  out.reserve(image.code.size() + (image.data.empty() ? 0 : 1 + 2 * image.data.size()));
  for (std::uint8_t s : image.code) out.push_back(hex_digit(s));
  if (!image.data.empty()) {
    out.push_back('.');
    for (std::uint8_t c : image.data) {
      out.push_back(hex_digit(c >> 4));
      out.push_back(hex_digit(c & 0xf));
    }
  }
  return out;
}

ProgramImage decode_hex(std::string_view text) {
  ProgramImage image;
  auto dot = text.find('.');
  std::string_view code_part = text.substr(0, dot);
  if (code_part.empty()) throw std::invalid_argument("empty program encoding");
  for (char c : code_part) image.code.push_back(static_cast<std::uint8_t>(hex_value(c)));
  if (dot != std::string_view::npos) {
    std::string_view data_part = text.substr(dot + 1);
    if (data_part.size() % 2 != 0)
      throw std::invalid_argument("odd data hex length in program encoding");
    for (std::size_t i = 0; i < data_part.size(); i += 2)
      image.data.push_back(static_cast<std::uint8_t>((hex_value(data_part[i]) << 4) |
                                                     hex_value(data_part[i + 1])));
  }
  return image;
}

std::string disassemble(const ProgramImage& image) {
  std::ostringstream out;
  const auto& code = image.code;
  std::size_t pc = 0;
  while (pc < code.size()) {
    auto op = static_cast<Opcode>(code[pc]);
    out << pc << ": " << mnemonic(op);
    unsigned operands = operand_symbols(op);
    if (pc + 1 + operands > code.size()) {
      out << " <truncated>\n";
      break;
    }
    if (op == Opcode::Jz || op == Opcode::Jnz)
      out << ' ' << (static_cast<int>(pc) + jump_offset(code[pc + 1], code[pc + 2]));
    else if (op == Opcode::SetImm)
      out << ' ' << static_cast<unsigned>(code[pc + 1]);
    out << '\n';
    pc += 1 + operands;
  }
  if (!image.data.empty()) out << "data: " << image.data.size() << " cells\n";
  return out.str();
}

}  // namespace enumlab::vm
