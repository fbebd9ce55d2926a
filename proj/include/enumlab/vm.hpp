#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace enumlab::vm {

// The machine executes strings of 4-bit symbols. An instruction is an opcode
// symbol followed by its operand symbols. The full reference lives in
// docs/instruction_set.md; the encoding below is frozen — reports, image
// files and enumeration order all depend on it.
//
//   0x0 HALT_FALSE   halt, answer false
//   0x1 HALT_TRUE    halt, answer true
//   0x2 HALT_UNDEF   halt, answer undefined
//   0x3 LEFT         move head left (fault below cell 0)
//   0x4 RIGHT        move head right (fault at the cell limit)
//   0x5 INC          cell := cell + 1 mod 256
//   0x6 DEC          cell := cell - 1 mod 256
//   0x7 READ_INPUT   cell := next input byte (fault past end of input)
//   0x8 JZ s s       if cell == 0, pc := pc + signed8(operand)
//   0x9 JNZ s s      if cell != 0, pc := pc + signed8(operand)
//   0xa LOAD_DATA    cell := data[cell] (fault if cell >= data size)
//   0xb SET_IMM s    cell := operand (0..15)
//   0xc ADD          cell := cell + right neighbour mod 256
//   0xd SUB          cell := cell - right neighbour mod 256
//   0xe NOP          do nothing
//   0xf              reserved, statically invalid
enum class Opcode : std::uint8_t {
  HaltFalse = 0x0,
  HaltTrue = 0x1,
  HaltUndef = 0x2,
  Left = 0x3,
  Right = 0x4,
  Inc = 0x5,
  Dec = 0x6,
  ReadInput = 0x7,
  Jz = 0x8,
  Jnz = 0x9,
  LoadData = 0xa,
  SetImm = 0xb,
  Add = 0xc,
  Sub = 0xd,
  Nop = 0xe,
  Reserved = 0xf,
};

inline constexpr std::uint8_t kSymbolCount = 16;

/// Number of operand symbols following the opcode symbol.
constexpr unsigned operand_symbols(Opcode op) {
  switch (op) {
    case Opcode::Jz:
    case Opcode::Jnz:
      return 2;
    case Opcode::SetImm:
      return 1;
    default:
      return 0;
  }
}

/// A loadable program: code symbols plus a static data segment. Each data
/// cell is one byte and costs two symbols of length, so
/// length = |code| + 2·|data|. Loading is charged one step per symbol.
struct ProgramImage {
  std::vector<std::uint8_t> code;  // 4-bit symbols, one per element
  std::vector<std::uint8_t> data;  // 8-bit cells

  std::size_t length() const { return code.size() + 2 * data.size(); }

  bool operator==(const ProgramImage&) const = default;
};

enum class Verdict {
  ResultTrue,
  ResultFalse,
  ResultUndefined,
  OutOfSteps,
  Invalid,
};

std::string_view verdict_name(Verdict v);

struct Outcome {
  Verdict verdict = Verdict::Invalid;
  std::uint64_t running_steps = 0;
  std::uint64_t loading_steps = 0;
  std::string fault;  // non-empty iff verdict == Invalid

  /// Total charged execution time: loading + running.
  std::uint64_t execution_time() const { return loading_steps + running_steps; }
};

struct Validity {
  bool valid = false;
  std::string reason;  // non-empty iff !valid

  explicit operator bool() const { return valid; }
};

/// Static validity of a code string under linear decoding: every opcode is
/// assigned, every operand is complete, every jump target lands inside the
/// code. Pure; does not execute anything.
Validity decode_static(std::span<const std::uint8_t> code);

struct MachineConfig {
  /// Work-tape size in cells. Bounds memory of hostile programs; an
  /// artifact knob, not part of the cost model.
  std::size_t tape_cells = 4096;
};

/// Executes at most `budget` instructions (loading is pre-charged; the
/// budget meters running steps only). Runtime faults — tape limit, input
/// overrun, running off the end of code, decoding garbage after a
/// misaligned jump — yield Verdict::Invalid, never an exception.
/// Deterministic: identical inputs give bit-identical outcomes.
Outcome run(const ProgramImage& program, std::span<const std::uint8_t> input,
            std::uint64_t budget, const MachineConfig& config = {});

/// Loading cost in steps: exactly the program length (coefficient 1).
std::uint64_t loading_steps(const ProgramImage& program);

// Image file format (docs/file_formats.md): a header line with code-symbol
// and data-cell counts, a line of code symbols in hex, a line of data cells
// in hex pairs. parse_image(serialize_image(x)) == x, bit-exact.
std::string serialize_image(const ProgramImage& image);
ProgramImage parse_image(std::string_view text);

/// Compact encoding used in reports: code symbols as hex digits, and
/// ".<data hex pairs>" appended when the data segment is non-empty.
std::string encode_hex(const ProgramImage& image);
ProgramImage decode_hex(std::string_view text);

/// One instruction per line, for inspection reports.
std::string disassemble(const ProgramImage& image);

}  // namespace enumlab::vm
