#include "enumlab/reference.hpp"

#include <map>
#include <stdexcept>
#include <vector>

#include "enumlab/util.hpp"

namespace enumlab::problems {

namespace {

class SimpleProgram final : public ReferenceProgram {
 public:
  std::string_view name() const override { return "SIMPLE"; }

  std::uint64_t length_at(unsigned) const override { return kSimpleLength; }

  RunResult run(const Graph& g) const override {
    unsigned n = g.nodes;
    // Present edges in canonical order, as (x, y) pairs.
    std::vector<std::pair<unsigned, unsigned>> present;
    for (unsigned x = 0; x < n; ++x)
      for (unsigned y = x + 1; y < n; ++y)
        if (g.edges[edge_index(x, y, n)]) present.emplace_back(x, y);

    std::vector<std::uint8_t> coloring(n, 0);
    std::uint64_t steps = 0;
    for (;;) {
      ++steps;  // one step per coloring tried
      bool conflict = false;
      for (const auto& [x, y] : present) {
        ++steps;  // one step per edge examined
        if (coloring[x] == coloring[y]) {
          conflict = true;
          break;
        }
      }
      if (!conflict) return {vm::Verdict::ResultTrue, steps};
      // Next coloring in lexicographic order, node 0 most significant.
      int i = static_cast<int>(n) - 1;
      while (i >= 0 && coloring[static_cast<unsigned>(i)] == 2) {
        coloring[static_cast<unsigned>(i)] = 0;
        --i;
      }
      if (i < 0) return {vm::Verdict::ResultFalse, steps};
      ++coloring[static_cast<unsigned>(i)];
    }
  }
};

class PrecomputeProgram final : public ReferenceProgram {
 public:
  PrecomputeProgram(unsigned bound, unsigned cap) : bound_(bound) {
    for (const Graph& g : enumerate_graphs(bound, cap))
      table_.emplace(prime_hash(g), oracle_3color(g));
  }

  std::string_view name() const override { return "PRECOMPUTE"; }

  std::uint64_t length_at(unsigned) const override {
    // Table measured from what was actually built, plus the code constant.
    return 2 * static_cast<std::uint64_t>(table_.size()) + kPrecomputeCodeLength;
  }

  RunResult run(const Graph& g) const override {
    if (g.nodes > bound_) return {vm::Verdict::ResultUndefined, 1};
    // Key the same graph embedded into the bound-size universe (extra
    // isolated nodes do not change 3-colorability).
    GraphHash key = 1;
    std::uint64_t steps = 0;
    for (unsigned x = 0; x < g.nodes; ++x) {
      for (unsigned y = x + 1; y < g.nodes; ++y) {
        if (!g.edges[edge_index(x, y, g.nodes)]) continue;
        key *= nth_prime(edge_index(x, y, bound_));
        ++steps;  // one step per present edge
      }
    }
    ++steps;  // the lookup
    return {table_.at(key) ? vm::Verdict::ResultTrue : vm::Verdict::ResultFalse,
            steps};
  }

 private:
  unsigned bound_;
  std::map<GraphHash, bool> table_;
};

// Small assembler for the machine image's code segment.
struct Asm {
  std::vector<std::uint8_t> code;

  std::size_t here() const { return code.size(); }
  void op(vm::Opcode o) { code.push_back(static_cast<std::uint8_t>(o)); }
  std::size_t jump(vm::Opcode o) {
    std::size_t at = here();
    op(o);
    code.push_back(0);
    code.push_back(0);
    return at;
  }
  void patch(std::size_t at, std::size_t target) {
    int off = static_cast<int>(target) - static_cast<int>(at);
    if (off < -128 || off > 127) throw std::logic_error("jump offset overflow");
    auto raw = static_cast<std::uint8_t>(static_cast<std::int8_t>(off));
    code[at + 1] = raw >> 4;
    code[at + 2] = raw & 0xf;
  }
};

}  // namespace

std::shared_ptr<const ReferenceProgram> simple_reference(unsigned bound) {
  if (bound < 1) throw std::invalid_argument("simple_reference: bound must be >= 1");
  return std::make_shared<SimpleProgram>();
}

std::shared_ptr<const ReferenceProgram> precompute_reference(unsigned bound,
                                                             unsigned cap) {
  if (bound < 1) throw std::invalid_argument("precompute_reference: bound must be >= 1");
  return std::make_shared<PrecomputeProgram>(bound, cap);
}

vm::ProgramImage build_precompute_image(unsigned bound) {
  if (bound < 3 || bound > 4)
    throw ConstraintError(
        "machine-resident table images support bounds 3 and 4 only "
        "(single-cell indexing); use the host reference for other bounds");

  // Layout: read the node count, dispatch on it with a chain of DEC/JZ
  // (size 1 jumps straight to the lookup with the cell already 0, sizes
  // 2..bound read the adjacency byte first, anything else is undefined),
  // then answer from the table.
  Asm a;
  a.op(vm::Opcode::ReadInput);              // cell := node count
  a.op(vm::Opcode::Dec);
  std::size_t j_size1 = a.jump(vm::Opcode::Jz);
  std::vector<std::size_t> j_ge2;
  for (unsigned s = 2; s <= bound; ++s) {
    a.op(vm::Opcode::Dec);
    j_ge2.push_back(a.jump(vm::Opcode::Jz));
  }
  a.op(vm::Opcode::HaltUndef);

  std::size_t ge2 = a.here();
  a.op(vm::Opcode::ReadInput);              // cell := adjacency byte
  std::size_t lookup = a.here();
  a.op(vm::Opcode::LoadData);               // cell := table[cell]
  std::size_t j_false = a.jump(vm::Opcode::Jz);
  a.op(vm::Opcode::HaltTrue);
  std::size_t halt_false = a.here();
  a.op(vm::Opcode::HaltFalse);

  a.patch(j_size1, lookup);
  for (std::size_t j : j_ge2) a.patch(j, ge2);
  a.patch(j_false, halt_false);

  vm::ProgramImage image;
  image.code = std::move(a.code);
  for (const Graph& g : enumerate_graphs(bound))
    image.data.push_back(oracle_3color(g) ? 1 : 0);

  if (auto v = vm::decode_static(image.code); !v)
    throw std::logic_error("precompute image failed static decode: " + v.reason);
  return image;
}

}  // namespace enumlab::problems
