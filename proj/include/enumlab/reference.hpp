#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "enumlab/graph.hpp"
#include "enumlab/vm.hpp"

namespace enumlab::problems {

/// A host-instrumented program with the machine's run contract: a verdict
/// plus a running-step count under a frozen accounting convention
/// (docs/file_formats.md, "Step conventions"). Lengths are in symbols, the
/// same currency as machine images, so knowledge-base comparisons are
/// exact.
class ReferenceProgram {
 public:
  struct RunResult {
    vm::Verdict verdict;
    std::uint64_t steps;
  };

  virtual ~ReferenceProgram() = default;
  virtual std::string_view name() const = 0;
  virtual std::uint64_t length_at(unsigned n) const = 0;
  virtual RunResult run(const Graph& g) const = 0;
};

/// Charged code length of the SIMPLE brute-forcer, constant at every n.
inline constexpr std::uint64_t kSimpleLength = 24;

/// Charged code overhead of the table-lookup solver, on top of its table
/// (2 symbols per table cell).
inline constexpr std::uint64_t kPrecomputeCodeLength = 4;

/// The exhaustive 3-coloring scan: tries all 3^n colorings in lexicographic
/// order (node 0 most significant) and scans present edges in canonical
/// order under each. Steps: 1 per coloring tried + 1 per edge examined.
/// Unbounded — answers every size. The bound argument exists for interface
/// symmetry and must be >= 1.
std::shared_ptr<const ReferenceProgram> simple_reference(unsigned bound = 1);

/// The table-lookup solver at a fixed bound: answers for every graph of
/// size <= bound via a table keyed by the prime-product hash of the graph
/// embedded into the bound-size universe, and ResultUndefined above the
/// bound. Steps: 1 per present edge (key computation) + 1 lookup; the
/// undefined path costs 1 (the size check). Length: 2 symbols per table
/// entry + kPrecomputeCodeLength, measured from the actually built table.
std::shared_ptr<const ReferenceProgram> precompute_reference(
    unsigned bound, unsigned cap = kDefaultGraphCap);

/// Machine-resident variant: real code plus the answer table as the data
/// segment, indexed directly by the input's adjacency byte. Sound for
/// bounds 3 and 4 only — LOAD_DATA addresses at most 256 cells, and below
/// that every sub-bound index collides onto an always-colorable graph in
/// the bound universe (exhaustively verified in tests). Throws
/// ConstraintError otherwise.
vm::ProgramImage build_precompute_image(unsigned bound);

}  // namespace enumlab::problems
