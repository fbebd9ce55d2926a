#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "enumlab/knowledge.hpp"
#include "enumlab/vm.hpp"

namespace enumlab::search {

struct SearchConfig {
  unsigned nodes = 3;
  /// Practicality cap on enumerated lengths; the effective limit is
  /// min(max_length, minwet(kb, nodes) - 1) since longer programs are
  /// inefficient by construction and would get a non-positive budget.
  std::size_t max_length = 1;
  unsigned jobs = 1;
  unsigned graph_cap = problems::kDefaultGraphCap;
  vm::MachineConfig machine;
};

struct CandidateRecord {
  vm::ProgramImage image;
  std::string encoding;  // hex form, the report's primary key
  std::size_t length = 0;
  /// Worst running steps per input size; filled as sizes complete, so an
  /// incorrect candidate carries only the sizes it reached.
  std::map<unsigned, std::uint64_t> worst_steps;
  unsigned u = 0;  // over sizes [2, n]; 0 when n < 2
  bool correct = false;
};

/// Every statically valid code string of exactly this length, ascending
/// lexicographic, streamed. Lengths above 15 symbols are refused (16^L
/// overflows the odometer and is unreachable in practice anyway).
void for_each_program(std::size_t length,
                      const std::function<void(vm::ProgramImage&&)>& fn);
std::vector<vm::ProgramImage> generate_programs(std::size_t length);

/// Shared per-size input bank: encoded inputs and oracle verdicts for every
/// graph of each size, built once and read concurrently.
class InputBank {
 public:
  struct SizeInputs {
    std::vector<std::vector<std::uint8_t>> inputs;  // ascending bit-vector order
    std::vector<bool> colorable;
  };

  explicit InputBank(unsigned graph_cap) : cap_(graph_cap) {}

  /// Builds the size on first use; call before sharing across threads.
  const SizeInputs& at(unsigned size);

 private:
  unsigned cap_;
  std::map<unsigned, SizeInputs> sizes_;
};

/// Runs the candidate on every input of sizes 1..n with budget
/// ub - length. Correct iff every verdict matches the oracle; undefined,
/// out-of-steps and faults all count as incorrect at sizes <= n. Stops at
/// the first failure.
CandidateRecord evaluate_program(const vm::ProgramImage& image, unsigned nodes,
                                 std::uint64_t ub, InputBank& bank,
                                 const vm::MachineConfig& machine);

struct SearchReport {
  unsigned schema = 1;
  unsigned nodes = 0;
  std::size_t max_length = 0;        // configured cap
  std::size_t effective_length = 0;  // lengths actually enumerated
  std::uint64_t ub = 0;              // minwet(kb, nodes)
  std::string manifest;              // digest tying the report to its run
  std::vector<CandidateRecord> survivors;  // correct only, canonical order
};

/// Ties an output to the run that produced it. The digest covers only the
/// deterministic fields — job count and wall-clock timestamps stay out, so
/// reruns with different parallelism reference the same manifest.
struct RunManifest {
  unsigned schema = 1;
  unsigned nodes = 0;
  std::size_t max_length = 0;
  std::uint64_t ub = 0;
  std::size_t tape_cells = 4096;  // changes fault points, so it is digested
  std::string kb_digest;
  unsigned jobs = 1;
  std::string created;  // ISO timestamp, informational only

  std::string digest() const;
  std::string format() const;
};

/// The enumeration pass: all statically valid programs of lengths
/// 1..effective bound, evaluated against every input of sizes 1..n, report
/// of the correct ones sorted by (u, length, encoding). Deterministic and
/// byte-identical across job counts.
SearchReport search(const SearchConfig& config,
                    const knowledge::KnowledgeBase& kb);

std::string format_report(const SearchReport& report);
SearchReport parse_report(std::string_view text);

/// The knowledge-base update loop: validates that every marked encoding is
/// a report survivor, adds the marked images as known inefficients, and
/// reruns the search under the lowered bound.
std::pair<knowledge::KnowledgeBase, SearchReport> update_knowledge_and_rerun(
    const SearchReport& report, const knowledge::KnowledgeBase& kb,
    std::span<const std::string> marked, const SearchConfig& config);

}  // namespace enumlab::search
