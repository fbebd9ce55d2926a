#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "enumlab/graph.hpp"
#include "enumlab/reference.hpp"
#include "enumlab/vm.hpp"

namespace enumlab::knowledge {

/// Execution-time decomposition on the loading machine. The repetition
/// count m models load-once-run-many amortization; every search flow here
/// fixes m = 1 and the field exists for the cost arithmetic only.
struct CostModel {
  std::uint64_t loading_steps = 0;
  std::uint64_t running_steps = 0;
  std::uint64_t repetitions = 1;

  std::uint64_t execution_time() const {
    return loading_steps + repetitions * running_steps;
  }
};

struct MeasureConfig {
  /// Per-run step budget for worst-case measurements. Exhausting it is a
  /// MeasurementError, never a silently capped value.
  std::uint64_t budget = 1'000'000;
  vm::MachineConfig machine;
  unsigned graph_cap = problems::kDefaultGraphCap;
};

/// Worst execution time of a reference program at input size exactly n:
/// max over all size-n graphs of length_at(n) + running steps.
std::uint64_t wet(const problems::ReferenceProgram& prog, unsigned n,
                  const MeasureConfig& config = {});

/// Worst execution time of a machine image at input size exactly n. Faulting
/// runs are measurable (their step count is real); a run that exhausts the
/// measurement budget throws MeasurementError.
std::uint64_t wet(const vm::ProgramImage& image, unsigned n,
                  const MeasureConfig& config = {});

/// One entry of the known-inefficients set. Open so tests can register
/// synthetic entries with prescribed worst times.
class KbEntry {
 public:
  virtual ~KbEntry() = default;
  virtual std::string_view name() const = 0;
  /// "ref" entries are rebuilt by name on load; "image" entries carry their
  /// hex encoding in payload().
  virtual std::string_view kind() const = 0;
  virtual std::string payload() const = 0;
  virtual std::string provenance() const = 0;
  virtual std::uint64_t length_at(unsigned n) const = 0;
  virtual std::uint64_t wet(unsigned n, const MeasureConfig& config) const = 0;
};

std::shared_ptr<const KbEntry> make_simple_entry();
/// Family entry: wet at n measures the table solver built at bound exactly n.
std::shared_ptr<const KbEntry> make_precompute_entry();
std::shared_ptr<const KbEntry> make_image_entry(vm::ProgramImage image,
                                                std::string provenance);

/// The known-inefficients set plus a per-(entry, n) worst-time cache.
/// Read-only during a search pass; not safe for concurrent mutation.
class KnowledgeBase {
 public:
  /// The canonical starting point: { SIMPLE, PRECOMPUTE }.
  static KnowledgeBase seeded(MeasureConfig config = {});

  void add(std::shared_ptr<const KbEntry> entry);
  const std::vector<std::shared_ptr<const KbEntry>>& entries() const {
    return entries_;
  }
  const MeasureConfig& measure_config() const { return measure_; }

  /// Cached wet of entry #index at size n.
  std::uint64_t wet_at(std::size_t index, unsigned n) const;

  /// min over entries of wet(entry, n). Rejects an empty base.
  std::uint64_t minwet(unsigned n) const;

  /// Identity digest over the entry list (kind + payload), independent of
  /// cached measurements.
  std::string digest() const;

  // Human-diffable text format; see docs/file_formats.md. Cached
  // measurements are persisted and reloaded; entries are reconstructed by
  // kind.
  std::string serialize() const;
  static KnowledgeBase parse(std::string_view text, MeasureConfig config = {});

 private:
  struct Measured {
    std::uint64_t length = 0;
    std::uint64_t wet = 0;
  };

  std::vector<std::shared_ptr<const KbEntry>> entries_;
  MeasureConfig measure_;
  mutable std::map<std::pair<std::size_t, unsigned>, Measured> wet_cache_;
};

/// The comparison criterion: prog is inefficient at size n iff its worst
/// execution time reaches minwet(kb, n). Short-circuits on length >= minwet
/// (execution time can never be below loading time), which also classifies
/// non-halting images without measuring them.
bool is_utm_inefficient(const vm::ProgramImage& image, unsigned n,
                        const KnowledgeBase& kb);
bool is_utm_inefficient(const problems::ReferenceProgram& prog, unsigned n,
                        const KnowledgeBase& kb);

/// Programs at least this long need not be enumerated: equals minwet(kb, n).
std::uint64_t length_upper_bound(const KnowledgeBase& kb, unsigned n);

}  // namespace enumlab::knowledge
