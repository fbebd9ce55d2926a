#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enumlab/knowledge.hpp"
#include "enumlab/search.hpp"

namespace enumlab::analyze {

struct AnalyzeConfig {
  /// Extended horizon; 0 means the default m = 2n.
  unsigned m_override = 0;
  unsigned jobs = 1;
  unsigned graph_cap = problems::kDefaultGraphCap;
  vm::MachineConfig machine;
};

struct ExtrapolationRecord {
  search::CandidateRecord candidate;
  /// Worst running steps at the extended sizes the candidate reached.
  std::map<unsigned, std::uint64_t> extended_worst;
  bool potential_unbounded = false;
  bool potential_efficient = false;  // implies potential_unbounded
  unsigned u_at_n = 0;
  /// u over [2, m] from search plus extended observations; present only
  /// when the candidate stayed correct through m.
  std::optional<unsigned> u_at_m;
};

/// Pushes every report survivor through sizes n+1..m (m = 2n unless
/// overridden) with budget minwet(kb, m) - length. ResultUndefined stops a
/// candidate as bounded; staying correct everywhere marks it potentially
/// unbounded, and additionally u(m) <= u(n) marks it potentially efficient.
/// Rejects m beyond the graph cap with guidance to lower n.
std::vector<ExtrapolationRecord> extrapolate(const search::SearchReport& report,
                                             const knowledge::KnowledgeBase& kb,
                                             const AnalyzeConfig& config = {});

/// Candidates worth human time: filters to potential_unbounded, sorts
/// potential_efficient first, then ascending u(m), length, encoding.
std::vector<ExtrapolationRecord> rank_for_inspection(
    std::span<const ExtrapolationRecord> records);

/// Plain-text ranked table with an explicit "none found" marker, followed by
/// the report record schema with the two flags appended. source_manifest
/// ties the output to the report it consumed.
std::string format_inspection(std::span<const ExtrapolationRecord> ranked,
                              unsigned nodes, unsigned m,
                              std::string_view source_manifest = {});

}  // namespace enumlab::analyze
