#include "enumlab/analyze.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "enumlab/growth.hpp"
#include "enumlab/util.hpp"
#include "enumlab/vm.hpp"

namespace enumlab::analyze {

namespace {

bool verdict_matches(vm::Verdict v, bool colorable) {
  return colorable ? v == vm::Verdict::ResultTrue
                   : v == vm::Verdict::ResultFalse;
}

ExtrapolationRecord extrapolate_one(const search::CandidateRecord& candidate,
                                    unsigned nodes, unsigned m, std::uint64_t ub_m,
                                    search::InputBank& bank,
                                    const vm::MachineConfig& machine) {
  ExtrapolationRecord rec;
  rec.candidate = candidate;
  rec.u_at_n = candidate.u;
  if (candidate.length >= ub_m) return rec;  // no budget left at m; unverifiable
  const std::uint64_t budget = ub_m - candidate.length;

  for (unsigned size = nodes + 1; size <= m; ++size) {
    const auto& si = bank.at(size);
    std::uint64_t worst = 0;
    for (std::size_t i = 0; i < si.inputs.size(); ++i) {
      vm::Outcome out = vm::run(candidate.image, si.inputs[i], budget, machine);
      if (out.verdict == vm::Verdict::ResultUndefined) return rec;  // bounded
      worst = std::max(worst, out.running_steps);
      rec.extended_worst[size] = worst;
      if (!verdict_matches(out.verdict, si.colorable[i])) return rec;
    }
  }

  rec.potential_unbounded = true;
  std::map<unsigned, std::uint64_t> all = candidate.worst_steps;
  all.insert(rec.extended_worst.begin(), rec.extended_worst.end());
  rec.u_at_m = growth::u_from_worst_steps(all, m);
  rec.potential_efficient = *rec.u_at_m <= rec.u_at_n;
  return rec;
}

}  // namespace

std::vector<ExtrapolationRecord> extrapolate(const search::SearchReport& report,
                                             const knowledge::KnowledgeBase& kb,
                                             const AnalyzeConfig& config) {
  const unsigned nodes = report.nodes;
  if (nodes < 1) throw std::invalid_argument("report carries no bound size");
  const unsigned m = config.m_override != 0 ? config.m_override : 2 * nodes;
  if (m <= nodes)
    throw std::invalid_argument("extended horizon m must exceed the search bound");
  if (m > config.graph_cap)
    throw ConstraintError(
        "extended horizon m=" + std::to_string(m) + " exceeds the graph cap of " +
        std::to_string(config.graph_cap) + "; lower --nodes or raise the cap");

  const std::uint64_t ub_m = kb.minwet(m);

  search::InputBank bank(config.graph_cap);
  for (unsigned size = nodes + 1; size <= m; ++size) bank.at(size);

  std::vector<ExtrapolationRecord> records(report.survivors.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= report.survivors.size()) break;
      records[i] = extrapolate_one(report.survivors[i], nodes, m, ub_m, bank,
                                   config.machine);
    }
  };
  if (config.jobs <= 1 || report.survivors.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < config.jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

std::vector<ExtrapolationRecord> rank_for_inspection(
    std::span<const ExtrapolationRecord> records) {
  std::vector<ExtrapolationRecord> ranked;
  for (const auto& r : records)
    if (r.potential_unbounded) ranked.push_back(r);
  std::sort(ranked.begin(), ranked.end(),
            [](const ExtrapolationRecord& a, const ExtrapolationRecord& b) {
              if (a.potential_efficient != b.potential_efficient)
                return a.potential_efficient;
              unsigned ua = a.u_at_m.value_or(0), ub = b.u_at_m.value_or(0);
              if (ua != ub) return ua < ub;
              if (a.candidate.length != b.candidate.length)
                return a.candidate.length < b.candidate.length;
              return a.candidate.encoding < b.candidate.encoding;
            });
  return ranked;
}

std::string format_inspection(std::span<const ExtrapolationRecord> ranked,
                              unsigned nodes, unsigned m,
                              std::string_view source_manifest) {
  std::ostringstream out;
  out << "# enumlab inspection report\n";
  out << "# nodes: " << nodes << "  m: " << m << '\n';
  if (!source_manifest.empty())
    out << "# source-manifest: " << source_manifest << '\n';
  out << "# potential unbounded candidates: " << ranked.size() << '\n';
  if (ranked.empty()) {
    out << "none found\n";
    return out.str();
  }
  out << "# rank\tencoding\tlength\tu(n)\tu(m)\tflags\n";
  std::size_t rank = 1;
  for (const auto& r : ranked) {
    out << rank++ << '\t' << r.candidate.encoding << '\t' << r.candidate.length
        << '\t' << r.u_at_n << '\t';
    if (r.u_at_m)
      out << *r.u_at_m;
    else
      out << '-';
    out << '\t' << (r.potential_efficient ? "unbounded,efficient" : "unbounded")
        << '\n';
  }
  // Record section: the report schema with extended sizes and flags.
  for (const auto& r : ranked) {
    out << r.candidate.encoding << '\t' << r.candidate.length << '\t';
    std::map<unsigned, std::uint64_t> all = r.candidate.worst_steps;
    all.insert(r.extended_worst.begin(), r.extended_worst.end());
    bool first = true;
    for (const auto& [size, steps] : all) {
      if (!first) out << ',';
      out << size << ':' << steps;
      first = false;
    }
    out << '\t';
    if (r.u_at_m)
      out << *r.u_at_m;
    else
      out << r.u_at_n;
    out << '\t' << "correct,unbounded" << (r.potential_efficient ? ",efficient" : "")
        << '\n';
  }
  // Disassembly of each ranked candidate, for the human reading this.
  for (const auto& r : ranked) {
    out << "# " << r.candidate.encoding << ":\n";
    std::istringstream lines(vm::disassemble(r.candidate.image));
    std::string line;
    while (std::getline(lines, line)) out << "#   " << line << '\n';
  }
  return out.str();
}

}  // namespace enumlab::analyze
