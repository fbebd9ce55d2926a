// Acceptance suite: one pass/fail line per criterion. Criteria 8-10 drive
// the CLI binary, whose path arrives as argv[1]; everything else goes
// through the library. Exit code is the number of failed criteria.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "enumlab/analyze.hpp"
#include "enumlab/graph.hpp"
#include "enumlab/growth.hpp"
#include "enumlab/knowledge.hpp"
#include "enumlab/reference.hpp"
#include "enumlab/search.hpp"
#include "enumlab/util.hpp"
#include "enumlab/vm.hpp"

namespace fs = std::filesystem;
using namespace enumlab;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string g_cli_path;
fs::path g_workdir;

int run_cli(const std::string& args) {
  std::string cmd = g_cli_path + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  expect(static_cast<bool>(in), "missing output file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class FixedEntry final : public knowledge::KbEntry {
 public:
  FixedEntry(std::string name, std::map<unsigned, std::uint64_t> wets)
      : name_(std::move(name)), wets_(std::move(wets)) {}
  std::string_view name() const override { return name_; }
  std::string_view kind() const override { return "ref"; }
  std::string payload() const override { return name_; }
  std::string provenance() const override { return "acceptance fixture"; }
  std::uint64_t length_at(unsigned) const override { return 1; }
  std::uint64_t wet(unsigned n, const knowledge::MeasureConfig&) const override {
    return wets_.at(n);
  }

 private:
  std::string name_;
  std::map<unsigned, std::uint64_t> wets_;
};

// --- criteria ---------------------------------------------------------------

void criterion_oracle_equivalence(std::ostringstream& detail) {
  auto simple = problems::simple_reference();
  std::size_t cases = 0;
  for (unsigned n = 1; n <= 4; ++n) {
    for (const auto& g : problems::enumerate_graphs(n)) {
      bool expected = problems::oracle_3color(g);
      auto got = simple->run(g);
      expect(got.verdict == (expected ? vm::Verdict::ResultTrue
                                      : vm::Verdict::ResultFalse),
             "SIMPLE disagrees with the oracle at n=" + std::to_string(n));
      ++cases;
    }
  }
  expect(cases == 1 + 2 + 8 + 64, "expected 75 cases, saw " + std::to_string(cases));
  detail << "exact match on " << cases << " graphs";
}

void criterion_precompute(std::ostringstream& detail) {
  auto pre3 = problems::precompute_reference(3);
  for (const auto& g : problems::enumerate_graphs(3)) {
    auto r = pre3->run(g);
    expect(r.verdict == (problems::oracle_3color(g) ? vm::Verdict::ResultTrue
                                                    : vm::Verdict::ResultFalse),
           "table solver disagrees with the oracle at n=3");
    expect(r.steps == g.edge_total() + 1,
           "lookup cost is not O(edges)+1: " + std::to_string(r.steps));
  }
  for (const auto& g : problems::enumerate_graphs(4))
    expect(pre3->run(g).verdict == vm::Verdict::ResultUndefined,
           "queries past the bound must be undefined");

  auto pre4 = problems::precompute_reference(4);
  double ratio = static_cast<double>(pre4->length_at(4)) /
                 static_cast<double>(pre3->length_at(3));
  expect(ratio >= 8.0 * 0.8 && ratio <= 8.0 * 1.2,
         "length ratio " + std::to_string(ratio) + " outside 8 +/- 20%");
  detail << "8/8 queries exact, length ratio " << ratio;
}

void criterion_hash_injectivity(std::ostringstream& detail) {
  std::size_t total = 0;
  for (unsigned n = 1; n <= 5; ++n) {
    std::set<problems::GraphHash> hashes;
    auto all = problems::enumerate_graphs(n);
    for (const auto& g : all) hashes.insert(problems::prime_hash(g));
    expect(hashes.size() == all.size(),
           "hash collision inside the n=" + std::to_string(n) + " universe");
    total += all.size();
  }
  detail << "injective over " << total << " graphs";
}

void criterion_corollary(std::ostringstream& detail) {
  auto kb = knowledge::KnowledgeBase::seeded();
  std::uint64_t bound = kb.minwet(1);
  std::size_t checked = 0, at_bound = 0;
  for (std::size_t len = 1; len <= 3; ++len) {
    for (const auto& image : search::generate_programs(len)) {
      ++checked;
      if (image.length() >= bound) {
        ++at_bound;
        expect(knowledge::is_utm_inefficient(image, 1, kb),
               "corollary counterexample: " + vm::encode_hex(image));
      }
    }
  }
  detail << "0 counterexamples over " << checked << " images (minwet(1)="
         << bound << ", " << at_bound << " at/above it)";
}

void criterion_minwet_antimonotone(std::ostringstream& detail) {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<std::uint64_t> wet_dist(1, 1000);
  for (int seq = 0; seq < 100; ++seq) {
    auto kb = knowledge::KnowledgeBase::seeded();
    std::map<unsigned, std::uint64_t> prev;
    for (unsigned n = 1; n <= 4; ++n) prev[n] = kb.minwet(n);
    int inserts = 1 + seq % 4;
    for (int i = 0; i < inserts; ++i) {
      std::map<unsigned, std::uint64_t> wets;
      for (unsigned n = 1; n <= 8; ++n) wets[n] = wet_dist(rng);
      kb.add(std::make_shared<FixedEntry>("rand", wets));
      for (unsigned n = 1; n <= 4; ++n) {
        std::uint64_t now = kb.minwet(n);
        expect(now <= prev[n], "minwet rose after an insertion at n=" +
                                   std::to_string(n));
        prev[n] = now;
      }
    }
  }
  detail << "100 randomized extension sequences, sizes 1..4";
}

void criterion_growth_limits(std::ostringstream& detail) {
  const unsigned cps[] = {8, 16, 32, 64};

  for (double k : {1.0, 2.0, 3.0, 5.0}) {
    for (double m_factor : {0.5, 1.0, 8.0}) {
      auto s = growth::synth_series(growth::SynthKind::Polynomial, k, m_factor, 64);
      expect(growth::classify(s, cps) == growth::Classification::PossiblePolynomial,
             "polynomial series misclassified (k=" + std::to_string(k) +
                 ", M=" + std::to_string(m_factor) + ")");
    }
  }

  for (double m_factor : {1.0, 8.0}) {
    auto s = growth::synth_series(growth::SynthKind::Exponential, 1, m_factor, 64);
    expect(growth::classify(s, cps) == growth::Classification::NotPolynomial,
           "exponential series misclassified (M=" + std::to_string(m_factor) + ")");
  }
  // For M=1 the rise is already visible by checkpoint 16: u goes 3 -> 4.
  auto pure = growth::synth_series(growth::SynthKind::Exponential, 1, 1, 16);
  expect(growth::u_ceiling(pure, 8) == 3, "u(8) of 2^n should be 3");
  expect(growth::u_ceiling(pure, 16) == 4, "u(16) of 2^n should be 4");

  for (double k : {1.0, 2.0, 3.0, 5.0}) {
    for (double m_factor : {0.5, 1.0, 8.0}) {
      unsigned n = 1'000'000;
      double g = growth::g_value(
          growth::synth_point(growth::SynthKind::Polynomial, k, m_factor, n), n);
      double slack = std::abs(std::log(m_factor) / std::log(n));
      expect(std::abs(g - k) <= slack + 1e-6,
             "polynomial limit violated at n=10^6 (k=" + std::to_string(k) +
                 ", M=" + std::to_string(m_factor) + ")");
    }
  }
  detail << "12 polynomial series possible-polynomial, 2 exponential series "
            "not-polynomial (u 3->4 at 16 for M=1), limit holds at n=10^6";
}

void criterion_oscillating(std::ostringstream& detail) {
  auto s = growth::synth_series(growth::SynthKind::Oscillating, 0, 0, 64);
  double max_g = 0;
  for (unsigned n = 2; n <= 64; ++n)
    max_g = std::max(max_g, growth::g_value(s.points.at(n), n));
  expect(max_g <= 3.0 + growth::kCeilingEpsilon,
         "oscillating g exceeded 3: " + std::to_string(max_g));
  const unsigned cps[] = {8, 16, 32, 64};
  expect(growth::classify(s, cps) == growth::Classification::PossiblePolynomial,
         "oscillating series misclassified");
  detail << "max g " << max_g << " <= 3, possible-polynomial";
}

void criterion_tiny_search(std::ostringstream& detail) {
  // Derived oracle fact backing the survivor: every graph on <= 3 nodes is
  // 3-colorable.
  for (unsigned n = 1; n <= 3; ++n)
    for (const auto& g : problems::enumerate_graphs(n))
      expect(problems::oracle_3color(g), "a tiny graph was not colorable?");

  auto timed_search = [&](const std::string& args, const fs::path& out) {
    auto start = std::chrono::steady_clock::now();
    expect(run_cli("search " + args + " --out " + out.string()) == 0,
           "search " + args + " failed");
    double took =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    expect(took < 10.0, "search " + args + " exceeded 10 s");
  };

  fs::path report3 = g_workdir / "accept-n3.report";
  timed_search("--nodes 3 --max-length 1", report3);
  auto parsed = search::parse_report(slurp(report3));
  expect(parsed.survivors.size() == 1, "expected exactly one survivor at n=3");
  expect(parsed.survivors[0].encoding == "1", "the survivor is not HALT_TRUE");
  expect(parsed.survivors[0].u == 0, "HALT_TRUE's u should be 0");

  fs::path report4 = g_workdir / "accept-n4.report";
  timed_search("--nodes 4 --max-length 1", report4);
  expect(search::parse_report(slurp(report4)).survivors.empty(),
         "no constant-verdict program may survive n=4");
  detail << "n=3 finds HALT_TRUE with u=0 (each search < 10 s); n=4 finds nothing";
}

void criterion_extrapolation(std::ostringstream& detail) {
  fs::path report3 = g_workdir / "accept-extrap.report";
  expect(run_cli("search --nodes 3 --max-length 1 --out " + report3.string()) == 0,
         "search --nodes 3 failed");

  auto kb = knowledge::KnowledgeBase::seeded();
  auto parsed = search::parse_report(slurp(report3));
  auto records = analyze::extrapolate(parsed, kb);
  expect(records.size() == 1, "expected one record to extrapolate");
  expect(!records[0].potential_unbounded,
         "HALT_TRUE must be rejected during extrapolation");
  expect(records[0].extended_worst.count(4) == 1 &&
             records[0].extended_worst.count(5) == 0,
         "rejection should happen at size 4 (K4)");
  expect(analyze::rank_for_inspection(records).empty(),
         "no candidate may reach inspection");

  // Same outcome through the CLI, consuming the report file as-is.
  fs::path inspection = g_workdir / "accept-extrap.inspection";
  expect(run_cli("analyze --report " + report3.string() + " --out " +
                 inspection.string()) == 0,
         "analyze failed");
  expect(slurp(inspection).find("none found") != std::string::npos,
         "inspection report should say none found");
  detail << "K4 kills the survivor at size 4; zero potential-unbounded";
}

void criterion_determinism(std::ostringstream& detail) {
  fs::path lone = g_workdir / "accept-jobs1.report";
  fs::path crowd = g_workdir / "accept-jobs8.report";
  expect(run_cli("search --nodes 3 --max-length 1 --jobs 1 --out " +
                 lone.string()) == 0,
         "search --jobs 1 failed");
  expect(run_cli("search --nodes 3 --max-length 1 --jobs 8 --out " +
                 crowd.string()) == 0,
         "search --jobs 8 failed");
  expect(slurp(lone) == slurp(crowd), "reports differ across job counts");
  detail << "byte-identical reports with --jobs 1 and --jobs 8";
}

struct Criterion {
  int id;
  std::string name;
  double seconds_limit;
  std::function<void(std::ostringstream&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  g_workdir = fs::temp_directory_path() /
              ("enumlab-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(g_workdir);

  std::vector<Criterion> criteria = {
      {1, "oracle equivalence over n<=4", 5.0, criterion_oracle_equivalence},
      {2, "table-solver fidelity and scale law", 5.0, criterion_precompute},
      {3, "prime hash injectivity over n<=5", 10.0, criterion_hash_injectivity},
      {4, "length corollary over images of length<=3", 30.0, criterion_corollary},
      {5, "minwet anti-monotonicity", 30.0, criterion_minwet_antimonotone},
      {6, "growth limits", 1.0, criterion_growth_limits},
      {7, "oscillating boundedness", 1.0, criterion_oscillating},
      {8, "end-to-end tiny search", 20.0, criterion_tiny_search},
      {9, "extrapolation rejects the constant survivor", 60.0,
       criterion_extrapolation},
      {10, "search determinism across job counts", 30.0, criterion_determinism},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::ostringstream detail;
    std::string error;
    auto start = std::chrono::steady_clock::now();
    try {
      if (c.id >= 8 && g_cli_path.empty())
        throw Failure("CLI path missing: pass the enumlab binary as argv[1]");
      c.body(detail);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (error.empty() && elapsed > c.seconds_limit) {
      std::ostringstream oss;
      oss << "took " << elapsed << "s, limit " << c.seconds_limit << "s";
      error = oss.str();
    }
    bool ok = error.empty();
    failures += ok ? 0 : 1;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
              << c.name << " — " << (ok ? detail.str() : error) << " ["
              << elapsed << "s]\n";
  }

  std::error_code ec;
  fs::remove_all(g_workdir, ec);

  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures;
}
