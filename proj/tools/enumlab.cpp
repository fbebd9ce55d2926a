#include <CLI11.hpp>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "enumlab/analyze.hpp"
#include "enumlab/graph.hpp"
#include "enumlab/growth.hpp"
#include "enumlab/knowledge.hpp"
#include "enumlab/reference.hpp"
#include "enumlab/search.hpp"
#include "enumlab/util.hpp"
#include "enumlab/vm.hpp"

namespace {

using namespace enumlab;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("short write to " + path);
}

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

/// --kb wins; otherwise $ENUMLAB_CACHE_DIR/kb.txt when present; otherwise
/// the builtin seeded base.
knowledge::KnowledgeBase load_kb(const std::string& kb_path,
                                 knowledge::MeasureConfig measure) {
  if (!kb_path.empty())
    return knowledge::KnowledgeBase::parse(read_file(kb_path), measure);
  if (const char* cache = std::getenv("ENUMLAB_CACHE_DIR")) {
    std::string candidate = std::string(cache) + "/kb.txt";
    if (std::ifstream probe(candidate); probe)
      return knowledge::KnowledgeBase::parse(read_file(candidate), measure);
  }
  return knowledge::KnowledgeBase::seeded(measure);
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ','))
    if (!token.empty()) out.push_back(static_cast<unsigned>(std::stoul(token)));
  return out;
}

struct CommonOptions {
  unsigned jobs = 1;
  unsigned graph_cap = problems::kDefaultGraphCap;
  std::size_t tape_cells = 4096;
  std::uint64_t measure_budget = 1'000'000;

  knowledge::MeasureConfig measure() const {
    knowledge::MeasureConfig m;
    m.budget = measure_budget;
    m.machine.tape_cells = tape_cells;
    m.graph_cap = graph_cap;
    return m;
  }
};

int run_cli(int argc, char** argv) {
  CLI::App app{"enumlab — exhaustive search for short 3-coloring programs on a step-counted machine"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value defaults (flags win over the file)");

  CommonOptions common;
  app.add_option("--jobs", common.jobs, "worker threads for search/analyze")
      ->check(CLI::PositiveNumber)
      ->configurable(true);
  app.add_option("--graph-cap", common.graph_cap,
                 "largest graph universe the tool will materialize")
      ->configurable(true);
  app.add_option("--tape-cells", common.tape_cells, "machine work-tape size")
      ->configurable(true);
  app.add_option("--measure-budget", common.measure_budget,
                 "per-run step budget for worst-case measurements")
      ->configurable(true);

  // oracle
  std::string oracle_literal;
  auto* cmd_oracle = app.add_subcommand("oracle", "3-colorability of a graph literal");
  cmd_oracle->add_option("literal", oracle_literal, "graph literal, e.g. \"3; 0-1,0-2,1-2\"")
      ->required();
  cmd_oracle->callback([&] {
    std::cout << (problems::oracle_3color(problems::parse_graph_literal(oracle_literal))
                      ? "true"
                      : "false")
              << '\n';
  });

  // hash
  std::string hash_literal;
  auto* cmd_hash = app.add_subcommand("hash", "prime-product hash of a graph literal");
  cmd_hash->add_option("literal", hash_literal, "graph literal")->required();
  cmd_hash->callback([&] {
    std::cout << problems::prime_hash(problems::parse_graph_literal(hash_literal)) << '\n';
  });

  // build-precompute
  unsigned bp_nodes = 3;
  std::string bp_out;
  auto* cmd_bp = app.add_subcommand("build-precompute",
                                    "build the machine-resident table solver image");
  cmd_bp->add_option("--nodes", bp_nodes, "bound size (3 or 4)")->required();
  cmd_bp->add_option("--out", bp_out, "image file path")->required();
  cmd_bp->callback([&] {
    vm::ProgramImage image = problems::build_precompute_image(bp_nodes);
    write_file(bp_out, vm::serialize_image(image));
    std::cout << "bound " << bp_nodes << ": " << image.code.size() << " code symbols, "
              << image.data.size() << " table cells, length " << image.length() << '\n';
  });

  // kb minwet
  std::string kb_path;
  unsigned kb_nodes = 3;
  auto* cmd_kb = app.add_subcommand("kb", "knowledge-base queries");
  cmd_kb->require_subcommand(1);
  auto* cmd_minwet = cmd_kb->add_subcommand("minwet",
                                            "minimum worst execution time at a size");
  cmd_minwet->add_option("--nodes", kb_nodes, "input size")->required();
  cmd_minwet->add_option("--kb", kb_path, "knowledge-base file");
  cmd_minwet->callback([&] {
    auto kb = load_kb(kb_path, common.measure());
    std::cout << kb.minwet(kb_nodes) << '\n';
  });

  // search
  search::SearchConfig scfg;
  std::string search_out, search_kb;
  auto* cmd_search = app.add_subcommand("search", "enumerate and evaluate candidate programs");
  cmd_search->add_option("--nodes", scfg.nodes, "bound size n")->required();
  cmd_search->add_option("--max-length", scfg.max_length, "practicality cap on program length")
      ->required();
  cmd_search->add_option("--out", search_out, "report file path")->required();
  cmd_search->add_option("--kb", search_kb, "knowledge-base file");
  cmd_search->callback([&] {
    scfg.jobs = common.jobs;
    scfg.graph_cap = common.graph_cap;
    scfg.machine.tape_cells = common.tape_cells;
    auto kb = load_kb(search_kb, common.measure());
    search::SearchReport report = search::search(scfg, kb);
    write_file(search_out, search::format_report(report));
    search::RunManifest manifest;
    manifest.nodes = scfg.nodes;
    manifest.max_length = scfg.max_length;
    manifest.ub = report.ub;
    manifest.tape_cells = scfg.machine.tape_cells;
    manifest.kb_digest = kb.digest();
    manifest.jobs = scfg.jobs;
    manifest.created = iso_now();
    write_file(search_out + ".manifest", manifest.format());
    std::cout << "ub " << report.ub << ", enumerated lengths 1.."
              << report.effective_length << ", survivors " << report.survivors.size()
              << " -> " << search_out << '\n';
  });

  // rerun (knowledge-base update loop)
  std::string rr_report, rr_kb, rr_out, rr_kb_out;
  std::vector<std::string> rr_marked;
  auto* cmd_rerun = app.add_subcommand(
      "rerun", "mark report survivors as known inefficients and search again");
  cmd_rerun->add_option("--report", rr_report, "previous search report")->required();
  cmd_rerun->add_option("--mark", rr_marked, "survivor encodings to mark inefficient");
  cmd_rerun->add_option("--kb", rr_kb, "knowledge-base file");
  cmd_rerun->add_option("--out", rr_out, "rerun report path")->required();
  cmd_rerun->add_option("--kb-out", rr_kb_out, "write the extended knowledge base here");
  cmd_rerun->callback([&] {
    auto kb = load_kb(rr_kb, common.measure());
    search::SearchReport prev = search::parse_report(read_file(rr_report));
    search::SearchConfig cfg;
    cfg.nodes = prev.nodes;
    cfg.max_length = prev.max_length;
    cfg.jobs = common.jobs;
    cfg.graph_cap = common.graph_cap;
    cfg.machine.tape_cells = common.tape_cells;
    auto [kb2, rerun] = search::update_knowledge_and_rerun(prev, kb, rr_marked, cfg);
    write_file(rr_out, search::format_report(rerun));
    if (!rr_kb_out.empty()) write_file(rr_kb_out, kb2.serialize());
    std::cout << "ub " << rerun.ub << ", survivors " << rerun.survivors.size() << " -> "
              << rr_out << '\n';
  });

  // analyze
  std::string an_report, an_kb, an_out;
  unsigned an_m = 0;
  auto* cmd_analyze = app.add_subcommand("analyze",
                                         "extrapolate report survivors past the bound");
  cmd_analyze->add_option("--report", an_report, "search report path")->required();
  cmd_analyze->add_option("--kb", an_kb, "knowledge-base file");
  cmd_analyze->add_option("--m", an_m, "extended horizon (default 2n)");
  cmd_analyze->add_option("--out", an_out, "write the inspection report here");
  cmd_analyze->callback([&] {
    auto kb = load_kb(an_kb, common.measure());
    search::SearchReport report = search::parse_report(read_file(an_report));
    analyze::AnalyzeConfig cfg;
    cfg.m_override = an_m;
    cfg.jobs = common.jobs;
    cfg.graph_cap = common.graph_cap;
    cfg.machine.tape_cells = common.tape_cells;
    auto records = analyze::extrapolate(report, kb, cfg);
    auto ranked = analyze::rank_for_inspection(records);
    unsigned m = an_m != 0 ? an_m : 2 * report.nodes;
    std::string text =
        analyze::format_inspection(ranked, report.nodes, m, report.manifest);
    std::cout << text;
    if (!an_out.empty()) write_file(an_out, text);
  });

  // growth
  auto* cmd_growth = app.add_subcommand("growth", "growth-rate metrics");
  cmd_growth->require_subcommand(1);

  std::string gc_series, gc_checkpoints;
  auto* cmd_classify = cmd_growth->add_subcommand("classify",
                                                  "possible-polynomial verdict for a series");
  cmd_classify->add_option("--series", gc_series, "two-column series file")->required();
  cmd_classify->add_option("--checkpoints", gc_checkpoints, "ascending list, e.g. 8,16,32")
      ->required();
  cmd_classify->callback([&] {
    auto series = growth::parse_series(read_file(gc_series));
    auto checkpoints = parse_unsigned_list(gc_checkpoints);
    auto verdict = growth::classify(series, checkpoints);
    for (unsigned cp : checkpoints)
      std::cout << "u(" << cp << ") = " << growth::u_ceiling(series, cp) << '\n';
    std::cout << growth::classification_name(verdict) << '\n';
  });

  std::string ge_kind = "polynomial", ge_range = "2:16", ge_out;
  double ge_k = 1.0, ge_m = 1.0;
  auto* cmd_emit = cmd_growth->add_subcommand("emit", "synthetic series as plot-ready columns");
  cmd_emit->add_option("--kind", ge_kind, "polynomial | exponential | oscillating")
      ->check(CLI::IsMember({"polynomial", "exponential", "oscillating"}));
  cmd_emit->add_option("--k", ge_k, "exponent parameter");
  cmd_emit->add_option("--M", ge_m, "constant factor");
  cmd_emit->add_option("--range", ge_range, "inclusive range, e.g. 2:64");
  cmd_emit->add_option("--out", ge_out, "write columns to a file instead of stdout");
  cmd_emit->callback([&] {
    auto colon = ge_range.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("range must look like 2:64");
    unsigned lo = static_cast<unsigned>(std::stoul(ge_range.substr(0, colon)));
    unsigned hi = static_cast<unsigned>(std::stoul(ge_range.substr(colon + 1)));
    if (lo != 2) throw std::invalid_argument("series ranges start at 2");
    growth::SynthKind kind = ge_kind == "polynomial" ? growth::SynthKind::Polynomial
                             : ge_kind == "exponential" ? growth::SynthKind::Exponential
                                                        : growth::SynthKind::Oscillating;
    auto series = growth::synth_series(kind, ge_k, ge_m, hi);
    std::ostringstream out;
    out << "# enumlab synthetic series: kind " << ge_kind << ", k " << ge_k
        << ", M " << ge_m << ", range " << lo << ':' << hi << '\n';
    out << "# n steps g\n";
    for (const auto& [n, steps] : series.points)
      out << n << ' ' << u128_to_string(steps) << ' ' << growth::g_value(steps, n) << '\n';
    if (ge_out.empty())
      std::cout << out.str();
    else
      write_file(ge_out, out.str());
  });

  // Let the global options (--jobs etc.) appear after a subcommand name.
  auto enable_fallthrough = [](auto&& self, CLI::App* cmd) -> void {
    for (CLI::App* sub : cmd->get_subcommands([](CLI::App*) { return true; })) {
      sub->fallthrough();
      self(self, sub);
    }
  };
  enable_fallthrough(enable_fallthrough, &app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const ConstraintError& e) {
    std::cerr << "constraint: " << e.what() << '\n';
    return 5;
  } catch (const MeasurementError& e) {
    std::cerr << "measurement: " << e.what() << '\n';
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
