#include "enumlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "enumlab/growth.hpp"
#include "enumlab/util.hpp"

namespace enumlab::search {

namespace {

bool verdict_matches(vm::Verdict v, bool colorable) {
  return colorable ? v == vm::Verdict::ResultTrue
                   : v == vm::Verdict::ResultFalse;
}

std::uint64_t report_line_steps(const CandidateRecord& r, unsigned size) {
  auto it = r.worst_steps.find(size);
  return it == r.worst_steps.end() ? 0 : it->second;
}

bool canonical_less(const CandidateRecord& a, const CandidateRecord& b) {
  if (a.u != b.u) return a.u < b.u;
  if (a.length != b.length) return a.length < b.length;
  return a.encoding < b.encoding;
}

}  // namespace

void for_each_program(std::size_t length,
                      const std::function<void(vm::ProgramImage&&)>& fn) {
  if (length < 1) throw std::invalid_argument("program length must be >= 1");
  if (length > 15)
    throw ConstraintError("refusing to enumerate lengths above 15 symbols");
  const std::uint64_t total = std::uint64_t{1} << (4 * length);
  std::vector<std::uint8_t> symbols(length, 0);
  for (std::uint64_t v = 0; v < total; ++v) {
    std::uint64_t rest = v;
    for (std::size_t i = length; i-- > 0;) {
      symbols[i] = static_cast<std::uint8_t>(rest & 0xf);
      rest >>= 4;
    }
    if (!vm::decode_static(symbols)) continue;
    vm::ProgramImage image;
    image.code = symbols;
    fn(std::move(image));
  }
}

std::vector<vm::ProgramImage> generate_programs(std::size_t length) {
  std::vector<vm::ProgramImage> out;
  for_each_program(length, [&](vm::ProgramImage&& p) { out.push_back(std::move(p)); });
  return out;
}

const InputBank::SizeInputs& InputBank::at(unsigned size) {
  auto it = sizes_.find(size);
  if (it != sizes_.end()) return it->second;
  SizeInputs si;
  for (const problems::Graph& g : problems::enumerate_graphs(size, cap_)) {
    si.inputs.push_back(problems::encode_input(g));
    si.colorable.push_back(problems::oracle_3color(g));
  }
  return sizes_.emplace(size, std::move(si)).first->second;
}

CandidateRecord evaluate_program(const vm::ProgramImage& image, unsigned nodes,
                                 std::uint64_t ub, InputBank& bank,
                                 const vm::MachineConfig& machine) {
  CandidateRecord rec;
  rec.image = image;
  rec.encoding = vm::encode_hex(image);
  rec.length = image.length();
  if (rec.length >= ub)
    throw std::invalid_argument("evaluate_program: length must be below the bound");
  const std::uint64_t budget = ub - rec.length;

  for (unsigned size = 1; size <= nodes; ++size) {
    const auto& si = bank.at(size);
    std::uint64_t worst = 0;
    for (std::size_t i = 0; i < si.inputs.size(); ++i) {
      vm::Outcome out = vm::run(image, si.inputs[i], budget, machine);
      worst = std::max(worst, out.running_steps);
      rec.worst_steps[size] = worst;
      if (!verdict_matches(out.verdict, si.colorable[i])) {
        rec.correct = false;
        return rec;
      }
    }
  }
  rec.correct = true;
  rec.u = growth::u_from_worst_steps(rec.worst_steps, nodes);
  return rec;
}

SearchReport search(const SearchConfig& config,
                    const knowledge::KnowledgeBase& kb) {
  if (config.nodes < 1) throw std::invalid_argument("search needs nodes >= 1");
  if (config.max_length < 1) throw std::invalid_argument("search needs max_length >= 1");
  if (config.jobs < 1) throw std::invalid_argument("search needs jobs >= 1");

  SearchReport report;
  report.nodes = config.nodes;
  report.max_length = config.max_length;
  report.ub = kb.minwet(config.nodes);

  // Lengths at or above the bound are inefficient by construction and get a
  // non-positive budget; never generate them.
  report.effective_length =
      report.ub == 0 ? 0 : std::min<std::size_t>(config.max_length, report.ub - 1);

  RunManifest manifest;
  manifest.nodes = config.nodes;
  manifest.max_length = config.max_length;
  manifest.ub = report.ub;
  manifest.tape_cells = config.machine.tape_cells;
  manifest.kb_digest = kb.digest();
  manifest.jobs = config.jobs;
  report.manifest = manifest.digest();

  InputBank bank(config.graph_cap);
  for (unsigned size = 1; size <= config.nodes; ++size) bank.at(size);

  // Candidates stream through fixed-size batches: lexicographic order in,
  // slot-indexed results out. Memory stays flat at large sweeps and the
  // outcome is independent of scheduling.
  constexpr std::size_t kBatch = 16384;
  std::vector<vm::ProgramImage> batch;
  batch.reserve(kBatch);
  std::vector<CandidateRecord> results;
  auto flush = [&] {
    if (batch.empty()) return;
    results.assign(batch.size(), CandidateRecord{});
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= batch.size()) break;
        results[i] = evaluate_program(batch[i], config.nodes, report.ub, bank,
                                      config.machine);
      }
    };
    if (config.jobs <= 1 || batch.size() == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(config.jobs);
      for (unsigned t = 0; t < config.jobs; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (auto& rec : results)
      if (rec.correct) report.survivors.push_back(std::move(rec));
    batch.clear();
  };

  for (std::size_t len = 1; len <= report.effective_length; ++len) {
    for_each_program(len, [&](vm::ProgramImage&& p) {
      batch.push_back(std::move(p));
      if (batch.size() == kBatch) flush();
    });
  }
  flush();

  std::sort(report.survivors.begin(), report.survivors.end(), canonical_less);
  return report;
}

std::string RunManifest::digest() const {
  std::ostringstream canon;
  canon << "schema " << schema << "\nnodes " << nodes << "\nmax-length "
        << max_length << "\nub " << ub << "\ntape-cells " << tape_cells
        << "\nkb " << kb_digest << '\n';
  return hex64(fnv1a64(canon.str()));
}

std::string RunManifest::format() const {
  std::ostringstream out;
  out << "# enumlab run manifest\n";
  out << "schema " << schema << '\n';
  out << "nodes " << nodes << '\n';
  out << "max-length " << max_length << '\n';
  out << "ub " << ub << '\n';
  out << "tape-cells " << tape_cells << '\n';
  out << "kb " << kb_digest << '\n';
  out << "digest " << digest() << '\n';
  out << "jobs " << jobs << '\n';
  out << "created " << created << '\n';
  return out.str();
}

std::string format_report(const SearchReport& report) {
  std::ostringstream out;
  out << "# enumlab search report\n";
  out << "# schema: " << report.schema << '\n';
  out << "# manifest: " << report.manifest << '\n';
  out << "# nodes: " << report.nodes << '\n';
  out << "# max-length: " << report.max_length << '\n';
  out << "# effective-max-length: " << report.effective_length << '\n';
  out << "# ub: " << report.ub << '\n';
  out << "# survivors: " << report.survivors.size() << '\n';
  for (const auto& r : report.survivors) {
    out << r.encoding << '\t' << r.length << '\t';
    for (unsigned size = 1; size <= report.nodes; ++size) {
      if (size > 1) out << ',';
      out << size << ':' << report_line_steps(r, size);
    }
    out << '\t' << r.u << '\t' << "correct\n";
  }
  return out.str();
}

SearchReport parse_report(std::string_view text) {
  SearchReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_schema = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line);
      std::string hash, key;
      hs >> hash >> key;
      auto read_value = [&](auto& slot) { hs >> slot; };
      if (key == "schema:") {
        read_value(report.schema);
        have_schema = true;
        if (report.schema != 1)
          throw std::invalid_argument("unsupported report schema");
      } else if (key == "manifest:") {
        read_value(report.manifest);
      } else if (key == "nodes:") {
        read_value(report.nodes);
      } else if (key == "max-length:") {
        read_value(report.max_length);
      } else if (key == "effective-max-length:") {
        read_value(report.effective_length);
      } else if (key == "ub:") {
        read_value(report.ub);
      }
      continue;
    }
    std::istringstream ls(line);
    CandidateRecord rec;
    std::string steps_field, flags_field;
    if (!(ls >> rec.encoding >> rec.length >> steps_field >> rec.u >> flags_field))
      throw std::invalid_argument("malformed report record: " + line);
    rec.image = vm::decode_hex(rec.encoding);
    if (rec.image.length() != rec.length)
      throw std::invalid_argument("report record length mismatch: " + line);
    std::istringstream ss(steps_field);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      auto colon = pair.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("malformed steps field: " + line);
      rec.worst_steps[static_cast<unsigned>(std::stoul(pair.substr(0, colon)))] =
          std::stoull(pair.substr(colon + 1));
    }
    rec.correct = flags_field.find("correct") != std::string::npos;
    report.survivors.push_back(std::move(rec));
  }
  if (!have_schema) throw std::invalid_argument("report is missing its schema header");
  return report;
}

std::pair<knowledge::KnowledgeBase, SearchReport> update_knowledge_and_rerun(
    const SearchReport& report, const knowledge::KnowledgeBase& kb,
    std::span<const std::string> marked, const SearchConfig& config) {
  knowledge::KnowledgeBase next = kb;
  for (const std::string& encoding : marked) {
    auto it = std::find_if(report.survivors.begin(), report.survivors.end(),
                           [&](const CandidateRecord& r) { return r.encoding == encoding; });
    if (it == report.survivors.end())
      throw std::invalid_argument("marked program " + encoding +
                                  " is not in the report");
    next.add(knowledge::make_image_entry(
        it->image, "marked inefficient from report " + report.manifest));
  }
  SearchReport rerun = search(config, next);
  return {std::move(next), std::move(rerun)};
}

}  // namespace enumlab::search
