#include "enumlab/knowledge.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "enumlab/util.hpp"

namespace enumlab::knowledge {

namespace {

class SimpleEntry final : public KbEntry {
 public:
  SimpleEntry() : prog_(problems::simple_reference()) {}

  std::string_view name() const override { return "SIMPLE"; }
  std::string_view kind() const override { return "ref"; }
  std::string payload() const override { return "SIMPLE"; }
  std::string provenance() const override {
    return "seeded: exhaustive 3^n coloring scan, constant code";
  }
  std::uint64_t length_at(unsigned n) const override {
    return prog_->length_at(n);
  }
  std::uint64_t wet(unsigned n, const MeasureConfig& config) const override {
    return knowledge::wet(*prog_, n, config);
  }

 private:
  std::shared_ptr<const problems::ReferenceProgram> prog_;
};

class PrecomputeEntry final : public KbEntry {
 public:
  std::string_view name() const override { return "PRECOMPUTE"; }
  std::string_view kind() const override { return "ref"; }
  std::string payload() const override { return "PRECOMPUTE"; }
  std::string provenance() const override {
    return "seeded: answer table over all graphs at the bound, exponential table";
  }
  std::uint64_t length_at(unsigned n) const override {
    return instance(n, problems::kDefaultGraphCap)->length_at(n);
  }
  std::uint64_t wet(unsigned n, const MeasureConfig& config) const override {
    return knowledge::wet(*instance(n, config.graph_cap), n, config);
  }

 private:
  // The family is queried at its own bound: the instance built for n.
  const std::shared_ptr<const problems::ReferenceProgram>& instance(
      unsigned n, unsigned cap) const {
    auto it = instances_.find(n);
    if (it == instances_.end())
      it = instances_.emplace(n, problems::precompute_reference(n, cap)).first;
    return it->second;
  }

  mutable std::map<unsigned,
                   std::shared_ptr<const problems::ReferenceProgram>>
      instances_;
};

class ImageEntry final : public KbEntry {
 public:
  ImageEntry(vm::ProgramImage image, std::string provenance)
      : image_(std::move(image)),
        encoding_(vm::encode_hex(image_)),
        provenance_(std::move(provenance)) {}

  std::string_view name() const override { return encoding_; }
  std::string_view kind() const override { return "image"; }
  std::string payload() const override { return encoding_; }
  std::string provenance() const override { return provenance_; }
  std::uint64_t length_at(unsigned) const override { return image_.length(); }
  std::uint64_t wet(unsigned n, const MeasureConfig& config) const override {
    return knowledge::wet(image_, n, config);
  }

 private:
  vm::ProgramImage image_;
  std::string encoding_;
  std::string provenance_;
};

}  // namespace

std::uint64_t wet(const problems::ReferenceProgram& prog, unsigned n,
                  const MeasureConfig& config) {
  std::uint64_t worst = 0;
  std::uint64_t length = prog.length_at(n);
  for (const problems::Graph& g : problems::enumerate_graphs(n, config.graph_cap)) {
    auto r = prog.run(g);
    if (r.steps > config.budget)
      throw MeasurementError(std::string(prog.name()) +
                             " exceeded the measurement budget at n=" +
                             std::to_string(n));
    worst = std::max(worst, length + r.steps);
  }
  return worst;
}

std::uint64_t wet(const vm::ProgramImage& image, unsigned n,
                  const MeasureConfig& config) {
  std::uint64_t worst = 0;
  for (const problems::Graph& g : problems::enumerate_graphs(n, config.graph_cap)) {
    auto input = problems::encode_input(g);
    vm::Outcome out = vm::run(image, input, config.budget, config.machine);
    if (out.verdict == vm::Verdict::OutOfSteps)
      throw MeasurementError("image " + vm::encode_hex(image) +
                             " exceeded the measurement budget at n=" +
                             std::to_string(n));
    worst = std::max(worst, out.execution_time());
  }
  return worst;
}

std::shared_ptr<const KbEntry> make_simple_entry() {
  return std::make_shared<SimpleEntry>();
}

std::shared_ptr<const KbEntry> make_precompute_entry() {
  return std::make_shared<PrecomputeEntry>();
}

std::shared_ptr<const KbEntry> make_image_entry(vm::ProgramImage image,
                                                std::string provenance) {
  return std::make_shared<ImageEntry>(std::move(image), std::move(provenance));
}

KnowledgeBase KnowledgeBase::seeded(MeasureConfig config) {
  KnowledgeBase kb;
  kb.measure_ = config;
  kb.add(make_simple_entry());
  kb.add(make_precompute_entry());
  return kb;
}

void KnowledgeBase::add(std::shared_ptr<const KbEntry> entry) {
  if (!entry) throw std::invalid_argument("null knowledge-base entry");
  entries_.push_back(std::move(entry));
}

std::uint64_t KnowledgeBase::wet_at(std::size_t index, unsigned n) const {
  if (index >= entries_.size())
    throw std::invalid_argument("knowledge-base entry index out of range");
  auto key = std::make_pair(index, n);
  if (auto it = wet_cache_.find(key); it != wet_cache_.end())
    return it->second.wet;
  std::uint64_t value = entries_[index]->wet(n, measure_);
  wet_cache_.emplace(key, Measured{entries_[index]->length_at(n), value});
  return value;
}

std::uint64_t KnowledgeBase::minwet(unsigned n) const {
  if (entries_.empty())
    throw std::invalid_argument("minwet over an empty knowledge base");
  std::uint64_t best = UINT64_MAX;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    best = std::min(best, wet_at(i, n));
  return best;
}

std::string KnowledgeBase::digest() const {
  std::string canon;
  for (const auto& e : entries_) {
    canon += e->kind();
    canon += ' ';
    canon += e->payload();
    canon += '\n';
  }
  return hex64(fnv1a64(canon));
}

std::string KnowledgeBase::serialize() const {
  std::ostringstream out;
  out << "# enumlab knowledge base\n# schema: 1\n";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    out << "entry " << e->kind() << ' ' << e->payload() << '\n';
    out << "note " << e->provenance() << '\n';
    for (const auto& [key, m] : wet_cache_)
      if (key.first == i)
        out << "at " << key.second << " length " << m.length << " wet " << m.wet
            << '\n';
  }
  return out.str();
}

KnowledgeBase KnowledgeBase::parse(std::string_view text, MeasureConfig config) {
  KnowledgeBase kb;
  kb.measure_ = config;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_entry = false;
  std::string pending_note;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "entry") {
      std::string kind, payload;
      ls >> kind >> payload;
      if (kind == "ref") {
        if (payload == "SIMPLE")
          kb.add(make_simple_entry());
        else if (payload == "PRECOMPUTE")
          kb.add(make_precompute_entry());
        else
          throw std::invalid_argument("unknown reference entry: " + payload);
      } else if (kind == "image") {
        kb.add(make_image_entry(vm::decode_hex(payload), ""));
      } else {
        throw std::invalid_argument("unknown knowledge-base entry kind: " + kind);
      }
      have_entry = true;
    } else if (tag == "note") {
      if (!have_entry) throw std::invalid_argument("note before any entry");
      std::string note;
      std::getline(ls >> std::ws, note);
      // Provenance of image entries travels through the file; rebuild the
      // entry with it attached.
      auto& last = kb.entries_.back();
      if (last->kind() == "image" && !note.empty()) {
        auto image = vm::decode_hex(last->payload());
        kb.entries_.back() = make_image_entry(std::move(image), note);
      }
    } else if (tag == "at") {
      if (!have_entry)
        throw std::invalid_argument("measurement line before any entry");
      unsigned n = 0;
      Measured m;
      std::string k1, k2;
      if (!(ls >> n >> k1 >> m.length >> k2 >> m.wet) || k1 != "length" ||
          k2 != "wet")
        throw std::invalid_argument("malformed measurement line: " + line);
      kb.wet_cache_[{kb.entries_.size() - 1, n}] = m;
    } else {
      throw std::invalid_argument("unknown knowledge-base line: " + line);
    }
  }
  return kb;
}

bool is_utm_inefficient(const vm::ProgramImage& image, unsigned n,
                        const KnowledgeBase& kb) {
  std::uint64_t bound = kb.minwet(n);
  if (vm::loading_steps(image) >= bound) return true;
  return wet(image, n, kb.measure_config()) >= bound;
}

bool is_utm_inefficient(const problems::ReferenceProgram& prog, unsigned n,
                        const KnowledgeBase& kb) {
  std::uint64_t bound = kb.minwet(n);
  if (prog.length_at(n) >= bound) return true;
  return wet(prog, n, kb.measure_config()) >= bound;
}

std::uint64_t length_upper_bound(const KnowledgeBase& kb, unsigned n) {
  return kb.minwet(n);
}

}  // namespace enumlab::knowledge
