#include "fracsob/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fracsob/corpus_manifest.hpp"
#include "fracsob/errors.hpp"

namespace fracsob {

namespace {

bool same_ordinates(std::vector<Real> a, std::vector<Real> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > 1e-12 * std::max(1.0, std::abs(b[k]))) return false;
  }
  return true;
}

}  // namespace

ClosedForm CorpusMember::form() const { return ClosedForm::make(kind, params); }

const Corpus& Corpus::builtin() {
  static const Corpus corpus = parse(detail::kBuiltinCorpus);
  return corpus;
}

Corpus Corpus::parse(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("corpus manifest is not valid JSON: ") + err.what());
  }
  Corpus corpus;
  try {
    corpus.version_ = doc.at("version").get<std::string>();
    std::set<std::string> seen;
    for (const auto& m : doc.at("members")) {
      CorpusMember member{m.at("id").get<std::string>(), m.at("kind").get<std::string>(),
                          m.value("params", std::vector<Real>{}), m.value("pole_ordinates", std::vector<Real>{})};
      if (!seen.insert(member.id).second) throw ConfigError("duplicate corpus id '" + member.id + "'");
      const ClosedForm f = member.form();
      if (!same_ordinates(member.pole_ordinates, f.pole_ordinates())) {
        throw ConfigError("declared pole ordinates of '" + member.id + "' do not match its evaluator");
      }
      corpus.members_.push_back(std::move(member));
    }
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError(std::string("malformed corpus manifest: ") + err.what());
  }
  if (corpus.members_.empty()) throw ConfigError("corpus manifest has no members");
  return corpus;
}

Corpus Corpus::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus manifest '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

bool Corpus::contains(const std::string& id) const {
  return std::any_of(members_.begin(), members_.end(), [&](const CorpusMember& m) { return m.id == id; });
}

const CorpusMember& Corpus::find(const std::string& id) const {
  for (const CorpusMember& m : members_) {
    if (m.id == id) return m;
  }
  throw ConfigError("unknown corpus id '" + id + "'");
}

std::vector<NamedForm> Corpus::forms(const std::vector<std::string>& ids) const {
  std::vector<NamedForm> out;
  for (const std::string& id : ids) out.push_back({id, find(id).form()});
  return out;
}

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  for (const CorpusMember& m : members_) out.push_back(m.id);
  return out;
}

ClosedForm resolve_form(const Corpus& corpus, const std::string& id) {
  if (id == "reciprocal") return ClosedForm::reciprocal();
  return corpus.find(id).form();
}

}  // namespace fracsob
