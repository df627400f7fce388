#ifndef FRACSOB_CORPUS_HPP
#define FRACSOB_CORPUS_HPP

#include <string>
#include <vector>

#include "fracsob/closed_form.hpp"
#include "fracsob/operators.hpp"

namespace fracsob {

struct CorpusMember {
  std::string id;
  std::string kind;
  std::vector<Real> params;
  std::vector<Real> pole_ordinates;

  ClosedForm form() const;
};

/// Versioned, immutable list of named closed forms.
class Corpus {
 public:
  /// The manifest compiled into the library (data/corpus_v1.json).
  static const Corpus& builtin();
  /// Parses and validates a manifest {version, members: [{id, kind, params, pole_ordinates}]}.
  /// Declared pole ordinates must match the evaluator. Throws ConfigError.
  static Corpus parse(const std::string& json_text);
  static Corpus load(const std::string& path);

  const std::string& version() const { return version_; }
  const std::vector<CorpusMember>& members() const { return members_; }
  bool contains(const std::string& id) const;
  /// Throws ConfigError("unknown corpus id ...").
  const CorpusMember& find(const std::string& id) const;
  std::vector<NamedForm> forms(const std::vector<std::string>& ids) const;
  std::vector<std::string> ids() const;

 private:
  std::string version_;
  std::vector<CorpusMember> members_;
};

/// Corpus member or one of the diagnostic forms that are not corpus members ("reciprocal").
ClosedForm resolve_form(const Corpus& corpus, const std::string& id);

}  // namespace fracsob

#endif  // FRACSOB_CORPUS_HPP
