#ifndef FRACSOB_HARNESS_HPP
#define FRACSOB_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracsob/core.hpp"
#include "fracsob/corpus.hpp"
#include "fracsob/params.hpp"

namespace fracsob {

/// One entry of the parameter list. `claims` restricts which checks use it (empty: all applicable).
struct ParamSet {
  Real beta = 0.5;
  std::optional<Real> betaprime;
  Exponent p = Exponent::finite(2.0);
  WeightMode weight = WeightMode::ultra;
  std::vector<std::string> claims;

  NormParams norm(int n) const { return {beta, p, n, weight}; }
  bool wants(const std::string& claim) const;
};

inline constexpr int kConfigSchemaVersion = 1;

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  /// "embed", "density", "extend" or "sweep".
  std::string experiment;
  std::vector<std::string> members;
  std::vector<ParamSet> params;
  DomainSpec domain = DomainSpec::line(-8.0, 8.0);
  std::vector<Real> resolutions;
  std::vector<Real> truncation_radii;
  std::string output;
  bool strict = false;
  /// Experiment-specific settings (epsilons, tolerance, target, margin, ...).
  nlohmann::json options = nlohmann::json::object();

  /// Parses and validates against the corpus; throws ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& j, const Corpus& corpus);
  static ExperimentConfig load(const std::string& path, const Corpus& corpus);
  nlohmann::json to_json() const;
  /// FNV-1a (64 bit, hex) of the canonical JSON dump.
  std::string hash() const;
};

struct ExperimentRow {
  std::string claim_id;
  std::string member;
  Real beta = 0.0;
  /// NaN when the claim has no second order.
  Real betaprime = 0.0;
  Exponent p = Exponent::finite(2.0);
  WeightMode weight = WeightMode::classical;
  Real h = 0.0;
  Real value_lhs = 0.0;
  Real value_rhs = 0.0;
  Real constant = 0.0;
  /// pass, fail, measured, skip_degenerate, skip_regime or skip_precondition.
  std::string verdict;
  std::string config_hash;
  std::string corpus_version;
};

struct ExperimentResult {
  std::string experiment;
  std::string config_hash;
  std::string corpus_version;
  std::vector<ExperimentRow> rows;

  /// True when no row failed; depends on the rows only.
  bool passed() const;
};

struct RunOptions {
  unsigned workers = 1;
  /// Escalate boundary-decay warnings to errors (ORed with the config flag).
  bool strict = false;
};

ExperimentResult embedding_experiment(const ExperimentConfig& cfg, const Corpus& corpus, const RunOptions& opts = {});
ExperimentResult density_experiment(const ExperimentConfig& cfg, const Corpus& corpus, const RunOptions& opts = {});
ExperimentResult extension_experiment(const ExperimentConfig& cfg, const Corpus& corpus, const RunOptions& opts = {});
ExperimentResult convergence_sweep(const ExperimentConfig& cfg, const Corpus& corpus, const RunOptions& opts = {});
/// Dispatches on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Corpus& corpus, const RunOptions& opts = {});

inline constexpr const char* kCsvHeader =
    "claim_id,member,beta,betaprime,p,weight_mode,h,value_lhs,value_rhs,constant,verdict";

/// Header plus one line per row; reals as %.17g, absent values empty.
void write_csv(std::ostream& out, const ExperimentResult& result);

/// Provenance sidecar: hash, corpus version, row count, verdict, worker count, timestamp.
nlohmann::json metadata_json(const ExperimentResult& result, const RunOptions& opts);

}  // namespace fracsob

#endif  // FRACSOB_HARNESS_HPP
