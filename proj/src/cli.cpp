#include "fracsob/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "fracsob/corpus.hpp"
#include "fracsob/errors.hpp"
#include "fracsob/harness.hpp"
#include "fracsob/quadrature.hpp"
#include "fracsob/report_io.hpp"
#include "fracsob/schwartz.hpp"
#include "fracsob/spectral.hpp"

namespace fracsob {

namespace {

struct GlobalOptions {
  bool strict = false;
  unsigned workers = 1;
  std::string corpus_path;
};

struct NormOptions {
  std::string fn = "gaussian";
  Real beta = 0.5;
  std::string p = "2";
  std::string weight = "ultra";
  std::string domain = "-8:8";
  Real h = 1.0 / 64.0;
  std::string mode = "gagliardo";
  Real puncture = 1.0;
  bool no_diagonal = false;
  bool exterior_tail = false;
  std::string reading = "frequency";
};

struct ClassOptions {
  std::string fn = "gaussian";
  int max_p = 4;
  int max_beta = 3;
  int max_order = 2;
  Real trunc = 8.0;
  Real h = 1.0 / 64.0;
  std::string vanishing;
  std::string format = "json";
};

struct ExperimentOptions {
  std::string config;
  std::string output;
};

Corpus load_corpus(const GlobalOptions& g) {
  return g.corpus_path.empty() ? Corpus::builtin() : Corpus::load(g.corpus_path);
}

int run_norm(const NormOptions& o, const GlobalOptions& g, std::ostream& out) {
  const Corpus corpus = load_corpus(g);
  const ClosedForm f = resolve_form(corpus, o.fn);
  const DomainSpec domain = DomainSpec::parse(o.domain);
  const NormParams params{o.beta, Exponent::parse(o.p), domain.dimension(), parse_weight_mode(o.weight)};
  QuadratureConfig q;
  q.puncture = o.puncture;
  q.diagonal_correction = !o.no_diagonal;
  q.exterior_tail = o.exterior_tail;
  q.workers = g.workers;
  TransformOptions transform;
  transform.strict = g.strict;
  const SampledFunction u = sample(f, Grid::covering(domain, o.h));

  nlohmann::json j;
  if (o.mode == "gagliardo") {
    j = to_json(gagliardo_seminorm(u, params, domain, q));
  } else if (o.mode == "full") {
    j = to_json(full_norm(u, params, domain, q));
  } else if (o.mode == "holder") {
    j = to_json(holder_seminorm(u, o.beta, domain, params.weight == WeightMode::ultra, q));
  } else if (o.mode == "lp") {
    j = {{"verdict", "finite"}, {"value", real_to_json(lp_norm(u, params.p, domain))}, {"p", params.p.to_string()},
         {"h", o.h}, {"nodes", u.grid().size()}};
  } else if (o.mode == "fourier") {
    j = to_json(fourier_seminorm(u, params, transform));
  } else if (o.mode == "weak") {
    WeakNormOptions w;
    w.transform = transform;
    w.reading = o.reading == "spatial" ? DerivativeTermReading::spatial : DerivativeTermReading::frequency;
    j = to_json(weak_fractional_norm(u, params, domain, w));
  }
  j["function"] = f.identifier();
  j["mode"] = o.mode;
  out << j.dump(2) << '\n';
  return kExitPass;
}

int run_class_check(const ClassOptions& o, const GlobalOptions& g, std::ostream& out) {
  const Corpus corpus = load_corpus(g);
  const ClosedForm f = resolve_form(corpus, o.fn);
  StripSpec spec;
  spec.truncation = o.trunc;
  spec.h = o.h;
  spec.workers = g.workers;
  const SeminormLattice lattice = eta_lattice(f, o.max_beta, o.max_order, o.trunc, o.h);
  if (o.format == "matrix") {
    out << f.identifier() << '\n' << render_lattice(lattice);
    out << class_membership_report(f, o.max_p, spec).summary() << '\n';
    return kExitPass;
  }
  nlohmann::json j{{"function", f.identifier()},
                   {"membership", to_json(class_membership_report(f, o.max_p, spec))},
                   {"lattice", to_json(lattice)}};
  if (!o.vanishing.empty()) {
    const DomainSpec d = DomainSpec::parse(o.vanishing);
    if (d.dimension() != 1) throw ConfigError("vanishing interval must be one-dimensional");
    j["vanishing"] = to_json(vanishing_check(f, d.axis(0), default_y_sweep(), o.h));
  }
  out << j.dump(2) << '\n';
  return kExitPass;
}

std::filesystem::path output_path(const ExperimentConfig& cfg, const ExperimentOptions& o) {
  if (!o.output.empty()) return o.output;
  const std::filesystem::path name(cfg.output);
  if (const char* dir = std::getenv("FRACSOB_OUTPUT_DIR"); dir && *dir) return std::filesystem::path(dir) / name.filename();
  return name;
}

int run_experiment_command(const std::string& experiment, const ExperimentOptions& o, const GlobalOptions& g,
                           std::ostream& out) {
  const Corpus corpus = load_corpus(g);
  const ExperimentConfig cfg = ExperimentConfig::load(o.config, corpus);
  if (cfg.experiment != experiment) {
    throw ConfigError("config '" + o.config + "' describes experiment '" + cfg.experiment + "', not '" + experiment + "'");
  }
  RunOptions run;
  run.workers = g.workers;
  run.strict = g.strict;
  const ExperimentResult result = run_experiment(cfg, corpus, run);

  const std::filesystem::path path = output_path(cfg, o);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw ConfigError("cannot write '" + path.string() + "'");
  write_csv(csv, result);
  std::ofstream meta(path.string() + ".meta.json");
  meta << metadata_json(result, run).dump(2) << '\n';

  std::size_t failures = 0;
  for (const ExperimentRow& r : result.rows) failures += r.verdict == "fail";
  out << experiment << ": " << (result.passed() ? "PASS" : "FAIL") << " (" << result.rows.size() << " rows, "
      << failures << " failed) -> " << path.string() << '\n';
  return result.passed() ? kExitPass : kExitInequalityFailure;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical fractional Sobolev norms and inequality experiments", "fracsob"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_flag("--strict", g.strict, "Escalate boundary-decay warnings to errors");
  app.add_option("--workers", g.workers, "Worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));
  app.add_option("--corpus", g.corpus_path, "Corpus manifest (default: built-in)");

  NormOptions norm;
  CLI::App* norm_cmd = app.add_subcommand("norm", "Evaluate one norm of one function as a JSON report");
  norm_cmd->add_option("--fn", norm.fn, "Corpus id or 'reciprocal'");
  norm_cmd->add_option("--beta", norm.beta, "Fractional order");
  norm_cmd->add_option("--p", norm.p, "Integrability exponent or 'inf'");
  norm_cmd->add_option("--weight", norm.weight, "classical or ultra");
  norm_cmd->add_option("--domain", norm.domain, "lo:hi or lo:hi,lo:hi");
  norm_cmd->add_option("--h", norm.h, "Grid spacing")->check(CLI::PositiveNumber);
  norm_cmd->add_option("--mode", norm.mode, "Which norm")
      ->check(CLI::IsMember({"gagliardo", "full", "holder", "lp", "fourier", "weak"}));
  norm_cmd->add_option("--puncture", norm.puncture, "Diagonal exclusion radius in grid steps");
  norm_cmd->add_flag("--no-diagonal-correction", norm.no_diagonal, "Skip the zeta correction of the punctured sum");
  norm_cmd->add_flag("--exterior-tail", norm.exterior_tail, "Add the pairs with one point outside the box (1D)");
  norm_cmd->add_option("--reading", norm.reading, "Derivative term of the weak norm")
      ->check(CLI::IsMember({"frequency", "spatial"}));

  ClassOptions cls;
  CLI::App* class_cmd = app.add_subcommand("class-check", "Strip norms, eta lattice and membership of a closed form");
  class_cmd->add_option("--fn", cls.fn, "Corpus id or 'reciprocal'");
  class_cmd->add_option("--max-p", cls.max_p, "Largest strip half-width")->check(CLI::Range(1, 4));
  class_cmd->add_option("--max-beta", cls.max_beta, "Largest polynomial weight of the lattice")->check(CLI::Range(0, 8));
  class_cmd->add_option("--max-order", cls.max_order, "Largest derivative order of the lattice")->check(CLI::Range(0, 4));
  class_cmd->add_option("--trunc", cls.trunc, "Base truncation radius")->check(CLI::PositiveNumber);
  class_cmd->add_option("--h", cls.h, "Sampling step")->check(CLI::PositiveNumber);
  class_cmd->add_option("--vanishing", cls.vanishing, "Interval lo:hi for the boundary-vanishing check");
  class_cmd->add_option("--format", cls.format, "json or matrix")->check(CLI::IsMember({"json", "matrix"}));

  ExperimentOptions exp;
  std::string experiment;
  for (const char* name : {"embed", "density", "extend", "sweep"}) {
    CLI::App* cmd = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
    cmd->add_option("--config", exp.config, "Experiment config (JSON)")->required();
    cmd->add_option("--output", exp.output, "CSV path (overrides config and FRACSOB_OUTPUT_DIR)");
    cmd->callback([&experiment, name] { experiment = name; });
  }

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Inspect the test-function corpus");
  corpus_cmd->require_subcommand(1);
  CLI::App* list_cmd = corpus_cmd->add_subcommand("list", "List corpus members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (norm_cmd->parsed()) return run_norm(norm, g, out);
    if (class_cmd->parsed()) return run_class_check(cls, g, out);
    if (list_cmd->parsed()) {
      const Corpus corpus = load_corpus(g);
      out << corpus.version() << '\n';
      for (const std::string& id : corpus.ids()) out << id << '\t' << corpus.find(id).form().identifier() << '\n';
      return kExitPass;
    }
    return run_experiment_command(experiment, exp, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

}  // namespace fracsob
