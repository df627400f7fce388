#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fracsob/cli.hpp"
#include "fracsob/harness.hpp"

using namespace fracsob;
namespace fs = std::filesystem;

namespace {

const Corpus& corpus() { return Corpus::builtin(); }

ExperimentConfig config(const std::string& text) { return ExperimentConfig::from_json(nlohmann::json::parse(text), corpus()); }

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

std::vector<const ExperimentRow*> rows_of(const ExperimentResult& r, const std::string& claim, const std::string& member) {
  std::vector<const ExperimentRow*> out;
  for (const ExperimentRow& row : r.rows) {
    if (row.claim_id == claim && row.member == member) out.push_back(&row);
  }
  return out;
}

struct Cli {
  int code = -1;
  std::string out;
  std::string err;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fracsob");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  Cli result;
  result.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fracsob_harness_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

const char* kSmallEmbed = R"({
  "schema_version": 1, "experiment": "embed", "domain": "0:1",
  "members": ["gaussian", "bump_half", "constant", "zero", "linear_ramp"],
  "resolutions": [0.03125, 0.015625],
  "params": [
    {"beta": 0.5, "betaprime": 0.25, "p": 2, "claims": ["P3.7i"]},
    {"beta": 0.3, "p": 2, "claims": ["C3.9i"]},
    {"beta": 0.5, "p": 4, "claims": ["T4.2"]},
    {"beta": 0.5, "p": 1, "claims": ["T4.2"]}
  ]
})";

}  // namespace

TEST_CASE("config validation") {
  const ExperimentConfig cfg = config(kSmallEmbed);
  CHECK(cfg.members.size() == 5);
  CHECK(cfg.params.size() == 4);
  CHECK(cfg.output == "embed.csv");
  CHECK(cfg.hash().size() == 16);
  CHECK(config(cfg.to_json().dump()).hash() == cfg.hash());

  CHECK_THROWS_WITH_AS(config(R"({"experiment":"embed","domain":"0:1","members":["nosuch"],"resolutions":[0.1,0.05],
                                  "params":[{"beta":0.5,"p":2}]})"),
                       doctest::Contains("unknown corpus id"), ConfigError);
  CHECK_THROWS_AS(config(R"({"experiment":"embed","domain":"0:1","resolutions":[0.1],"params":[{"beta":0.5,"p":2}]})"),
                  ConfigError);
  CHECK_THROWS_AS(config(R"({"experiment":"bake","domain":"0:1","resolutions":[0.1,0.05],"params":[{"beta":0.5,"p":2}]})"),
                  ConfigError);
  CHECK_THROWS_AS(config(R"({"schema_version":7,"experiment":"embed","domain":"0:1","resolutions":[0.1,0.05],
                             "params":[{"beta":0.5,"p":2}]})"),
                  ConfigError);
  CHECK_THROWS_AS(config(R"({"experiment":"embed","domain":"0:1","resolutions":[0.1,0.05],"params":[{"beta":0.5}]})"),
                  ConfigError);
  CHECK_THROWS_AS(config(R"({"experiment":"embed","domain":"0:1","resolutions":[0.1,0.05],
                             "params":[{"beta":0.5,"betaprime":0.7,"p":2}]})"),
                  ConfigError);
  SUBCASE("members default to the whole corpus") {
    const ExperimentConfig all =
        config(R"({"experiment":"sweep","domain":"-4:4","resolutions":[0.1,0.05,0.025],"params":[{"beta":0.5,"p":"inf"}]})");
    CHECK(all.members == corpus().ids());
    CHECK(all.params[0].p.is_infinite());
  }
}

TEST_CASE("embedding experiment") {
  const ExperimentResult r = embedding_experiment(config(kSmallEmbed), corpus());
  CHECK(r.passed());
  CHECK(r.corpus_version == "corpus-v1");
  for (const ExperimentRow& row : r.rows) {
    CHECK(row.config_hash == r.config_hash);
    CHECK(row.corpus_version == r.corpus_version);
  }
  for (const ExperimentRow* row : rows_of(r, "P3.7i", "zero")) CHECK(row->verdict == "skip_degenerate");
  for (const ExperimentRow* row : rows_of(r, "P3.7i", "constant")) {
    CHECK(row->verdict == "pass");
    CHECK(row->value_lhs == 0.0);
    CHECK(row->value_rhs == 0.0);
  }
  for (const ExperimentRow* row : rows_of(r, "P3.7i", "gaussian")) {
    CHECK(row->constant == doctest::Approx(std::sqrt(2.0)));
    CHECK(row->betaprime == 0.25);
  }
  SUBCASE("Lebesgue exponent for n = 1, p = 2, beta = 0.3 is 5") {
    const ExperimentRow* g = rows_of(r, "C3.9i", "gaussian").front();
    CHECK(g->verdict == "measured");
    CHECK(g->constant > 0.0);
    const auto stability = rows_of(r, "C3.9i", "stability");
    REQUIRE(stability.size() == 1);
    CHECK(stability[0]->verdict == "pass");
  }
  SUBCASE("regime violations are skipped") {
    bool skipped = false;
    for (const ExperimentRow& row : r.rows) skipped = skipped || (row.claim_id == "T4.2" && row.verdict == "skip_regime");
    CHECK(skipped);
  }
  SUBCASE("the unit-diameter check is skipped on larger domains") {
    ExperimentConfig wide = config(kSmallEmbed);
    wide.domain = DomainSpec::line(0.0, 2.0);
    wide.params.resize(1);
    const ExperimentResult w = embedding_experiment(wide, corpus());
    for (const ExperimentRow& row : w.rows) CHECK(row.verdict == "skip_regime");
  }
}

TEST_CASE("pass/fail is recomputable from the rows") {
  ExperimentResult r = embedding_experiment(config(kSmallEmbed), corpus());
  CHECK(r.passed());
  r.rows.back().verdict = "fail";
  CHECK_FALSE(r.passed());
}

TEST_CASE("CSV output") {
  const ExperimentResult r = embedding_experiment(config(kSmallEmbed), corpus());
  const std::string text = csv_of(r);
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  CHECK(header == kCsvHeader);
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
  }
  CHECK(count == r.rows.size());

  SUBCASE("byte-identical for any worker count") {
    RunOptions many;
    many.workers = 4;
    CHECK(csv_of(embedding_experiment(config(kSmallEmbed), corpus(), many)) == text);
  }
  SUBCASE("metadata sidecar") {
    const nlohmann::json meta = metadata_json(r, RunOptions{});
    CHECK(meta.at("config_hash") == r.config_hash);
    CHECK(meta.at("corpus_version") == "corpus-v1");
    CHECK(meta.at("passed") == true);
    CHECK(meta.contains("generated_at"));
  }
}

TEST_CASE("density experiment") {
  const ExperimentConfig cfg = config(R"({
    "experiment": "density", "domain": "-4:4", "members": ["bump"],
    "resolutions": [0.03125, 0.015625], "params": [{"beta": 0.5, "p": 2}],
    "options": {"epsilons": [0.4, 0.2, 0.1]}
  })");
  const ExperimentResult r = density_experiment(cfg, corpus());
  const auto summaries = rows_of(r, "T2.18", "bump:summary");
  REQUIRE(summaries.size() == 2);
  for (const ExperimentRow* s : summaries) CHECK(s->verdict == "fail");
  std::vector<Real> last;
  for (const ExperimentRow* s : summaries) last.push_back(s->value_lhs);
  SUBCASE("rung values converge under refinement at fixed eps") {
    CHECK(std::abs(last[1] - last[0]) / last[0] < 0.1);
  }
  const auto rungs = rows_of(r, "T2.18", "bump");
  REQUIRE(rungs.size() == 6);
  CHECK(rungs[0]->value_lhs > rungs[1]->value_lhs);
  CHECK(rungs[1]->value_lhs > rungs[2]->value_lhs);
  SUBCASE("a non-finite target is skipped") {
    const ExperimentConfig ramp = config(R"({
      "experiment": "density", "domain": "-4:4", "members": ["linear_ramp"],
      "resolutions": [0.0625, 0.03125], "params": [{"beta": 0.5, "p": "inf"}],
      "options": {"epsilons": [0.4]}
    })");
    CHECK_NOTHROW(density_experiment(ramp, corpus()));
  }
}

TEST_CASE("extension experiment") {
  const ExperimentConfig cfg = config(R"({
    "experiment": "extend", "domain": "-2:2", "members": ["bump", "bump_half", "zero"],
    "resolutions": [0.03125, 0.015625], "params": [{"beta": 0.5, "p": 2}],
    "options": {"target": "-4:4"}
  })");
  const ExperimentResult r = extension_experiment(cfg, corpus());
  CHECK(r.passed());
  for (const ExperimentRow* row : rows_of(r, "L3.10", "zero")) CHECK(row->verdict == "skip_degenerate");
  for (const ExperimentRow* row : rows_of(r, "L3.10-lp", "bump")) CHECK(row->value_lhs == row->value_rhs);
  for (const ExperimentRow* row : rows_of(r, "T3.12", "min")) CHECK(row->constant > 0.0);
  CHECK(rows_of(r, "T3.15ii", "bump_half").front()->verdict == "pass");
  CHECK(rows_of(r, "T3.15iii", "bump_half").front()->verdict == "pass");
}

TEST_CASE("convergence sweep") {
  const ExperimentConfig cfg = config(R"({
    "experiment": "sweep", "domain": "-8:8", "members": ["gaussian", "lorentzian"],
    "resolutions": [0.0625, 0.03125, 0.015625], "params": [{"beta": 0.5, "p": 2, "weight": "classical"}]
  })");
  const ExperimentResult r = convergence_sweep(cfg, corpus());
  CHECK(r.passed());
  CHECK(rows_of(r, "D2.2", "gaussian:summary").front()->verdict == "pass");
  for (const ExperimentRow* row : rows_of(r, "D2.5", "lorentzian")) CHECK(row->verdict == "divergent");
  CHECK(rows_of(r, "D2.5", "lorentzian:summary").front()->verdict == "pass");
  SUBCASE("lp of a slowly decaying member converges at second order") {
    const ExperimentRow* s = rows_of(r, "D2.1", "lorentzian:summary").front();
    CHECK(s->constant >= 1.9);
  }
  SUBCASE("needs three resolutions") {
    ExperimentConfig two = cfg;
    two.resolutions.pop_back();
    CHECK_THROWS_AS(convergence_sweep(two, corpus()), ConfigError);
  }
}

TEST_CASE("run_cli exit codes") {
  SUBCASE("norm prints a JSON report") {
    const Cli c = cli({"norm", "--fn", "gaussian", "--beta", "0.5", "--p", "2", "--weight", "ultra", "--domain", "-8:8", "--h",
                       "0.015625"});
    CHECK(c.code == kExitPass);
    const nlohmann::json j = nlohmann::json::parse(c.out);
    CHECK(j.at("verdict") == "finite");
    CHECK(j.at("weight_mode") == "ultra");
    CHECK(j.at("value").get<double>() > 0.0);
    for (const char* key : {"beta", "p", "h", "puncture", "error_estimate"}) CHECK(j.contains(key));
  }
  SUBCASE("beta outside (0,1) for a Gagliardo norm") {
    const Cli c = cli({"norm", "--beta", "1.5", "--p", "2"});
    CHECK(c.code == kExitConfigError);
    CHECK(c.err.find("beta must be in (0,1)") != std::string::npos);
  }
  SUBCASE("unknown corpus id") {
    const Cli c = cli({"norm", "--fn", "nosuch"});
    CHECK(c.code == kExitConfigError);
    CHECK(c.err.find("unknown corpus id") != std::string::npos);
  }
  SUBCASE("malformed config") {
    const fs::path bad = write_file("bad.json", "{ not json");
    const Cli c = cli({"embed", "--config", bad.string()});
    CHECK(c.code == kExitConfigError);
    CHECK_FALSE(c.err.empty());
  }
  SUBCASE("unknown subcommand and missing config") {
    CHECK(cli({"bake"}).code == kExitConfigError);
    CHECK(cli({"embed"}).code == kExitConfigError);
  }
  SUBCASE("embed writes a CSV and passes") {
    const fs::path cfg = write_file("embed.json", kSmallEmbed);
    const fs::path out = scratch("embed_out.csv");
    const Cli c = cli({"--workers", "2", "embed", "--config", cfg.string(), "--output", out.string()});
    CHECK(c.code == kExitPass);
    CHECK(fs::exists(out));
    CHECK(fs::exists(out.string() + ".meta.json"));
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == kCsvHeader);
  }
  SUBCASE("a failing inequality exits 1") {
    const fs::path cfg = write_file("density_fail.json", R"({
      "experiment": "density", "domain": "-4:4", "members": ["bump"],
      "resolutions": [0.0625, 0.03125], "params": [{"beta": 0.5, "p": 2}],
      "options": {"epsilons": [0.4, 0.2], "tolerance": 1e-9}
    })");
    const Cli c = cli({"density", "--config", cfg.string(), "--output", scratch("density_fail.csv").string()});
    CHECK(c.code == kExitInequalityFailure);
  }
  SUBCASE("a config for another experiment is rejected") {
    const fs::path cfg = write_file("embed2.json", kSmallEmbed);
    CHECK(cli({"sweep", "--config", cfg.string()}).code == kExitConfigError);
  }
  SUBCASE("corpus list") {
    const Cli c = cli({"corpus", "list"});
    CHECK(c.code == kExitPass);
    CHECK(c.out.find("corpus-v1") == 0);
    CHECK(c.out.find("sech") != std::string::npos);
  }
  SUBCASE("class-check") {
    const Cli c = cli({"class-check", "--fn", "sech", "--max-p", "3", "--max-beta", "1", "--max-order", "1"});
    CHECK(c.code == kExitPass);
    const nlohmann::json j = nlohmann::json::parse(c.out);
    CHECK(j.at("membership").at("excluded_at") == 2);
  }
}
