#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tanfp/errors.hpp"
#include "tanfp/experiment.hpp"
#include "tanfp/serialization.hpp"

using namespace tanfp;
namespace fs = std::filesystem;

namespace {

const char* kMinimalRun = R"({
  "name": "minimal",
  "mode": "run",
  "t_family": [{"kind": "s", "alpha": 0.5}],
  "x0": {"scalar": 0.5, "vec": [0.5]}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tanfp_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string validation_message(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "config was accepted";
  return {};
}

}  // namespace

TEST(ParseConfig, MinimalRunGetsDefaults) {
  const auto cfg = parse_config_text(kMinimalRun);
  EXPECT_EQ(cfg.mode, Mode::Run);
  EXPECT_EQ(cfg.tol, 1e-8);
  EXPECT_EQ(cfg.max_steps, 10000);
  ASSERT_EQ(cfg.i_family.size(), 1u);
  EXPECT_EQ(cfg.i_family[0].kind, MappingKind::Identity);
  EXPECT_EQ(cfg.x0, (ProductPoint{0.5, {0.5}}));
}

TEST(ParseConfig, WeightsSummingToPointNineAreRejected) {
  const auto msg = validation_message(R"({
    "mode": "run",
    "t_family": [{"kind": "s", "alpha": 0.5}, {"kind": "s", "alpha": 0.3}],
    "alpha_schedule": {"kind": "custom", "weights": [0.3, 0.3, 0.3]},
    "x0": {"scalar": 0.5, "vec": []}
  })");
  EXPECT_NE(msg.find("simplex"), std::string::npos);
  EXPECT_NE(msg.find("alpha_schedule"), std::string::npos);
}

TEST(ParseConfig, UnknownModeIsRejected) {
  const auto msg = validation_message(R"({"mode": "sprint"})");
  EXPECT_NE(msg.find("mode"), std::string::npos);
  EXPECT_NE(msg.find("sprint"), std::string::npos);
}

TEST(ParseConfig, ListsEveryViolation) {
  const auto msg = validation_message(R"({
    "mode": "run",
    "t_family": [{"kind": "s", "alpha": 0.9}],
    "x0": {"scalar": 3.0, "vec": []},
    "tol": -1,
    "max_steps": 0
  })");
  for (const char* field : {"t_family[0].alpha", "x0", "tol", "max_steps"})
    EXPECT_NE(msg.find(field), std::string::npos) << field << " missing in: " << msg;
}

TEST(ParseConfig, AlphaAboveBallThresholdAllowedForCertify) {
  const auto cfg = parse_config_text(R"({
    "mode": "certify",
    "t_family": [{"kind": "s", "alpha": 0.9}],
    "certify": {"samples": 10, "n_max": 5}
  })");
  EXPECT_EQ(cfg.certify.samples, 10);
}

TEST(ParseConfig, MalformedJsonIsParseError) {
  try {
    parse_config_text("{\"mode\": ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  try {
    parse_config_text(R"({"mode": "run", "x0": {"scalar": "a"}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("x0"), std::string::npos);
  }
  EXPECT_THROW(parse_config("/nonexistent/config.json"), Error);
}

TEST(ParseConfig, UnknownMappingKindNamesField) {
  const auto msg = validation_message(R"({
    "mode": "run",
    "t_family": [{"kind": "s", "alpha": 0.5}, {"kind": "rotation"}],
    "x0": {"scalar": 0.5, "vec": []}
  })");
  EXPECT_NE(msg.find("t_family[1]"), std::string::npos);
}

TEST(ParseConfig, FamilySizeMismatch) {
  const auto msg = validation_message(R"({
    "mode": "run",
    "t_family": [{"kind": "s", "alpha": 0.5}],
    "i_family": [{"kind": "identity"}, {"kind": "identity"}],
    "x0": {"scalar": 0.5, "vec": []}
  })");
  EXPECT_NE(msg.find("i_family"), std::string::npos);
}

TEST(ParseConfig, ModeSpecificChecks) {
  EXPECT_NE(validation_message(R"({"mode": "counterexample", "counterexample": {"d": 1, "N": 1}})")
                .find("counterexample.N"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"mode": "witness", "witness": {"alphas": [1.5]}})").find("witness.alphas"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"mode": "defect_profile", "defect_profile": {"kappa": 2}})")
                .find("defect_profile.kappa"),
            std::string::npos);
}

TEST(Execute, RunWritesTraceAndSummary) {
  auto cfg = parse_config_text(kMinimalRun);
  cfg.output_dir = scratch("run");
  const auto result = execute(cfg);
  EXPECT_EQ(result.exit_code, exit_code::kSuccess);
  const auto summary = nlohmann::json::parse(slurp(cfg.output_dir / "summary.json"));
  EXPECT_EQ(summary["terminated_by"], "tolerance");
  EXPECT_TRUE(summary.contains("running_min_dist_to_fixset"));
  EXPECT_TRUE(summary["recursion_bound"]["checked"].get<bool>());
  const auto csv = slurp(cfg.output_dir / "trace.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,step_norm,dist_to_fixset,dist_to_ref,t_defect_1,i_defect_1");
}

TEST(Execute, RunWithErrors) {
  auto cfg = parse_config_text(R"({
    "mode": "run_with_errors",
    "t_family": [{"kind": "s", "alpha": 0.5}],
    "x0": {"scalar": 0.5, "vec": [0.5]},
    "error_terms": {"u": {"scalar": 0.5, "vec": []}, "v": {"scalar": 0.5, "vec": []}}
  })");
  cfg.output_dir = scratch("run_errors");
  EXPECT_EQ(execute(cfg).exit_code, exit_code::kSuccess);
  const auto summary = nlohmann::json::parse(slurp(cfg.output_dir / "summary.json"));
  EXPECT_TRUE(summary["recursion_bound"]["checked"].get<bool>());
}

TEST(Execute, WitnessReport) {
  auto cfg = parse_config_text(R"({"mode": "witness", "witness": {"alphas": [0.5], "ks": [3], "lambda_k": 0.1, "x0": 0.005}})");
  cfg.output_dir = scratch("witness");
  EXPECT_EQ(execute(cfg).exit_code, exit_code::kSuccess);
  const auto report = nlohmann::json::parse(slurp(cfg.output_dir / "witness.json"));
  EXPECT_NEAR(report["rows"][0]["ratio"].get<double>(), 1.17851, 1e-5);
  EXPECT_TRUE(report["rows"][0]["exceeds"].get<bool>());
}

TEST(Execute, CounterexampleLastRow) {
  auto cfg = parse_config_text(R"({"mode": "counterexample", "counterexample": {"d": 1, "N": 2000}})");
  cfg.output_dir = scratch("counterexample");
  EXPECT_EQ(execute(cfg).exit_code, exit_code::kSuccess);
  std::istringstream csv(slurp(cfg.output_dir / "counterexample.csv"));
  std::string line, last;
  int lines = 0;
  while (std::getline(csv, line)) {
    last = line;
    ++lines;
  }
  EXPECT_EQ(lines, 2001);
  std::vector<std::string> cells;
  std::stringstream ls(last);
  for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_NEAR(std::stod(cells[2]), 1.0, 1e-3);
  EXPECT_EQ(std::stod(cells[3]), 2.0);
}

TEST(Execute, DefectProfile) {
  auto cfg = parse_config_text(R"({"mode": "defect_profile"})");
  cfg.output_dir = scratch("defect");
  EXPECT_EQ(execute(cfg).exit_code, exit_code::kSuccess);
  EXPECT_TRUE(fs::exists(cfg.output_dir / "defect_profile.csv"));
}

TEST(Execute, CertifyIsByteReproducible) {
  const char* text = R"({
    "mode": "certify",
    "seed": 99,
    "t_family": [{"kind": "s", "alpha": 0.5}, {"kind": "s", "alpha": 0.9}],
    "certify": {"samples": 40, "n_max": 10, "include_passing": true}
  })";
  auto a = parse_config_text(text);
  auto b = parse_config_text(text);
  a.output_dir = scratch("cert_a");
  b.output_dir = scratch("cert_b");
  EXPECT_EQ(execute(a).exit_code, exit_code::kSuccess);
  EXPECT_EQ(execute(b).exit_code, exit_code::kSuccess);
  const auto ja = slurp(a.output_dir / "certificates.json");
  EXPECT_EQ(ja, slurp(b.output_dir / "certificates.json"));
  auto c = parse_config_text(text);
  c.seed = 100;
  c.output_dir = scratch("cert_c");
  execute(c);
  EXPECT_NE(ja, slurp(c.output_dir / "certificates.json"));
  const auto report = nlohmann::json::parse(ja);
  EXPECT_EQ(report["summary"]["failed"], 0);
  EXPECT_EQ(report["checks"].size(), report["summary"]["total"].get<std::size_t>());
}

TEST(Execute, RunIsByteReproducible) {
  auto a = parse_config_text(kMinimalRun);
  auto b = parse_config_text(kMinimalRun);
  a.output_dir = scratch("run_a");
  b.output_dir = scratch("run_b");
  a.write_states = b.write_states = true;
  execute(a);
  execute(b);
  for (const char* f : {"trace.csv", "summary.json", "states.jsonl"})
    EXPECT_EQ(slurp(a.output_dir / f), slurp(b.output_dir / f)) << f;
}

TEST(Serialization, RoundTripFormatting) {
  for (double x : {0.1, 1.0 / 3.0, 6.071279262233557e-07, 1e300, -0.0}) EXPECT_EQ(std::stod(format_double(x)), x);
  const ProductPoint p{0.25, {1.0 / 3.0, 0.0, -2.5}};
  EXPECT_EQ(point_from_json(to_json(p), "p"), p);
  const auto f = FixedSetDescriptor::scalar_line({0.0, 1.0});
  const auto g = fixed_set_from_json(to_json(f), "f");
  EXPECT_EQ(g.kind, f.kind);
  EXPECT_EQ(g.interval.hi, 1.0);
  const MappingSpec s{MappingKind::SF, 0.4, 0.6};
  const auto s2 = mapping_spec_from_json(to_json(s), "s");
  EXPECT_EQ(s2.kind, MappingKind::SF);
  EXPECT_EQ(s2.kappa, 0.6);
}
