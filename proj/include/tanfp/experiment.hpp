#pragma once

// JSON-configured experiments: scheme runs, certificate sweeps, the
// witness/counterexample tables and the intermediate-defect profile.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tanfp/mapping_zoo.hpp"
#include "tanfp/scheme.hpp"

namespace tanfp {

enum class Mode { Run, RunWithErrors, Certify, Witness, Counterexample, DefectProfile };

const char* to_string(Mode mode);

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::Constant;
  WeightBounds bounds;
  std::vector<std::vector<double>> rows;  // custom only
};

struct CertifyParams {
  int samples = 500;
  int n_max = 25;
  std::vector<double> growth_grid{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  bool include_passing = false;
};

struct WitnessParams {
  std::vector<double> alphas{0.5};
  std::vector<int> ks{3};
  double lambda_k = 0.1;
  std::optional<double> x0;
};

struct CounterexampleParams {
  ProductPoint x{1.0, {}};
  int n_max = 2000;
};

struct DefectProfileParams {
  double kappa = 0.5;
  int grid_size = 2001;
  std::vector<int> ns{1, 5, 10, 20};
};

struct ExperimentConfig {
  std::string name = "experiment";
  Mode mode = Mode::Run;
  std::vector<MappingSpec> t_family;
  std::vector<MappingSpec> i_family;  // defaults to identities
  ScheduleSpec alpha_schedule;
  ScheduleSpec beta_schedule;
  ProductPoint x0;
  double tol = 1e-8;
  int max_steps = 10000;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  std::optional<FixedSetDescriptor> fixed_set;
  std::optional<ProductPoint> reference_point;
  std::optional<ErrorTerms> error_terms;
  bool write_states = false;

  CertifyParams certify;
  WitnessParams witness;
  CounterexampleParams counterexample;
  DefectProfileParams defect_profile;
};

/// Parses and validates; throws ParseError for malformed JSON and
/// ValidationError listing every violated constraint with its field.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_json(const nlohmann::json& j);

/// Builds the scheme configuration (run modes and certify).
IterationConfig build_iteration_config(const ExperimentConfig& cfg);

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kCheckFailure = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kRuntimeError = 3;
}  // namespace exit_code

struct ExecuteResult {
  int exit_code = exit_code::kSuccess;
  std::vector<std::filesystem::path> artifacts;
  std::vector<std::string> failures;  // human-readable failed assertions
};

/// Writes artifacts under cfg.output_dir. Check failures map to exit code 1;
/// library errors propagate as tanfp::Error.
ExecuteResult execute(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace tanfp
