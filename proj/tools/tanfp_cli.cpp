// Experiment runner: tanfp_cli <config.json> [--output-dir DIR] [--seed N] [--quiet]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tanfp/errors.hpp"
#include "tanfp/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run a fixed-point iteration experiment from a JSON config"};
  std::string config_path;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("config", config_path, "Experiment config (JSON)")->required();
  app.add_option("--output-dir", output_dir, "Directory for CSV/JSON artifacts (overrides output_dir)");
  app.add_option("--seed", seed, "Seed for random sweeps (overrides seed)");
  app.add_flag("--quiet,-q", quiet, "Only print errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : tanfp::exit_code::kConfigError;
  }

  tanfp::ExperimentConfig cfg;
  try {
    cfg = tanfp::parse_config(config_path);
  } catch (const tanfp::Error& e) {
    std::cerr << "config error in " << config_path << ": " << e.what() << '\n';
    return tanfp::exit_code::kConfigError;
  }
  if (output_dir) cfg.output_dir = *output_dir;
  if (seed) cfg.seed = *seed;

  try {
    const auto result = tanfp::execute(cfg, quiet ? nullptr : &std::cout);
    for (const auto& f : result.failures) std::cerr << "check failed: " << f << '\n';
    if (!quiet) {
      for (const auto& a : result.artifacts) std::cout << "wrote " << a.string() << '\n';
    }
    return result.exit_code;
  } catch (const tanfp::Error& e) {
    std::cerr << "runtime error (" << cfg.name << ", mode " << tanfp::to_string(cfg.mode) << "): " << e.what() << '\n';
    return tanfp::exit_code::kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return tanfp::exit_code::kRuntimeError;
  }
}
