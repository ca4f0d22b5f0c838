#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "trotter/experiment.hpp"

// Exit codes: 0 when every declared assertion passes, 1 when an assertion
// fails, 2 for configuration or runtime errors.
int main(int argc, char** argv) {
  CLI::App app{
      "Config-driven product-formula experiments: symbolic bound derivation, "
      "closed-form hydrogen bound curves, spherical-Bessel simulator sweeps, "
      "ionization trends, order comparisons, and the dense-oracle battery.\n"
      "Configs are flat 'key = value' lines; '#' starts a comment."};
  std::string config_path;
  std::string out_dir;
  unsigned long long seed = 0;
  int threads = 1;
  bool list_kinds = false;
  app.add_option("--config", config_path,
                 "Experiment config file (flat key = value lines)");
  app.add_option(
      "--out", out_dir,
      "Output directory; overrides the TROTTER_EXPERIMENTS_OUT environment "
      "variable and the config's output_dir key");
  auto* seed_opt =
      app.add_option("--seed", seed, "Override the config's RNG seed");
  app.add_option("--threads", threads,
                 "Upper bound on worker threads; experiments run serially so "
                 "artifacts stay byte-deterministic")
      ->check(CLI::PositiveNumber);
  app.add_flag("--list-kinds", list_kinds,
               "Print the supported experiment kinds and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list_kinds) {
    for (const auto& kind : trotter::experiment_kinds())
      std::printf("%s\n", kind.c_str());
    return 0;
  }
  if (config_path.empty()) {
    std::fprintf(stderr, "config error: --config is required\n");
    return 2;
  }

  try {
    trotter::ExperimentConfig config =
        trotter::parse_config_file(config_path);
    trotter::RunOptions options;
    options.threads = threads;
    if (*seed_opt) options.seed = seed;
    if (!out_dir.empty()) {
      options.output_dir = out_dir;
    } else if (const char* env = std::getenv("TROTTER_EXPERIMENTS_OUT");
               env && *env) {
      options.output_dir = env;
    } else if (auto it = config.values.find("output_dir");
               it != config.values.end() && !it->second.empty()) {
      options.output_dir = it->second;
    }

    trotter::RunResult result = trotter::run_experiment(config, options);
    for (const auto& path : result.artifacts)
      std::printf("wrote %s\n", path.c_str());
    for (const auto& a : result.assertions)
      std::printf("assertion %s: %s (%s)\n", a.name.c_str(),
                  a.passed ? "pass" : "FAIL", a.detail.c_str());
    return result.passed ? 0 : 1;
  } catch (const trotter::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
