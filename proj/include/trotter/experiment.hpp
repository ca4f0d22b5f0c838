#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trotter {

// Malformed experiment description: unknown kind, unknown or missing key,
// unparsable value. The message names the config source and the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key-value experiment description. One "key = value" entry per line,
// '#' starts a comment, values may hold several whitespace-separated tokens.
// No nesting and no file inclusion; "kind" selects the experiment.
struct ExperimentConfig {
  std::string source;  // where the text came from, used in error messages
  std::string kind;
  std::map<std::string, std::string> values;  // remaining entries
};

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source);
ExperimentConfig parse_config_file(const std::string& path);

// The supported experiment kinds, in display order.
const std::vector<std::string>& experiment_kinds();

struct AssertionResult {
  std::string name;
  bool passed = false;
  std::string detail;  // measured value next to the declared threshold
};

struct RunResult {
  std::vector<std::string> artifacts;  // files written, summary.json last
  std::vector<AssertionResult> assertions;
  bool passed = true;  // every declared assertion held
};

struct RunOptions {
  std::string output_dir = "out";
  std::optional<unsigned long long> seed;  // overrides the config seed
  int threads = 1;  // accepted bound on worker threads; execution is serial
};

// Executes the experiment and writes its artifacts (CSV curves and a JSON
// summary with slope fits, bound values, and per-assertion verdicts) under
// options.output_dir. Identical (config, seed) inputs produce byte-identical
// artifacts. Floating-point output carries nine significant digits.
RunResult run_experiment(const ExperimentConfig& config,
                         const RunOptions& options);

}  // namespace trotter
