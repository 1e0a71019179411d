#ifndef NLSW_CLI_CONFIG_HPP
#define NLSW_CLI_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace nlsw_cli {

/// Validation failure with the offending key path, e.g. "problem.alpha".
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

struct RunConfig {
  struct Domain {
    double x_left = -8.0;
    double y_left = -8.0;
    double extent_x = 16.0;
    double extent_y = 16.0;
  };
  struct Problem {
    double alpha = 1.0;
    double beta = 1.0;
    double c0 = 1.0;
    Domain domain;
    int n = 64;
    std::string initial = "zero";   // zero | example1 | example2
    std::string source = "none";    // none | manufactured
  } problem;
  struct Scheme {
    std::string name = "savif";     // savif | ifgrk4 | ifgrk6
    double predictor_tol = 1e-13;
    int predictor_max_iter = 0;     // 0: scheme order + 2
    bool strict_predictor = false;
  } scheme;
  struct Time {
    double tau = 0.01;
    double t_final = 1.0;
  } time;
  struct Experiment {
    std::string kind = "simulate";  // simulate | temporal_sweep | spatial_sweep | energy
    std::vector<double> tau_list;
    std::vector<int> n_list;
  } experiment;
  struct Io {
    std::string output_dir = "out";
    long long checkpoint_every = 0;
    unsigned long long seed = 0;    // reserved for randomized property tests
  } io;
};

/// Parse + validate a JSON config document; unknown keys are rejected.
RunConfig parse_config(const std::string& text);

/// Resolved config as JSON; parse_config(serialize_config(c)) == c.
nlohmann::json serialize_config(const RunConfig& config);

/// Preset parameter sets ("example1_beta_plus", "example1_beta_minus",
/// "example2") as config JSON; any field may be overridden afterwards.
nlohmann::json preset_json(const std::string& name);

/// Apply a dotted-path override, e.g. "problem.N=128".
void apply_override(nlohmann::json& tree, const std::string& assignment);

RunConfig config_from_json(const nlohmann::json& tree);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace nlsw_cli

#endif
