#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string output_dir;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--preset", args.preset,
                  "parameter preset: example1_beta_plus, example1_beta_minus, "
                  "example2");
  cmd->add_option("--output", args.output_dir,
                  "output directory (beats NLSW_OUTPUT_DIR and the config)");
  cmd->add_option("--override", args.overrides,
                  "config override KEY=VALUE, repeatable (dotted key paths)");
}

nlohmann::json load_tree(const CommonArgs& args) {
  nlohmann::json tree = nlohmann::json::object();
  if (!args.preset.empty()) tree = nlsw_cli::preset_json(args.preset);
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in.good())
      throw nlsw_cli::ConfigError("--config",
                                  "cannot open " + args.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json file = nlohmann::json::parse(buf.str(), nullptr, false);
    if (file.is_discarded())
      throw nlsw_cli::ConfigError("--config",
                                  args.config_path + " is not valid JSON");
    tree.merge_patch(file);
  }
  for (const std::string& assignment : args.overrides)
    nlsw_cli::apply_override(tree, assignment);
  if (!args.output_dir.empty())
    tree["io"]["output_dir"] = args.output_dir;
  else if (const char* env = std::getenv("NLSW_OUTPUT_DIR"); env && *env)
    tree["io"]["output_dir"] = std::string(env);
  return tree;
}

int dispatch(const CommonArgs& args, const std::string& kind,
             const std::string& resume_path) {
  try {
    nlohmann::json tree = load_tree(args);
    if (!kind.empty()) tree["experiment"]["kind"] = kind;
    const nlsw_cli::RunConfig config = nlsw_cli::config_from_json(tree);
    if (kind.empty()) {  // validate-config: echo the resolved config
      std::cout << nlsw_cli::serialize_config(config).dump(2) << "\n";
      return 0;
    }
    return nlsw_cli::run_experiment(config, resume_path);
  } catch (const nlsw_cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nlsw: energy-preserving exponential integrators for the 2D "
      "nonlinear Schrodinger equation with wave operator"};
  app.require_subcommand(1);

  CommonArgs sim_args, tsweep_args, ssweep_args, energy_args, validate_args;
  std::string resume_path;

  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate one trajectory");
  add_common(simulate, sim_args);
  simulate->add_option("--resume", resume_path,
                       "resume from a state checkpoint CSV");

  CLI::App* tsweep = app.add_subcommand(
      "sweep-temporal", "temporal refinement study (manufactured solution)");
  add_common(tsweep, tsweep_args);

  CLI::App* ssweep = app.add_subcommand(
      "sweep-spatial", "spatial refinement study (manufactured solution)");
  add_common(ssweep, ssweep_args);

  CLI::App* energy =
      app.add_subcommand("energy", "energy-conservation run (RE^n series)");
  add_common(energy, energy_args);

  CLI::App* validate = app.add_subcommand(
      "validate-config", "parse + validate, print the resolved config");
  add_common(validate, validate_args);

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) return dispatch(sim_args, "simulate", resume_path);
  if (tsweep->parsed()) return dispatch(tsweep_args, "temporal_sweep", "");
  if (ssweep->parsed()) return dispatch(ssweep_args, "spatial_sweep", "");
  if (energy->parsed()) return dispatch(energy_args, "energy", "");
  return dispatch(validate_args, "", "");
}
