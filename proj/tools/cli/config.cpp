#include "config.hpp"

#include <cmath>
#include <set>

namespace nlsw_cli {

using nlohmann::json;

namespace {

void check_keys(const json& node, const std::string& path,
                const std::set<std::string>& allowed) {
  for (auto it = node.begin(); it != node.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(path.empty() ? it.key() : path + "." + it.key(),
                        "unknown key");
}

double get_number(const json& node, const std::string& path,
                  const std::string& key, double fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_number())
    throw ConfigError(path + "." + key, "must be a number");
  return node[key].get<double>();
}

long long get_integer(const json& node, const std::string& path,
                      const std::string& key, long long fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_number_integer())
    throw ConfigError(path + "." + key, "must be an integer");
  return node[key].get<long long>();
}

std::string get_string(const json& node, const std::string& path,
                       const std::string& key, const std::string& fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_string())
    throw ConfigError(path + "." + key, "must be a string");
  return node[key].get<std::string>();
}

bool get_bool(const json& node, const std::string& path,
              const std::string& key, bool fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_boolean())
    throw ConfigError(path + "." + key, "must be a boolean");
  return node[key].get<bool>();
}

void expect_one_of(const std::string& path, const std::string& value,
                   const std::set<std::string>& allowed) {
  if (allowed.count(value)) return;
  std::string options;
  for (const std::string& s : allowed)
    options += (options.empty() ? "" : ", ") + s;
  throw ConfigError(path, "must be one of {" + options + "}, got '" + value +
                              "'");
}

void validate(const RunConfig& c) {
  if (!(c.problem.alpha != 0.0) || !std::isfinite(c.problem.alpha))
    throw ConfigError("problem.alpha", "must be a nonzero real");
  if (!(c.problem.beta != 0.0) || !std::isfinite(c.problem.beta))
    throw ConfigError("problem.beta", "must be a nonzero real");
  if (!(c.problem.c0 > 0.0))
    throw ConfigError("problem.c0", "must be positive");
  if (!(c.problem.domain.extent_x > 0.0))
    throw ConfigError("problem.domain.X", "must be positive");
  if (!(c.problem.domain.extent_y > 0.0))
    throw ConfigError("problem.domain.Y", "must be positive");
  if (c.problem.n < 4)
    throw ConfigError("problem.N", "must be at least 4");
  if (c.problem.n % 2 != 0)
    throw ConfigError("problem.N", "must be even");
  expect_one_of("problem.initial", c.problem.initial,
                {"zero", "example1", "example2"});
  expect_one_of("problem.source", c.problem.source, {"none", "manufactured"});
  expect_one_of("scheme.name", c.scheme.name, {"savif", "ifgrk4", "ifgrk6"});
  if (!(c.scheme.predictor_tol > 0.0))
    throw ConfigError("scheme.predictor.tol", "must be positive");
  if (c.scheme.predictor_max_iter < 0)
    throw ConfigError("scheme.predictor.max_iter",
                      "must be >= 0 (0 selects the default)");
  if (!(c.time.tau > 0.0))
    throw ConfigError("time.tau", "must be positive");
  if (!(c.time.t_final >= c.time.tau))
    throw ConfigError("time.T", "must be at least tau");
  const double steps = c.time.t_final / c.time.tau;
  if (std::abs(steps - std::llround(steps)) > 1e-8 * std::max(1.0, steps))
    throw ConfigError("time.T", "must be an integer multiple of tau");
  expect_one_of("experiment.kind", c.experiment.kind,
                {"simulate", "temporal_sweep", "spatial_sweep", "energy"});
  if (c.experiment.kind == "temporal_sweep") {
    if (c.experiment.tau_list.empty())
      throw ConfigError("experiment.tau_list",
                        "must be non-empty for a temporal sweep");
    for (double tau : c.experiment.tau_list)
      if (!(tau > 0.0))
        throw ConfigError("experiment.tau_list", "entries must be positive");
  }
  if (c.experiment.kind == "spatial_sweep") {
    if (c.experiment.n_list.empty())
      throw ConfigError("experiment.N_list",
                        "must be non-empty for a spatial sweep");
    for (int n : c.experiment.n_list)
      if (n < 4 || n % 2 != 0)
        throw ConfigError("experiment.N_list", "entries must be even and >= 4");
  }
  if (c.experiment.kind == "temporal_sweep" ||
      c.experiment.kind == "spatial_sweep") {
    if (c.problem.initial != "example1")
      throw ConfigError("problem.initial",
                        "sweeps use the manufactured setup; set 'example1'");
    if (c.problem.source != "manufactured")
      throw ConfigError("problem.source",
                        "sweeps use the manufactured setup; set 'manufactured'");
  }
  if (c.experiment.kind == "energy" && c.problem.source != "none")
    throw ConfigError("problem.source",
                      "energy experiment requires 'none' (conservative run)");
  if (c.io.output_dir.empty())
    throw ConfigError("io.output_dir", "must be non-empty");
  if (c.io.checkpoint_every < 0)
    throw ConfigError("io.checkpoint_every", "must be >= 0");
}

}  // namespace

RunConfig config_from_json(const json& tree) {
  if (!tree.is_object()) throw ConfigError("<root>", "must be a JSON object");
  check_keys(tree, "", {"problem", "scheme", "time", "experiment", "io"});
  RunConfig c;

  if (tree.contains("problem")) {
    const json& p = tree["problem"];
    check_keys(p, "problem",
               {"alpha", "beta", "c0", "domain", "N", "initial", "source"});
    c.problem.alpha = get_number(p, "problem", "alpha", c.problem.alpha);
    c.problem.beta = get_number(p, "problem", "beta", c.problem.beta);
    c.problem.c0 = get_number(p, "problem", "c0", c.problem.c0);
    if (p.contains("domain")) {
      const json& d = p["domain"];
      check_keys(d, "problem.domain", {"xL", "yL", "X", "Y"});
      c.problem.domain.x_left =
          get_number(d, "problem.domain", "xL", c.problem.domain.x_left);
      c.problem.domain.y_left =
          get_number(d, "problem.domain", "yL", c.problem.domain.y_left);
      c.problem.domain.extent_x =
          get_number(d, "problem.domain", "X", c.problem.domain.extent_x);
      c.problem.domain.extent_y =
          get_number(d, "problem.domain", "Y", c.problem.domain.extent_y);
    }
    c.problem.n = static_cast<int>(get_integer(p, "problem", "N", c.problem.n));
    c.problem.initial = get_string(p, "problem", "initial", c.problem.initial);
    c.problem.source = get_string(p, "problem", "source", c.problem.source);
  }

  if (tree.contains("scheme")) {
    const json& s = tree["scheme"];
    check_keys(s, "scheme", {"name", "predictor"});
    c.scheme.name = get_string(s, "scheme", "name", c.scheme.name);
    if (s.contains("predictor")) {
      const json& pr = s["predictor"];
      check_keys(pr, "scheme.predictor", {"tol", "max_iter", "strict"});
      c.scheme.predictor_tol =
          get_number(pr, "scheme.predictor", "tol", c.scheme.predictor_tol);
      c.scheme.predictor_max_iter = static_cast<int>(get_integer(
          pr, "scheme.predictor", "max_iter", c.scheme.predictor_max_iter));
      c.scheme.strict_predictor =
          get_bool(pr, "scheme.predictor", "strict", c.scheme.strict_predictor);
    }
  }

  if (tree.contains("time")) {
    const json& t = tree["time"];
    check_keys(t, "time", {"tau", "T"});
    c.time.tau = get_number(t, "time", "tau", c.time.tau);
    c.time.t_final = get_number(t, "time", "T", c.time.t_final);
  }

  if (tree.contains("experiment")) {
    const json& e = tree["experiment"];
    check_keys(e, "experiment", {"kind", "tau_list", "N_list"});
    c.experiment.kind = get_string(e, "experiment", "kind", c.experiment.kind);
    if (e.contains("tau_list")) {
      if (!e["tau_list"].is_array())
        throw ConfigError("experiment.tau_list", "must be an array of numbers");
      for (const json& v : e["tau_list"]) {
        if (!v.is_number())
          throw ConfigError("experiment.tau_list", "entries must be numbers");
        c.experiment.tau_list.push_back(v.get<double>());
      }
    }
    if (e.contains("N_list")) {
      if (!e["N_list"].is_array())
        throw ConfigError("experiment.N_list", "must be an array of integers");
      for (const json& v : e["N_list"]) {
        if (!v.is_number_integer())
          throw ConfigError("experiment.N_list", "entries must be integers");
        c.experiment.n_list.push_back(v.get<int>());
      }
    }
  }

  if (tree.contains("io")) {
    const json& io = tree["io"];
    check_keys(io, "io", {"output_dir", "checkpoint_every", "seed"});
    c.io.output_dir = get_string(io, "io", "output_dir", c.io.output_dir);
    c.io.checkpoint_every =
        get_integer(io, "io", "checkpoint_every", c.io.checkpoint_every);
    c.io.seed = static_cast<unsigned long long>(
        get_integer(io, "io", "seed", static_cast<long long>(c.io.seed)));
  }

  validate(c);
  return c;
}

RunConfig parse_config(const std::string& text) {
  json tree;
  try {
    tree = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(tree);
}

json serialize_config(const RunConfig& c) {
  json tree;
  tree["problem"] = {
      {"alpha", c.problem.alpha},
      {"beta", c.problem.beta},
      {"c0", c.problem.c0},
      {"domain",
       {{"xL", c.problem.domain.x_left},
        {"yL", c.problem.domain.y_left},
        {"X", c.problem.domain.extent_x},
        {"Y", c.problem.domain.extent_y}}},
      {"N", c.problem.n},
      {"initial", c.problem.initial},
      {"source", c.problem.source}};
  tree["scheme"] = {{"name", c.scheme.name},
                    {"predictor",
                     {{"tol", c.scheme.predictor_tol},
                      {"max_iter", c.scheme.predictor_max_iter},
                      {"strict", c.scheme.strict_predictor}}}};
  tree["time"] = {{"tau", c.time.tau}, {"T", c.time.t_final}};
  tree["experiment"] = {{"kind", c.experiment.kind},
                        {"tau_list", c.experiment.tau_list},
                        {"N_list", c.experiment.n_list}};
  tree["io"] = {{"output_dir", c.io.output_dir},
                {"checkpoint_every", c.io.checkpoint_every},
                {"seed", c.io.seed}};
  return tree;
}

json preset_json(const std::string& name) {
  json tree;
  if (name == "example1_beta_plus" || name == "example1_beta_minus") {
    tree["problem"] = {{"alpha", 1.0},
                       {"beta", name == "example1_beta_plus" ? 1.0 : -1.0},
                       {"domain",
                        {{"xL", -8.0}, {"yL", -8.0}, {"X", 16.0}, {"Y", 16.0}}},
                       {"N", 64},
                       {"initial", "example1"},
                       {"source", "manufactured"}};
    tree["time"] = {{"tau", 0.0125}, {"T", 1.0}};
    tree["experiment"] = {
        {"kind", "simulate"},
        {"tau_list", {0.1, 0.05, 0.025, 0.0125, 0.00625}},
        {"N_list", {16, 24, 32, 48, 64}}};
  } else if (name == "example2") {
    tree["problem"] = {{"alpha", 1.0},
                       {"beta", 1.0},
                       {"domain",
                        {{"xL", -32.0}, {"yL", -32.0}, {"X", 64.0}, {"Y", 64.0}}},
                       {"N", 128},
                       {"initial", "example2"},
                       {"source", "none"}};
    tree["time"] = {{"tau", 0.05}, {"T", 5.0}};
    tree["experiment"] = {{"kind", "energy"}};
  } else {
    throw ConfigError("--preset", "unknown preset '" + name +
                                      "'; available: example1_beta_plus, "
                                      "example1_beta_minus, example2");
  }
  return tree;
}

void apply_override(json& tree, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--override", "expected KEY=VALUE, got '" + assignment +
                                        "'");
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  json* node = &tree;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("--override", "empty key in " + path);
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace nlsw_cli
