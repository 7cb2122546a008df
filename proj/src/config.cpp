#include "smdpen/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace smdpen {

using nlohmann::json;

namespace {

const std::vector<std::string> kKeys = {
    "experiment", "iterations", "seed",         "gamma0", "beta",           "p0",   "kappa",
    "p_max",      "sigma",      "record_every", "out",    "dual_averaging", "long"};

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

double as_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key, "expected a finite number");
  return d;
}

long as_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<long>();
}

std::uint64_t as_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long>() < 0))
    throw ConfigError(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"trajectories", "rosenbrock", "penalty-demo-1d",
                                                 "beta-vs-l1", "regression"};
  return names;
}

RunConfig merge(const RunConfig& base, const RunConfig& overlay) {
  RunConfig out = base;
  if (!overlay.experiment.empty()) out.experiment = overlay.experiment;
  take(out.iterations, overlay.iterations);
  take(out.seed, overlay.seed);
  take(out.gamma0, overlay.gamma0);
  take(out.beta, overlay.beta);
  take(out.p0, overlay.p0);
  take(out.kappa, overlay.kappa);
  take(out.p_max, overlay.p_max);
  take(out.sigma, overlay.sigma);
  take(out.record_every, overlay.record_every);
  take(out.out, overlay.out);
  take(out.dual_averaging, overlay.dual_averaging);
  take(out.long_run, overlay.long_run);
  return out;
}

RunConfig default_config(const std::string& experiment) {
  RunConfig c;
  c.experiment = experiment;
  c.seed = 0;
  c.beta = 2.0;
  c.kappa = 2.0;
  c.p_max = 1e12;
  c.sigma = 0.0;
  c.record_every = 1;
  c.out = "results";
  c.dual_averaging = false;
  c.long_run = false;

  if (experiment == "penalty-demo-1d") {
    c.iterations = 5000;
    c.gamma0 = 0.5;
    c.p0 = 0.1;
  } else if (experiment == "beta-vs-l1") {
    c.iterations = 2000;
    c.gamma0 = 0.5;
    c.p0 = 0.5;
    c.kappa = 3.0;
  } else if (experiment == "trajectories") {
    c.iterations = 20000;
    c.seed = 1;
    c.gamma0 = 0.5;
    c.sigma = 0.5;
  } else if (experiment == "rosenbrock") {
    c.iterations = 200000;
    c.gamma0 = 3e-3;
    c.p0 = 20.0;
    c.record_every = 100;
    c.dual_averaging = true;
  } else if (experiment == "regression") {
    c.iterations = 20000;
    c.gamma0 = 0.1;
    c.p0 = 1e-3;
    c.kappa = 1.1;
    c.record_every = 500;
  } else if (experiment == "all") {
    RunConfig all;
    all.experiment = "all";
    all.out = "results";
    return all;
  } else {
    throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
  }
  return c;
}

void validate(const RunConfig& c) {
  if (c.experiment != "all" &&
      std::find(experiment_names().begin(), experiment_names().end(), c.experiment) ==
          experiment_names().end())
    throw ConfigError("experiment", "unknown experiment '" + c.experiment + "'");
  if (c.iterations && *c.iterations < 1) throw ConfigError("iterations", "must be >= 1");
  if (c.record_every && *c.record_every < 1) throw ConfigError("record_every", "must be >= 1");
  if (c.beta && !(*c.beta > 1.0 && *c.beta <= 100.0))
    throw ConfigError("beta", "must lie in (1, 100]");
  if (c.kappa && !(*c.kappa > 1.0 && *c.kappa <= 10.0))
    throw ConfigError("kappa", "must lie in (1, 10]");
  if (c.gamma0 && !(*c.gamma0 > 0.0)) throw ConfigError("gamma0", "must be positive");
  if (c.p0 && !(*c.p0 > 0.0)) throw ConfigError("p0", "must be positive");
  if (c.p_max && !(*c.p_max > 0.0)) throw ConfigError("p_max", "must be positive");
  if (c.p0 && c.p_max && *c.p0 > *c.p_max) throw ConfigError("p0", "must not exceed p_max");
  if (c.sigma && !(*c.sigma >= 0.0)) throw ConfigError("sigma", "must be non-negative");
  if (c.out && c.out->empty()) throw ConfigError("out", "must not be empty");
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  RunConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw ConfigError(key, "unknown key");
    if (value.is_null()) continue;
    if (key == "experiment") c.experiment = as_string(value, key);
    else if (key == "iterations") c.iterations = as_integer(value, key);
    else if (key == "seed") c.seed = as_unsigned(value, key);
    else if (key == "gamma0") c.gamma0 = as_real(value, key);
    else if (key == "beta") c.beta = as_real(value, key);
    else if (key == "p0") c.p0 = as_real(value, key);
    else if (key == "kappa") c.kappa = as_real(value, key);
    else if (key == "p_max") c.p_max = as_real(value, key);
    else if (key == "sigma") c.sigma = as_real(value, key);
    else if (key == "record_every") c.record_every = as_integer(value, key);
    else if (key == "out") c.out = as_string(value, key);
    else if (key == "dual_averaging") c.dual_averaging = as_bool(value, key);
    else if (key == "long") c.long_run = as_bool(value, key);
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  json doc = json::object();
  if (!c.experiment.empty()) doc["experiment"] = c.experiment;
  auto put = [&](const char* key, const auto& field) {
    if (field) doc[key] = *field;
  };
  put("iterations", c.iterations);
  put("seed", c.seed);
  put("gamma0", c.gamma0);
  put("beta", c.beta);
  put("p0", c.p0);
  put("kappa", c.kappa);
  put("p_max", c.p_max);
  put("sigma", c.sigma);
  put("record_every", c.record_every);
  put("out", c.out);
  put("dual_averaging", c.dual_averaging);
  put("long", c.long_run);
  return doc.dump(2);
}

RunConfig resolve_config(const std::string& experiment, const std::optional<std::string>& file,
                         const RunConfig& flags) {
  RunConfig c = default_config(experiment);
  if (file) {
    RunConfig from_file = load_config_file(*file);
    if (!from_file.experiment.empty() && from_file.experiment != experiment)
      throw ConfigError("experiment", "config file is for '" + from_file.experiment + "'");
    c = merge(c, from_file);
  }
  c = merge(c, flags);
  c.experiment = experiment;
  validate(c);
  return c;
}

}  // namespace smdpen
