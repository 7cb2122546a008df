// smdpen: runs the benchmark experiments and writes traces.

#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smdpen/config.hpp"
#include "smdpen/experiments.hpp"
#include "smdpen/trace_io.hpp"

namespace {

enum Exit { kOk = 0, kIo = 1, kConfig = 2, kDiverged = 3 };

struct Outcome {
  std::string experiment;
  int code = kOk;
  std::string message;
};

Outcome run_one(const smdpen::RunConfig& config) {
  Outcome out{config.experiment, kOk, {}};
  const std::filesystem::path dir = std::filesystem::path(*config.out) / config.experiment;
  try {
    const smdpen::ExperimentResult result = smdpen::run_experiment(config);
    smdpen::write_experiment(result, dir);
    if (result.diverged()) {
      out.code = kDiverged;
      out.message = "diverged (partial summary in " + dir.string() + ")";
    } else {
      out.message = "ok -> " + dir.string();
    }
  } catch (const smdpen::ConfigError& e) {
    out.code = kConfig;
    out.message = e.what();
  } catch (const smdpen::IoError& e) {
    out.code = kIo;
    out.message = e.what();
  } catch (const smdpen::PreconditionError& e) {
    out.code = kConfig;
    out.message = e.what();
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic mirror descent on exact beta-norm penalties"};
  app.set_version_flag("--version", "smdpen 0.1.0");

  std::string experiment;
  std::string config_file;
  smdpen::RunConfig flags;
  long iters = 0, record_every = 0;
  std::uint64_t seed = 0;
  double beta = 0, p0 = 0, kappa = 0, gamma0 = 0, sigma = 0, p_max = 0;
  std::string out;
  bool dual_averaging = false, long_run = false;

  std::string names = "all";
  for (const auto& n : smdpen::experiment_names()) names += ", " + n;
  app.add_option("experiment", experiment, "one of: " + names)->required();
  auto* o_config = app.add_option("--config", config_file, "JSON config file");
  auto* o_seed = app.add_option("--seed", seed, "RNG seed");
  auto* o_iters = app.add_option("--iters", iters, "iteration budget");
  auto* o_beta = app.add_option("--beta", beta, "penalty norm exponent");
  auto* o_p0 = app.add_option("--p0", p0, "initial penalty parameter");
  auto* o_kappa = app.add_option("--kappa", kappa, "penalty multiplier");
  auto* o_gamma0 = app.add_option("--gamma0", gamma0, "step-size numerator");
  auto* o_sigma = app.add_option("--sigma", sigma, "gradient noise standard deviation");
  auto* o_pmax = app.add_option("--p-max", p_max, "penalty cap");
  auto* o_rec = app.add_option("--record-every", record_every, "trace stride");
  auto* o_out = app.add_option("--out", out, "output root directory");
  auto* o_da = app.add_flag("--dual-averaging", dual_averaging, "use the dual-averaging variant");
  auto* o_long = app.add_flag("--long", long_run, "include the long-running cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  if (*o_seed) flags.seed = seed;
  if (*o_iters) flags.iterations = iters;
  if (*o_beta) flags.beta = beta;
  if (*o_p0) flags.p0 = p0;
  if (*o_kappa) flags.kappa = kappa;
  if (*o_gamma0) flags.gamma0 = gamma0;
  if (*o_sigma) flags.sigma = sigma;
  if (*o_pmax) flags.p_max = p_max;
  if (*o_rec) flags.record_every = record_every;
  if (*o_out) flags.out = out;
  if (*o_da) flags.dual_averaging = dual_averaging;
  if (*o_long) flags.long_run = long_run;
  const std::optional<std::string> file =
      *o_config ? std::optional<std::string>(config_file) : std::nullopt;

  std::vector<smdpen::RunConfig> configs;
  try {
    const smdpen::RunConfig top = smdpen::resolve_config(experiment, file, flags);
    if (experiment == "all") {
      smdpen::RunConfig shared = top;
      shared.experiment.clear();
      for (const auto& name : smdpen::experiment_names()) {
        smdpen::RunConfig c = smdpen::merge(smdpen::default_config(name), shared);
        c.experiment = name;
        smdpen::validate(c);
        configs.push_back(c);
      }
    } else {
      configs.push_back(top);
    }
  } catch (const smdpen::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }

  std::vector<std::future<Outcome>> jobs;
  for (const auto& c : configs) jobs.push_back(std::async(std::launch::async, run_one, c));

  int code = kOk;
  for (auto& job : jobs) {
    const Outcome o = job.get();
    (o.code == kOk ? std::cout : std::cerr) << o.experiment << ": " << o.message << "\n";
    if (o.code == kConfig) code = kConfig;
    else if (o.code == kIo && code != kConfig) code = kIo;
    else if (o.code == kDiverged && code == kOk) code = kDiverged;
  }
  return code;
}
