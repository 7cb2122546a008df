#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smdpen/benchmarks.hpp"
#include "smdpen/config.hpp"

namespace smdpen {

using Metrics = std::vector<std::pair<std::string, double>>;

struct ArmResult {
  std::string name;  // empty for single-arm experiments
  RunReport report;
  Metrics metrics;
};

struct ExtraFile {
  std::string name;
  std::string content;
};

struct ExperimentResult {
  std::string experiment;
  RunConfig config;
  std::vector<ArmResult> arms;
  Metrics metrics;
  std::vector<ExtraFile> files;

  bool diverged() const;
  const ArmResult& arm(const std::string& name) const;
};

/// Start point, box and initial penalty of one trajectory case.
struct TrajectoryCase {
  char name;
  Vector start;
  Vector lower;
  Vector upper;
  double p0;
};

const std::vector<TrajectoryCase>& trajectory_cases();

/// Objective with exact gradient and, when sigma > 0, a sampler adding
/// N(0, sigma^2 I) noise to it.
Objective noisy_objective(std::function<double(const Vector&)> value,
                          std::function<Vector(const Vector&)> gradient, double sigma);

Problem penalty_demo_problem();
Problem beta_vs_l1_problem(PenaltyFormulation formulation);
Problem trajectory_problem(const TrajectoryCase& c, double sigma);
Problem rosenbrock_problem(Index n, double sigma);
Problem regression_problem(const bench::RegressionDataset& data, double sigma);

/// Table rows run by the regression experiment; `long_run` adds the large rows.
std::vector<std::pair<Index, Index>> regression_rows(bool long_run);
std::vector<Index> rosenbrock_dimensions(bool long_run);

/// Solver options derived from a resolved config.
SolverOptions solver_options(const RunConfig& config, StepSchedule::Kind schedule);

/// Runs one experiment from a resolved config (see resolve_config).
ExperimentResult run_experiment(const RunConfig& config);

}  // namespace smdpen
