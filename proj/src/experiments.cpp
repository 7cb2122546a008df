#include "smdpen/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

namespace smdpen {

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

ScalarFunction linear(Vector coeffs, double offset = 0.0) {
  return {[coeffs, offset](const Vector& x) { return offset + coeffs.dot(x); },
          [coeffs](const Vector&) { return coeffs; }};
}

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool p_nondecreasing(const RunReport& r) {
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    if (r.rows[i].p < r.rows[i - 1].p) return false;
  return true;
}

double b2d(bool b) { return b ? 1.0 : 0.0; }

ExperimentResult run_penalty_demo(const RunConfig& c) {
  const Problem problem = penalty_demo_problem();
  SolverOptions opt = solver_options(c, StepSchedule::Kind::InverseK);
  ArmResult arm{"", run(problem, opt), {}};
  const RunReport& r = arm.report;

  long last_update = 0;
  int late_updates = 0;
  for (const auto& e : r.events) {
    last_update = std::max(last_update, e.k);
    if (2 * e.k > r.iterations_run) ++late_updates;
  }
  double lo = kInfinity, hi = -kInfinity, sum = 0.0;
  long count = 0;
  for (const auto& row : r.rows) {
    if (row.k == 0 || 10 * row.k <= 9 * r.iterations_run) continue;
    lo = std::min(lo, row.grad_norm);
    hi = std::max(hi, row.grad_norm);
    sum += row.grad_norm;
    ++count;
  }
  const double xf = r.final_x[0];
  arm.metrics = {{"final_x", xf},
                 {"final_abs_error", std::abs(xf - 1.0)},
                 {"final_p", r.final_p},
                 {"penalty_updates", double(r.penalty_updates)},
                 {"last_update_k", double(last_update)},
                 {"updates_in_second_half", double(late_updates)},
                 {"p_nondecreasing", b2d(p_nondecreasing(r))},
                 {"tail_grad_norm_min", count ? lo : 0.0},
                 {"tail_grad_norm_max", count ? hi : 0.0},
                 {"tail_grad_norm_mean", count ? sum / double(count) : 0.0}};

  // P_p(x) on a grid for the initial p and every p the run moved to.
  std::vector<double> ps = {opt.penalty.p};
  for (const auto& e : r.events)
    if (e.p_after != ps.back()) ps.push_back(e.p_after);
  std::string csv = "x";
  for (double p : ps) csv += ",P_p=" + real(p);
  csv += "\n";
  for (int i = 0; i <= 250; ++i) {
    const double x = -0.5 + 2.5 * double(i) / 250.0;
    const Vector xv = vec({x});
    const double f = problem.objective.value(xv);
    const double m = violation(problem.constraints, xv, opt.penalty.beta);
    csv += real(x);
    for (double p : ps) csv += "," + real(f + p * m);
    csv += "\n";
  }

  ExperimentResult out;
  out.arms.push_back(std::move(arm));
  out.files.push_back({"penalty_curves.csv", std::move(csv)});
  return out;
}

ExperimentResult run_beta_vs_l1(const RunConfig& c) {
  ExperimentResult out;
  const SolverOptions opt = solver_options(c, StepSchedule::Kind::InverseK);
  for (auto [name, form] : {std::pair{"beta", PenaltyFormulation::BetaNorm},
                            std::pair{"l1", PenaltyFormulation::L1}}) {
    const Problem problem = beta_vs_l1_problem(form);
    ArmResult arm{name, run(problem, opt), {}};
    const RunReport& r = arm.report;
    double tail_min = kInfinity;
    for (const auto& row : r.rows)
      if (row.k > 0 && 10 * row.k > 9 * r.iterations_run)
        tail_min = std::min(tail_min, row.grad_norm);
    arm.metrics = {{"final_m", r.final_m},
                   {"final_m_beta2", violation(problem.constraints, r.final_x, 2.0)},
                   {"final_p", r.final_p},
                   {"penalty_updates", double(r.penalty_updates)},
                   {"tail_grad_norm_min", std::isfinite(tail_min) ? tail_min : 0.0},
                   {"p_nondecreasing", b2d(p_nondecreasing(r))}};
    out.arms.push_back(std::move(arm));
  }
  return out;
}

ExperimentResult run_trajectories(const RunConfig& c) {
  ExperimentResult out;
  bool all_inside = true;
  for (const auto& tc : trajectory_cases()) {
    const Problem problem = trajectory_problem(tc, *c.sigma);
    SolverOptions opt = solver_options(c, StepSchedule::Kind::Normalized);
    opt.penalty.p = c.p0.value_or(tc.p0);
    bool inside = problem.domain.contains(project(problem.domain, tc.start));
    opt.observer = [&](const SolverState& s) { inside = inside && problem.domain.contains(s.X); };
    ArmResult arm{std::string(1, tc.name), run(problem, opt), {}};
    all_inside = all_inside && inside;
    arm.metrics = {{"final_penalty", bench::test_penalty(tc.name, arm.report.final_x)},
                   {"final_f", arm.report.final_f},
                   {"final_p", arm.report.final_p},
                   {"penalty_updates", double(arm.report.penalty_updates)},
                   {"all_iterates_in_box", b2d(inside)},
                   {"p_nondecreasing", b2d(p_nondecreasing(arm.report))}};
    out.arms.push_back(std::move(arm));
  }
  out.metrics = {{"all_iterates_in_box", b2d(all_inside)}};
  return out;
}

ExperimentResult run_rosenbrock(const RunConfig& c) {
  ExperimentResult out;
  for (Index n : rosenbrock_dimensions(*c.long_run)) {
    const Problem problem = rosenbrock_problem(n, *c.sigma);
    SolverOptions opt = solver_options(c, StepSchedule::Kind::InverseK);
    const double f0 = bench::rosenbrock(problem.start);
    double best = f0;
    bool monotone = true;
    std::string series = "k,running_min\n0," + real(best) + "\n";
    opt.observer = [&](const SolverState& s) {
      const double f = bench::rosenbrock(s.X);
      const double next = std::min(best, f);
      monotone = monotone && next <= best;
      best = next;
      const long k = s.k - 1;
      if (k % opt.record_every == 0 || k == opt.iterations)
        series += std::to_string(k) + "," + real(best) + "\n";
    };
    ArmResult arm{"n" + std::to_string(n), run(problem, opt), {}};
    const Vector& x = arm.report.final_x;
    arm.metrics = {{"f0", f0},
                   {"running_min", best},
                   {"running_min_ratio", best / f0},
                   {"running_min_monotone", b2d(monotone)},
                   {"final_sphere_residual", std::abs(x.squaredNorm() - double(n))},
                   {"final_f", arm.report.final_f},
                   {"final_p", arm.report.final_p},
                   {"penalty_updates", double(arm.report.penalty_updates)}};
    out.files.push_back({(n == 4 && !*c.long_run ? "" : arm.name + "/") + "running_min.csv",
                         std::move(series)});
    out.arms.push_back(std::move(arm));
  }
  return out;
}

ExperimentResult run_regression(const RunConfig& c) {
  ExperimentResult out;
  for (auto [n, p] : regression_rows(*c.long_run)) {
    const auto data = bench::make_regression(*c.seed, n, p);
    const Problem problem = regression_problem(data, *c.sigma);
    const SolverOptions opt = solver_options(c, StepSchedule::Kind::InverseK);
    ArmResult arm{std::to_string(n) + "x" + std::to_string(p), run(problem, opt), {}};
    const Vector& w = arm.report.final_x;
    const bool ok = !arm.report.diverged && all_finite(w);
    arm.metrics = {{"samples", double(n)},
                   {"features", double(p)},
                   {"support_recovery", ok ? bench::support_recovery(w, data.w_star) : 0.0},
                   {"test_mse", ok ? bench::test_mse(w, data) : kInfinity},
                   {"final_objective", arm.report.final_f},
                   {"final_m", arm.report.final_m},
                   {"final_p", arm.report.final_p},
                   {"penalty_updates", double(arm.report.penalty_updates)}};
    out.arms.push_back(std::move(arm));
  }
  return out;
}

}  // namespace

bool ExperimentResult::diverged() const {
  return std::any_of(arms.begin(), arms.end(),
                     [](const ArmResult& a) { return a.report.diverged; });
}

const ArmResult& ExperimentResult::arm(const std::string& name) const {
  for (const auto& a : arms)
    if (a.name == name) return a;
  throw PreconditionError("no arm named '" + name + "'");
}

const std::vector<TrajectoryCase>& trajectory_cases() {
  static const std::vector<TrajectoryCase> cases = {
      {'a', vec({1.5, -1.0}), vec({-2.0, -2.0}), vec({2.0, 2.0}), 0.1},
      {'b', vec({-1.0, 0.0}), vec({-2.0, -2.0}), vec({2.0, 2.0}), 1.0},
      {'c', vec({-3.0, 3.0}), vec({-5.0, -1.0}), vec({5.0, 4.0}), 150.0},
      {'d', vec({-1.0, -1.0}), vec({-3.0, -3.0}), vec({3.0, 3.0}), 0.1},
  };
  return cases;
}

Objective noisy_objective(std::function<double(const Vector&)> value,
                          std::function<Vector(const Vector&)> gradient, double sigma) {
  Objective obj;
  obj.value = std::move(value);
  obj.gradient = std::move(gradient);
  if (sigma > 0.0) {
    obj.sample = [grad = obj.gradient, sigma](const Vector& x, std::mt19937_64& rng) {
      std::normal_distribution<double> normal(0.0, sigma);
      Vector g = grad(x);
      for (Index i = 0; i < g.size(); ++i) g[i] += normal(rng);
      return GradientSample{g, -1};
    };
  }
  return obj;
}

Problem penalty_demo_problem() {
  Problem p;
  p.name = "penalty-demo-1d";
  p.objective = noisy_objective([](const Vector& x) { return x[0] * x[0]; },
                                [](const Vector& x) { return Vector(2.0 * x); }, 0.0);
  p.constraints = ConstraintSystem(1, {}, {linear(vec({-1.0}), 1.0)});
  p.start = vec({0.2});
  return p;
}

Problem beta_vs_l1_problem(PenaltyFormulation formulation) {
  Problem p;
  p.name = formulation == PenaltyFormulation::L1 ? "l1" : "beta";
  p.objective = noisy_objective([](const Vector& x) { return x[0] + x[1]; },
                                [](const Vector&) { return vec({1.0, 1.0}); }, 0.0);
  p.constraints =
      ConstraintSystem(2, {}, {linear(vec({1.0, 0.0})), linear(vec({-1.0, 1.0}))});
  p.domain = FeasibleDomain::box(vec({-1.0, -0.5}), vec({1.0, 1.5}));
  p.start = vec({0.05, 1.40});
  p.formulation = formulation;
  return p;
}

Problem trajectory_problem(const TrajectoryCase& c, double sigma) {
  Problem p;
  p.name = std::string(1, c.name);
  const char name = c.name;
  p.objective = noisy_objective([name](const Vector& x) { return bench::test_function(name, x); },
                                [name](const Vector& x) { return bench::test_gradient(name, x); },
                                sigma);
  p.constraints = bench::test_constraints(name);
  p.domain = FeasibleDomain::box(c.lower, c.upper);
  p.start = c.start;
  return p;
}

Problem rosenbrock_problem(Index n, double sigma) {
  Problem p;
  p.name = "n" + std::to_string(n);
  p.objective.value = [](const Vector& x) { return bench::rosenbrock(x); };
  p.objective.sample = [sigma](const Vector& x, std::mt19937_64& rng) {
    GradientSample s = bench::rosenbrock_sample(x, rng);
    if (sigma > 0.0) {
      std::normal_distribution<double> normal(0.0, sigma);
      for (Index i = 0; i < s.vector.size(); ++i) s.vector[i] += normal(rng);
    }
    return s;
  };
  p.constraints = bench::sphere_constraint(n);
  p.domain = FeasibleDomain::ball(Vector::Zero(n), 2.0 * std::sqrt(double(n)));
  p.start.resize(n);
  for (Index i = 0; i < n; ++i) p.start[i] = i % 2 == 0 ? -1.2 : 1.0;
  return p;
}

Problem regression_problem(const bench::RegressionDataset& data, double sigma) {
  auto shared = std::make_shared<const bench::RegressionDataset>(data);
  Problem p;
  p.name = std::to_string(data.n_samples) + "x" + std::to_string(data.p_features);
  p.objective = noisy_objective(
      [shared](const Vector& w) { return bench::regression_value(w, *shared); },
      [shared](const Vector& w) { return bench::regression_gradient(w, *shared); }, sigma);
  p.constraints = bench::binary_constraints(data.p_features);
  p.start = Vector::Zero(data.p_features);
  return p;
}

std::vector<std::pair<Index, Index>> regression_rows(bool long_run) {
  std::vector<std::pair<Index, Index>> rows = {{80, 20},  {80, 50},  {160, 20},
                                               {400, 50}, {400, 100}, {640, 50}};
  if (long_run) rows.insert(rows.end(), {{800, 200}, {800, 500}, {1200, 200}});
  return rows;
}

std::vector<Index> rosenbrock_dimensions(bool long_run) {
  if (long_run) return {4, 8, 16, 32};
  return {4};
}

SolverOptions solver_options(const RunConfig& c, StepSchedule::Kind schedule) {
  SolverOptions opt;
  opt.iterations = c.iterations.value_or(1000);
  opt.schedule.kind = schedule;
  opt.schedule.base = c.gamma0.value_or(0.1);
  opt.penalty.beta = c.beta.value_or(2.0);
  opt.penalty.p = c.p0.value_or(1.0);
  opt.penalty.kappa = c.kappa.value_or(2.0);
  opt.penalty.p_max = c.p_max.value_or(1e12);
  opt.seed = c.seed.value_or(0);
  opt.record_every = c.record_every.value_or(1);
  opt.variant = c.dual_averaging.value_or(false) ? Variant::DualAveraging : Variant::Plain;
  return opt;
}

ExperimentResult run_experiment(const RunConfig& config) {
  validate(config);
  RunConfig c = merge(default_config(config.experiment), config);
  ExperimentResult out;
  if (c.experiment == "penalty-demo-1d") out = run_penalty_demo(c);
  else if (c.experiment == "beta-vs-l1") out = run_beta_vs_l1(c);
  else if (c.experiment == "trajectories") out = run_trajectories(c);
  else if (c.experiment == "rosenbrock") out = run_rosenbrock(c);
  else if (c.experiment == "regression") out = run_regression(c);
  else throw ConfigError("experiment", "cannot run '" + c.experiment + "' directly");
  out.experiment = c.experiment;
  out.config = c;
  return out;
}

}  // namespace smdpen
