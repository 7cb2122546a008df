#include "smdpen/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

namespace smdpen {

namespace {

constexpr double kDivergenceBound = 1e100;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_dual(const Vector& y, long k, double grad_norm) {
  if (!all_finite(y))
    throw DivergenceError("dual iterate became non-finite at iteration " + std::to_string(k), k,
                          grad_norm);
  if (y.norm() > kDivergenceBound)
    throw DivergenceError("dual iterate norm exceeded 1e100 at iteration " + std::to_string(k),
                          k, grad_norm);
}

Vector constraint_direction(const ConstraintEvaluation& ev, double beta,
                            PenaltyFormulation formulation) {
  if (formulation == PenaltyFormulation::L1) return l1_subgradient(ev);
  return penalty_gradient(ev, Vector::Zero(ev.x.size()), beta).constraint_part;
}

double violation_of(const ConstraintEvaluation& ev, double beta, PenaltyFormulation formulation) {
  return beta_norm(violation_vector(ev.h, ev.g),
                   formulation == PenaltyFormulation::L1 ? 1.0 : beta);
}

}  // namespace

double step_size(const StepSchedule& schedule, long k, double grad_norm) {
  if (k < 1) throw PreconditionError("step_size requires k >= 1");
  const double kk = static_cast<double>(k);
  switch (schedule.kind) {
    case StepSchedule::Kind::InverseK:
      return schedule.base / kk;
    case StepSchedule::Kind::Normalized:
      return (schedule.base / kk) / std::max(grad_norm, schedule.floor);
    case StepSchedule::Kind::Constant:
      return schedule.base;
  }
  return schedule.base;
}

PenaltyUpdateResult penalty_update(const ConstraintEvaluation& ev, double p_in,
                                   const Vector& grad_f, const PenaltyConfig& config,
                                   PenaltyFormulation formulation) {
  PenaltyUpdateResult out{p_in, 0, false};
  const double test_beta = formulation == PenaltyFormulation::L1 ? 1.0 : config.beta;
  if (formulation == PenaltyFormulation::BetaNorm && !(config.beta > 1.0 && std::isfinite(config.beta)))
    throw UnsupportedFormulation("penalty update requires 1 < beta < inf");

  const double m = violation_of(ev, config.beta, formulation);
  if (m <= kFeasibilityTolerance) return out;

  const Vector g = constraint_direction(ev, config.beta, formulation);
  double p = p_in;
  while (true) {
    const Vector d = -grad_f - p * g;
    const double test = dir_derivative(grad_f, ev, d, p, test_beta) + m / p;
    if (!(test > 0.0)) break;
    if (out.multiplications >= config.max_multiplications_per_step || p >= config.p_max) {
      out.capped = true;
      break;
    }
    p = std::min(config.kappa * p, config.p_max);
    ++out.multiplications;
  }
  out.p = p;
  return out;
}

PenaltyUpdateResult penalty_update(const Vector& x, double p_in, const Vector& grad_f,
                                   const PenaltyConfig& config, const ConstraintSystem& cs,
                                   PenaltyFormulation formulation) {
  return penalty_update(cs.evaluate(x), p_in, grad_f, config, formulation);
}

SolverState smd_step(const SolverState& state, const GradientSample& sample,
                     const StepSchedule& schedule, const Regularizer& reg,
                     const FeasibleDomain& domain) {
  const double grad_norm = sample.vector.norm();
  const double gamma = step_size(schedule, state.k, grad_norm);
  SolverState next = state;
  next.Y = state.Y - gamma * sample.vector;
  check_dual(next.Y, state.k, grad_norm);
  next.X = mirror(next.Y, reg, domain);
  assert(next.X == mirror(next.Y, reg, domain));
  next.k = state.k + 1;
  return next;
}

SolverState dual_averaging_step(const SolverState& state, const GradientSample& sample,
                                const StepSchedule& schedule, const Regularizer& reg,
                                const FeasibleDomain& domain, const DualAveraging& averaging) {
  const double grad_norm = sample.vector.norm();
  const double weight = averaging.weights == DualAveraging::Weights::StepSize
                            ? step_size(schedule, state.k, grad_norm)
                            : 1.0;
  SolverState next = state;
  if (next.origin.size() == 0) next.origin = state.Y;
  if (next.accumulated.size() == 0) next.accumulated = Vector::Zero(state.Y.size());
  next.accumulated -= weight * sample.vector;

  const double scale =
      averaging.scale_decay == 0.0
          ? averaging.scale
          : averaging.scale * std::pow(static_cast<double>(state.k), -averaging.scale_decay);
  next.Y = next.origin + scale * next.accumulated;
  check_dual(next.Y, state.k, grad_norm);
  next.X = mirror(next.Y, reg, domain);
  assert(next.X == mirror(next.Y, reg, domain));
  next.k = state.k + 1;
  return next;
}

std::mt19937_64 iteration_stream(std::uint64_t seed, long k) {
  const std::uint64_t a = splitmix64(seed);
  return std::mt19937_64(splitmix64(a ^ splitmix64(static_cast<std::uint64_t>(k))));
}

RunReport run(const Problem& problem, const SolverOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  options.penalty.validate();
  if (options.iterations < 0) throw PreconditionError("iterations must be non-negative");
  if (options.record_every < 1) throw PreconditionError("record_every must be >= 1");
  if (!problem.objective.value) throw PreconditionError("objective value oracle missing");
  if (!problem.objective.gradient && !problem.objective.sample)
    throw PreconditionError("objective needs a gradient or a sampler");
  if (problem.start.size() < 1 || !all_finite(problem.start))
    throw PreconditionError("start point must be finite and non-empty");

  const PenaltyConfig& cfg = options.penalty;
  const double row_beta = problem.formulation == PenaltyFormulation::L1 ? 1.0 : cfg.beta;

  RunReport report;
  report.name = problem.name;
  report.seed = options.seed;
  report.penalty_test_sampled = !problem.objective.gradient;

  SolverState state;
  state.k = 1;
  state.Y = problem.start;
  state.X = mirror(state.Y, problem.regularizer, problem.domain);
  state.p = cfg.p;
  if (options.variant == Variant::DualAveraging) {
    state.origin = state.Y;
    state.accumulated = Vector::Zero(state.Y.size());
  }

  auto make_row = [&](long k, const Vector& x, double p, double gamma, double grad_norm) {
    TraceRow row;
    row.k = k;
    row.x = x;
    row.f = problem.objective.value(x);
    row.m = problem.constraints.empty() ? 0.0 : violation(problem.constraints, x, row_beta);
    row.p = p;
    row.penalty = row.f + p * row.m;
    row.gamma = gamma;
    row.grad_norm = grad_norm;
    return row;
  };

  report.rows.push_back(make_row(0, state.X, state.p, 0.0, 0.0));

  long k = 1;
  double last_gamma = 0.0;
  double last_norm = 0.0;
  try {
    for (; k <= options.iterations; ++k) {
      const Vector& x = state.X;
      auto rng = iteration_stream(options.seed, k);

      GradientSample sample;
      Vector grad_exact;
      if (problem.objective.gradient) grad_exact = problem.objective.gradient(x);
      if (problem.objective.sample)
        sample = problem.objective.sample(x, rng);
      else
        sample.vector = grad_exact;
      const Vector& grad_test = problem.objective.gradient ? grad_exact : sample.vector;

      Vector constraint_part = Vector::Zero(x.size());
      if (!problem.constraints.empty()) {
        const ConstraintEvaluation ev = problem.constraints.evaluate(x);
        const double p_before = state.p;
        const PenaltyUpdateResult upd =
            penalty_update(ev, state.p, grad_test, cfg, problem.formulation);
        state.p = upd.p;
        if (upd.multiplications > 0) ++report.penalty_updates;
        if (upd.capped) ++report.capped_updates;
        if (upd.multiplications > 0 || upd.capped)
          report.events.push_back({k, p_before, upd.p, upd.multiplications, upd.capped});
        if (violation_of(ev, cfg.beta, problem.formulation) > kFeasibilityTolerance)
          constraint_part = constraint_direction(ev, cfg.beta, problem.formulation);
      }

      GradientSample total{sample.vector + state.p * constraint_part, sample.meta};
      if (!all_finite(total.vector))
        throw DivergenceError("non-finite gradient at iteration " + std::to_string(k), k,
                              total.vector.norm());
      last_norm = total.vector.norm();
      last_gamma = step_size(options.schedule, k, last_norm);

      state = options.variant == Variant::DualAveraging
                  ? dual_averaging_step(state, total, options.schedule, problem.regularizer,
                                        problem.domain, options.averaging)
                  : smd_step(state, total, options.schedule, problem.regularizer,
                             problem.domain);

      if (options.observer) options.observer(state);
      if (k % options.record_every == 0 || k == options.iterations)
        report.rows.push_back(make_row(k, state.X, state.p, last_gamma, last_norm));
    }
  } catch (const DivergenceError& e) {
    report.diverged = true;
    report.divergence_message = e.what();
  } catch (const EvaluationError& e) {
    report.diverged = true;
    report.divergence_message = e.what();
  }

  report.iterations_run = report.diverged ? k - 1 : options.iterations;
  report.final_x = state.X;
  if (report.diverged && report.rows.back().k != report.iterations_run && all_finite(state.X))
    report.rows.push_back(make_row(report.iterations_run, state.X, state.p, last_gamma, last_norm));
  report.final_f = problem.objective.value(state.X);
  report.final_m =
      problem.constraints.empty() ? 0.0 : violation(problem.constraints, state.X, row_beta);
  report.final_p = state.p;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace smdpen
