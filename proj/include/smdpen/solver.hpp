#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "smdpen/mirror.hpp"
#include "smdpen/penalty.hpp"

namespace smdpen {

/// Step-size policy γ_k.
struct StepSchedule {
  enum class Kind {
    InverseK,    // γ_k = base / k
    Normalized,  // γ_k = (base / k) / max(‖F_k‖, floor)
    Constant,    // γ_k = base, diagnostics only
  };

  Kind kind = Kind::InverseK;
  double base = 0.1;
  double floor = 1e-12;

  static StepSchedule inverse_k(double gamma0) { return {Kind::InverseK, gamma0, 1e-12}; }
  static StepSchedule normalized(double alpha0, double floor = 1e-12) {
    return {Kind::Normalized, alpha0, floor};
  }
  static StepSchedule constant(double gamma) { return {Kind::Constant, gamma, 1e-12}; }
};

double step_size(const StepSchedule& schedule, long k, double grad_norm);

/// One draw of the (sub)gradient oracle.
struct GradientSample {
  Vector vector;
  long meta = -1;  // e.g. which Rosenbrock term was drawn
};

struct SolverState {
  long k = 1;
  Vector Y;  // dual point
  Vector X;  // primal point, mirror(Y)
  double p = 1.0;

  // Dual-averaging bookkeeping; unused by plain SMD.
  Vector origin;
  Vector accumulated;
};

/// Weighted dual average: Y_k = origin + s_k Σ_{l<=k} w_l (-G_l) with
/// s_k = scale * k^(-scale_decay). StepSize weights with unit scale reproduce
/// plain SMD exactly.
struct DualAveraging {
  enum class Weights { StepSize, Unit };
  Weights weights = Weights::StepSize;
  double scale = 1.0;
  double scale_decay = 0.0;
};

struct PenaltyUpdateResult {
  double p = 0.0;
  int multiplications = 0;
  bool capped = false;  // stopped by p_max or the per-step cap with the test still positive
};

/// The penalty-parameter test: while DP(x; -∇f - p g) + M(x)/p > 0, p <- κ p.
/// g is the β-norm penalty gradient (BetaNorm) or the l1 subgradient (L1).
PenaltyUpdateResult penalty_update(const Vector& x, double p_in, const Vector& grad_f,
                                   const PenaltyConfig& config, const ConstraintSystem& cs,
                                   PenaltyFormulation formulation = PenaltyFormulation::BetaNorm);
PenaltyUpdateResult penalty_update(const ConstraintEvaluation& ev, double p_in,
                                   const Vector& grad_f, const PenaltyConfig& config,
                                   PenaltyFormulation formulation = PenaltyFormulation::BetaNorm);

/// Y' = Y - γ_k G, X' = mirror(Y'), k' = k + 1. Throws DivergenceError when
/// Y' is non-finite or ‖Y'‖ > 1e100.
SolverState smd_step(const SolverState& state, const GradientSample& sample,
                     const StepSchedule& schedule, const Regularizer& reg,
                     const FeasibleDomain& domain);

SolverState dual_averaging_step(const SolverState& state, const GradientSample& sample,
                                const StepSchedule& schedule, const Regularizer& reg,
                                const FeasibleDomain& domain, const DualAveraging& averaging);

/// Objective oracle. `gradient` is the exact gradient (may be empty for purely
/// stochastic objectives); `sample` draws a stochastic gradient (may be empty,
/// in which case the exact gradient is used).
struct Objective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<GradientSample(const Vector&, std::mt19937_64&)> sample;
};

struct Problem {
  std::string name;
  Objective objective;
  ConstraintSystem constraints;
  FeasibleDomain domain = FeasibleDomain::all_space();
  Vector start;
  PenaltyFormulation formulation = PenaltyFormulation::BetaNorm;
  Regularizer regularizer = Regularizer::euclidean();
};

enum class Variant { Plain, DualAveraging };

struct SolverOptions {
  long iterations = 1000;
  StepSchedule schedule;
  PenaltyConfig penalty;
  std::uint64_t seed = 0;
  Variant variant = Variant::Plain;
  DualAveraging averaging;
  long record_every = 1;
  /// Called after every iteration with the new state; optional.
  std::function<void(const SolverState&)> observer;
};

struct TraceRow {
  long k = 0;
  Vector x;
  double f = 0.0;
  double m = 0.0;
  double penalty = 0.0;
  double p = 0.0;
  double gamma = 0.0;
  double grad_norm = 0.0;
};

struct PenaltyEvent {
  long k = 0;
  double p_before = 0.0;
  double p_after = 0.0;
  int multiplications = 0;
  bool capped = false;
};

struct RunReport {
  std::string name;
  std::vector<TraceRow> rows;
  std::vector<PenaltyEvent> events;  // every iteration where p changed or the cap hit

  Vector final_x;
  double final_f = 0.0;
  double final_m = 0.0;
  double final_p = 0.0;
  int penalty_updates = 0;  // iterations with at least one multiplication
  int capped_updates = 0;
  long iterations_run = 0;
  std::uint64_t seed = 0;
  bool penalty_test_sampled = false;  // test used the sampled gradient
  bool diverged = false;
  std::string divergence_message;
  double wall_seconds = 0.0;
};

/// Independent RNG stream for iteration k; a run prefix replays bit for bit.
std::mt19937_64 iteration_stream(std::uint64_t seed, long k);

/// Runs the adaptive-penalty SMD loop: X_k = mirror(Y_k), evaluate gradients,
/// update p, then take the dual step with the new p. Divergence is reported
/// in the returned RunReport instead of thrown.
RunReport run(const Problem& problem, const SolverOptions& options);

}  // namespace smdpen
