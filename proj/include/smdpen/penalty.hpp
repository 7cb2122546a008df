#pragma once

#include "smdpen/problem.hpp"

namespace smdpen {

/// Which violation measure the penalty uses.
enum class PenaltyFormulation {
  BetaNorm,  // M = ‖(g_+, h)‖_β with 1 < β < ∞, smooth outside the feasible set
  L1,        // M = ‖(g_+, h)‖_1 with a fixed subgradient selection
};

struct PenaltyConfig {
  double beta = 2.0;
  double p = 1.0;
  double kappa = 2.0;
  double p_max = 1e12;
  int max_multiplications_per_step = 60;

  /// Throws PreconditionError unless beta > 1, p > 0, kappa > 1 and p <= p_max.
  void validate() const;
};

/// ∇P_p(x) split into ∇f(x) and the constraint term g_β(x).
struct PenaltyGradient {
  Vector objective_part;
  Vector constraint_part;
  Vector sigma;  // coefficients over E
  Vector eta;    // coefficients over I

  Vector total(double p) const { return objective_part + p * constraint_part; }
};

/// f + p * M.
double penalty_value(double f_value, const ViolationSnapshot& snapshot, double p);

PenaltyGradient penalty_gradient(const ConstraintSystem& cs, const Vector& grad_f,
                                 const Vector& x, double beta);
PenaltyGradient penalty_gradient(const ConstraintEvaluation& ev, const Vector& grad_f,
                                 double beta);

/// Directional operator of equality i. |h_i| <= tol takes the |<∇h_i, d>| branch.
double xi(const ConstraintSystem& cs, std::size_t i, const Vector& x, const Vector& d,
          double tol = kActiveTolerance);
/// Directional operator of inequality j. |g_j| <= tol takes the max(0, .) branch.
double zeta(const ConstraintSystem& cs, std::size_t j, const Vector& x, const Vector& d,
            double tol = kActiveTolerance);

/// Penalty directional-derivative component Δ^β(x, d) for β = 1, β in (1, ∞)
/// and β = ∞. Requires x strictly infeasible.
double delta(const ConstraintSystem& cs, const Vector& x, const Vector& d, double beta);
double delta(const ConstraintEvaluation& ev, const Vector& d, double beta);

/// DP^β_p(x; d) = <∇f(x), d> + p Δ^β(x, d).
double dir_derivative(const Vector& grad_f, const ConstraintSystem& cs, const Vector& x,
                      const Vector& d, double p, double beta);
double dir_derivative(const Vector& grad_f, const ConstraintEvaluation& ev, const Vector& d,
                      double p, double beta);

/// Σ_E sgn(h_i) ∇h_i + Σ_{g_j > 0} ∇g_j with sgn(0) = 0.
Vector l1_subgradient(const ConstraintSystem& cs, const Vector& x);
Vector l1_subgradient(const ConstraintEvaluation& ev);

}  // namespace smdpen
