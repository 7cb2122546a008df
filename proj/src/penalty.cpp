#include "smdpen/penalty.hpp"

#include <algorithm>
#include <cmath>

namespace smdpen {

void PenaltyConfig::validate() const {
  if (!(beta > 1.0)) throw PreconditionError("penalty requires beta > 1");
  if (!(p > 0.0)) throw PreconditionError("penalty parameter must be positive");
  if (!(kappa > 1.0)) throw PreconditionError("penalty multiplier kappa must exceed 1");
  if (!(p <= p_max)) throw PreconditionError("penalty parameter exceeds p_max");
  if (max_multiplications_per_step < 1)
    throw PreconditionError("max_multiplications_per_step must be positive");
}

double penalty_value(double f_value, const ViolationSnapshot& snapshot, double p) {
  return f_value + p * snapshot.m_beta;
}

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// (|r| / m)^(beta - 1), switching to log-space for tiny residuals.
double weight(double r, double m, double beta) {
  const double a = std::abs(r);
  if (a == 0.0) return 0.0;
  if (a < 1e-100) return std::exp((beta - 1.0) * (std::log(a) - std::log(m)));
  return std::pow(a / m, beta - 1.0);
}

double xi_value(double h, double inner, double tol) {
  if (std::abs(h) <= tol) return std::abs(inner);
  return h > 0.0 ? inner : -inner;
}

double zeta_value(double g, double inner, double tol) {
  if (std::abs(g) <= tol) return std::max(0.0, inner);
  return g > 0.0 ? inner : 0.0;
}

bool is_beta_smooth(double beta) { return beta > 1.0 && std::isfinite(beta); }

void require_infeasible(const ConstraintEvaluation& ev) {
  const double m_inf = beta_norm(violation_vector(ev.h, ev.g), kInfinity);
  if (!(m_inf > kFeasibilityTolerance))
    throw PreconditionError("directional penalty component requires an infeasible point");
}

}  // namespace

PenaltyGradient penalty_gradient(const ConstraintEvaluation& ev, const Vector& grad_f,
                                 double beta) {
  if (!is_beta_smooth(beta))
    throw UnsupportedFormulation("penalty gradient requires 1 < beta < inf; use delta()");
  if (grad_f.size() != ev.x.size()) throw PreconditionError("gradient dimension mismatch");

  PenaltyGradient out;
  out.objective_part = grad_f;
  out.sigma = Vector::Zero(ev.h.size());
  out.eta = Vector::Zero(ev.g.size());
  out.constraint_part = Vector::Zero(ev.x.size());

  const double m = beta_norm(violation_vector(ev.h, ev.g), beta);
  if (m <= kFeasibilityTolerance) return out;

  for (Index i = 0; i < ev.h.size(); ++i) out.sigma[i] = weight(ev.h[i], m, beta) * sgn(ev.h[i]);
  for (Index j = 0; j < ev.g.size(); ++j)
    out.eta[j] = ev.g[j] > 0.0 ? weight(ev.g[j], m, beta) : 0.0;

  if (ev.h.size() > 0) out.constraint_part.noalias() += ev.jac_h.transpose() * out.sigma;
  if (ev.g.size() > 0) out.constraint_part.noalias() += ev.jac_g.transpose() * out.eta;
  return out;
}

PenaltyGradient penalty_gradient(const ConstraintSystem& cs, const Vector& grad_f,
                                 const Vector& x, double beta) {
  if (!is_beta_smooth(beta))
    throw UnsupportedFormulation("penalty gradient requires 1 < beta < inf; use delta()");
  return penalty_gradient(cs.evaluate(x), grad_f, beta);
}

double xi(const ConstraintSystem& cs, std::size_t i, const Vector& x, const Vector& d,
          double tol) {
  const auto& fn = cs.equality(i);
  return xi_value(fn.value(x), fn.gradient(x).dot(d), tol);
}

double zeta(const ConstraintSystem& cs, std::size_t j, const Vector& x, const Vector& d,
            double tol) {
  const auto& fn = cs.inequality(j);
  return zeta_value(fn.value(x), fn.gradient(x).dot(d), tol);
}

double delta(const ConstraintEvaluation& ev, const Vector& d, double beta) {
  if (!(beta >= 1.0)) throw PreconditionError("delta requires beta in [1, inf]");
  if (d.size() != ev.x.size()) throw PreconditionError("direction dimension mismatch");
  require_infeasible(ev);

  const Vector inner_h = ev.h.size() > 0 ? Vector(ev.jac_h * d) : Vector();
  const Vector inner_g = ev.g.size() > 0 ? Vector(ev.jac_g * d) : Vector();

  if (beta == 1.0) {
    double sum = 0.0;
    for (Index i = 0; i < ev.h.size(); ++i) sum += xi_value(ev.h[i], inner_h[i], kActiveTolerance);
    for (Index j = 0; j < ev.g.size(); ++j)
      sum += zeta_value(ev.g[j], inner_g[j], kActiveTolerance);
    return sum;
  }

  if (std::isinf(beta)) {
    const ActiveSets active = active_index_sets(ev, kActiveTolerance);
    double best = -kInfinity;
    for (auto i : active.equalities) {
      const auto k = static_cast<Index>(i);
      best = std::max(best, xi_value(ev.h[k], inner_h[k], kActiveTolerance));
    }
    for (auto j : active.inequalities) {
      const auto k = static_cast<Index>(j);
      best = std::max(best, zeta_value(ev.g[k], inner_g[k], kActiveTolerance));
    }
    return best;
  }

  // The weights vanish continuously as a residual goes to zero, so the exact
  // sign branches are used here.
  const double m = beta_norm(violation_vector(ev.h, ev.g), beta);
  double sum = 0.0;
  for (Index i = 0; i < ev.h.size(); ++i)
    sum += weight(ev.h[i], m, beta) * xi_value(ev.h[i], inner_h[i], 0.0);
  for (Index j = 0; j < ev.g.size(); ++j)
    if (ev.g[j] > 0.0) sum += weight(ev.g[j], m, beta) * zeta_value(ev.g[j], inner_g[j], 0.0);
  return sum;
}

double delta(const ConstraintSystem& cs, const Vector& x, const Vector& d, double beta) {
  return delta(cs.evaluate(x), d, beta);
}

double dir_derivative(const Vector& grad_f, const ConstraintEvaluation& ev, const Vector& d,
                      double p, double beta) {
  return grad_f.dot(d) + p * delta(ev, d, beta);
}

double dir_derivative(const Vector& grad_f, const ConstraintSystem& cs, const Vector& x,
                      const Vector& d, double p, double beta) {
  return dir_derivative(grad_f, cs.evaluate(x), d, p, beta);
}

Vector l1_subgradient(const ConstraintEvaluation& ev) {
  Vector out = Vector::Zero(ev.x.size());
  for (Index i = 0; i < ev.h.size(); ++i)
    if (ev.h[i] != 0.0) out += sgn(ev.h[i]) * ev.jac_h.row(i).transpose();
  for (Index j = 0; j < ev.g.size(); ++j)
    if (ev.g[j] > 0.0) out += ev.jac_g.row(j).transpose();
  return out;
}

Vector l1_subgradient(const ConstraintSystem& cs, const Vector& x) {
  return l1_subgradient(cs.evaluate(x));
}

}  // namespace smdpen
