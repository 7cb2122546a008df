#include "smdpen/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace smdpen {

ConstraintSystem::ConstraintSystem(Index dim, std::vector<ScalarFunction> equalities,
                                   std::vector<ScalarFunction> inequalities)
    : dim_(dim), eq_(std::move(equalities)), ineq_(std::move(inequalities)) {
  if (dim_ < 1) throw PreconditionError("constraint system dimension must be >= 1");
  for (const auto* list : {&eq_, &ineq_}) {
    for (const auto& fn : *list) {
      if (!fn.value || !fn.gradient)
        throw PreconditionError("constraint requires both a value and a gradient");
    }
  }
}

void ConstraintSystem::check_dim(const Vector& x) const {
  if (x.size() != dim_) {
    std::ostringstream os;
    os << "point has dimension " << x.size() << ", constraint system expects " << dim_;
    throw PreconditionError(os.str());
  }
}

void ConstraintSystem::values(const Vector& x, Vector& h, Vector& g) const {
  check_dim(x);
  h.resize(static_cast<Index>(eq_.size()));
  g.resize(static_cast<Index>(ineq_.size()));
  for (std::size_t i = 0; i < eq_.size(); ++i) {
    const double v = eq_[i].value(x);
    if (!std::isfinite(v))
      throw EvaluationError("equality constraint " + std::to_string(i) + " is not finite", i);
    h[static_cast<Index>(i)] = v;
  }
  for (std::size_t j = 0; j < ineq_.size(); ++j) {
    const double v = ineq_[j].value(x);
    if (!std::isfinite(v))
      throw EvaluationError("inequality constraint " + std::to_string(j) + " is not finite",
                            eq_.size() + j);
    g[static_cast<Index>(j)] = v;
  }
}

ConstraintEvaluation ConstraintSystem::evaluate(const Vector& x) const {
  ConstraintEvaluation ev;
  ev.x = x;
  values(x, ev.h, ev.g);
  ev.jac_h.resize(static_cast<Index>(eq_.size()), dim_);
  ev.jac_g.resize(static_cast<Index>(ineq_.size()), dim_);
  for (std::size_t i = 0; i < eq_.size(); ++i) {
    Vector grad = eq_[i].gradient(x);
    if (grad.size() != dim_ || !grad.allFinite())
      throw EvaluationError("gradient of equality constraint " + std::to_string(i) + " is invalid",
                            i);
    ev.jac_h.row(static_cast<Index>(i)) = grad.transpose();
  }
  for (std::size_t j = 0; j < ineq_.size(); ++j) {
    Vector grad = ineq_[j].gradient(x);
    if (grad.size() != dim_ || !grad.allFinite())
      throw EvaluationError(
          "gradient of inequality constraint " + std::to_string(j) + " is invalid",
          eq_.size() + j);
    ev.jac_g.row(static_cast<Index>(j)) = grad.transpose();
  }
  return ev;
}

FeasibleDomain FeasibleDomain::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.size() < 1)
    throw PreconditionError("box bounds must have equal, positive dimension");
  if ((lower.array() > upper.array()).any())
    throw PreconditionError("box requires lower <= upper componentwise");
  return FeasibleDomain(Box{std::move(lower), std::move(upper)});
}

FeasibleDomain FeasibleDomain::ball(Vector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw PreconditionError("ball radius must be positive and finite");
  if (center.size() < 1) throw PreconditionError("ball center must have positive dimension");
  return FeasibleDomain(Ball{std::move(center), radius});
}

bool FeasibleDomain::contains(const Vector& x, double slack) const {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, AllSpace>) {
          return true;
        } else if constexpr (std::is_same_v<T, Box>) {
          if (x.size() != d.lower.size()) return false;
          return ((x.array() >= d.lower.array() - slack) &&
                  (x.array() <= d.upper.array() + slack))
              .all();
        } else {
          if (x.size() != d.center.size()) return false;
          return (x - d.center).norm() <= d.radius + slack;
        }
      },
      v_);
}

double beta_norm(const Vector& v, double beta) {
  if (!(beta >= 1.0)) throw PreconditionError("norm exponent must be in [1, inf]");
  if (v.size() == 0) return 0.0;
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::isinf(beta)) return scale;
  if (beta == 1.0) return v.cwiseAbs().sum();
  double sum = 0.0;
  for (Index i = 0; i < v.size(); ++i) sum += std::pow(std::abs(v[i]) / scale, beta);
  return scale * std::pow(sum, 1.0 / beta);
}

Vector violation_vector(const Vector& h, const Vector& g) {
  Vector out(g.size() + h.size());
  out << g.cwiseMax(0.0), h;
  return out;
}

namespace {

ViolationSnapshot make_snapshot(Vector h, Vector g, double beta) {
  ViolationSnapshot s;
  s.g_plus = g.cwiseMax(0.0);
  s.h_values = std::move(h);
  s.g_values = std::move(g);
  s.beta = beta;
  const Vector v = violation_vector(s.h_values, s.g_values);
  s.m_beta = beta_norm(v, beta);
  s.m_inf = beta_norm(v, kInfinity);
  return s;
}

}  // namespace

ViolationSnapshot residuals(const ConstraintSystem& cs, const Vector& x, double beta) {
  Vector h, g;
  cs.values(x, h, g);
  return make_snapshot(std::move(h), std::move(g), beta);
}

ViolationSnapshot residuals(const ConstraintEvaluation& ev, double beta) {
  return make_snapshot(ev.h, ev.g, beta);
}

double violation(const ConstraintSystem& cs, const Vector& x, double beta) {
  Vector h, g;
  cs.values(x, h, g);
  return beta_norm(violation_vector(h, g), beta);
}

Vector project(const FeasibleDomain& domain, const Vector& x) {
  return std::visit(
      [&](const auto& d) -> Vector {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, AllSpace>) {
          return x;
        } else if constexpr (std::is_same_v<T, Box>) {
          if (x.size() != d.lower.size()) throw PreconditionError("box dimension mismatch");
          return x.cwiseMax(d.lower).cwiseMin(d.upper);
        } else {
          if (x.size() != d.center.size()) throw PreconditionError("ball dimension mismatch");
          const Vector offset = x - d.center;
          const double dist = offset.norm();
          if (dist <= d.radius) return x;
          // Rounding in c + s * (x - c) can land a hair outside the sphere;
          // shrink until the result is contained so a second projection is
          // the identity.
          double factor = d.radius / dist;
          Vector y = d.center + factor * offset;
          for (int iter = 0; iter < 64 && (y - d.center).norm() > d.radius; ++iter) {
            factor *= 1.0 - 4.0 * std::numeric_limits<double>::epsilon();
            y = d.center + factor * offset;
          }
          return y;
        }
      },
      domain.variant());
}

ActiveSets active_index_sets(const ConstraintEvaluation& ev, double tol) {
  ActiveSets out;
  const double m_inf = beta_norm(violation_vector(ev.h, ev.g), kInfinity);
  for (Index j = 0; j < ev.g.size(); ++j)
    if (ev.g[j] > tol) out.violated.push_back(static_cast<std::size_t>(j));
  if (m_inf <= kFeasibilityTolerance) return out;
  for (Index i = 0; i < ev.h.size(); ++i)
    if (std::abs(ev.h[i]) >= m_inf - tol) out.equalities.push_back(static_cast<std::size_t>(i));
  for (Index j = 0; j < ev.g.size(); ++j)
    if (std::max(ev.g[j], 0.0) >= m_inf - tol)
      out.inequalities.push_back(static_cast<std::size_t>(j));
  return out;
}

ActiveSets active_index_sets(const ConstraintSystem& cs, const Vector& x, double tol) {
  ConstraintEvaluation ev;
  cs.values(x, ev.h, ev.g);
  return active_index_sets(ev, tol);
}

}  // namespace smdpen
