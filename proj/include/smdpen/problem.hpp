#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "smdpen/common.hpp"

namespace smdpen {

/// A scalar function paired with its analytic gradient.
struct ScalarFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// Values and Jacobians of every constraint at one point. Rows of the
/// Jacobians are the constraint gradients.
struct ConstraintEvaluation {
  Vector x;
  Vector h;      // equalities, one entry per i in E
  Vector g;      // inequalities, one entry per j in I
  Matrix jac_h;  // |E| x n
  Matrix jac_g;  // |I| x n
};

/// Equality constraints h_i(x) = 0 and inequality constraints g_j(x) <= 0.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  ConstraintSystem(Index dim, std::vector<ScalarFunction> equalities,
                   std::vector<ScalarFunction> inequalities);

  Index dim() const noexcept { return dim_; }
  std::size_t num_equalities() const noexcept { return eq_.size(); }
  std::size_t num_inequalities() const noexcept { return ineq_.size(); }
  bool empty() const noexcept { return eq_.empty() && ineq_.empty(); }

  const ScalarFunction& equality(std::size_t i) const { return eq_.at(i); }
  const ScalarFunction& inequality(std::size_t j) const { return ineq_.at(j); }

  /// Constraint values only. Throws EvaluationError on non-finite values;
  /// inequalities are indexed after equalities in the error.
  void values(const Vector& x, Vector& h, Vector& g) const;

  /// Values and gradients.
  ConstraintEvaluation evaluate(const Vector& x) const;

 private:
  void check_dim(const Vector& x) const;

  Index dim_ = 0;
  std::vector<ScalarFunction> eq_;
  std::vector<ScalarFunction> ineq_;
};

struct AllSpace {};

struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

/// The simple set X onto which iterates are projected.
class FeasibleDomain {
 public:
  using Variant = std::variant<AllSpace, Box, Ball>;

  FeasibleDomain() = default;
  static FeasibleDomain all_space() { return FeasibleDomain(AllSpace{}); }
  static FeasibleDomain box(Vector lower, Vector upper);
  static FeasibleDomain ball(Vector center, double radius);

  const Variant& variant() const noexcept { return v_; }
  bool is_all_space() const noexcept { return std::holds_alternative<AllSpace>(v_); }

  /// Whether x lies in the set, up to an absolute slack.
  bool contains(const Vector& x, double slack = 0.0) const;

 private:
  explicit FeasibleDomain(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct ViolationSnapshot {
  Vector h_values;
  Vector g_values;
  Vector g_plus;
  double beta = 2.0;
  double m_beta = 0.0;
  double m_inf = 0.0;

  bool feasible() const noexcept { return m_beta <= kFeasibilityTolerance; }
};

struct ActiveSets {
  std::vector<std::size_t> equalities;    // |h_i| attains M_inf
  std::vector<std::size_t> inequalities;  // (g_j)_+ attains M_inf
  std::vector<std::size_t> violated;      // g_j > tol
};

/// ‖v‖_β for β in [1, ∞], computed with max-scaling.
double beta_norm(const Vector& v, double beta);

/// The vector (g_+, h) whose β-norm is the violation.
Vector violation_vector(const Vector& h, const Vector& g);

ViolationSnapshot residuals(const ConstraintSystem& cs, const Vector& x, double beta);
ViolationSnapshot residuals(const ConstraintEvaluation& ev, double beta);

double violation(const ConstraintSystem& cs, const Vector& x, double beta);

/// Euclidean projection. The result always satisfies domain.contains(result)
/// exactly, which makes the projection idempotent bit for bit.
Vector project(const FeasibleDomain& domain, const Vector& x);

ActiveSets active_index_sets(const ConstraintSystem& cs, const Vector& x,
                             double tol = kActiveTolerance);
ActiveSets active_index_sets(const ConstraintEvaluation& ev, double tol = kActiveTolerance);

}  // namespace smdpen
