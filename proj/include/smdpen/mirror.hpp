#pragma once

#include "smdpen/problem.hpp"

namespace smdpen {

/// Strongly convex regularizer R defining the mirror map. Only the Euclidean
/// regularizer R(x) = ½‖x‖² (K = 1) is provided; with it the mirror map is
/// the Euclidean projection onto the domain.
class Regularizer {
 public:
  enum class Kind { Euclidean };

  static Regularizer euclidean() { return Regularizer(Kind::Euclidean); }

  Kind kind() const noexcept { return kind_; }
  double strong_convexity() const noexcept { return 1.0; }
  double value(const Vector& x) const { return 0.5 * x.squaredNorm(); }

 private:
  explicit Regularizer(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// argmax over the domain of <y, x> - R(x).
Vector mirror(const Vector& y, const Regularizer& reg, const FeasibleDomain& domain);

/// Convex conjugate R*(y) restricted to the domain.
double conjugate(const Vector& y, const Regularizer& reg, const FeasibleDomain& domain);

/// Fenchel coupling F(x, y) = R(x) + R*(y) - <y, x>. Throws PreconditionError
/// when x lies outside the domain.
double fenchel(const Vector& x, const Vector& y, const Regularizer& reg,
               const FeasibleDomain& domain);

}  // namespace smdpen
