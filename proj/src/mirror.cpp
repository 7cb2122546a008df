#include "smdpen/mirror.hpp"

#include <algorithm>

namespace smdpen {

Vector mirror(const Vector& y, const Regularizer& reg, const FeasibleDomain& domain) {
  switch (reg.kind()) {
    case Regularizer::Kind::Euclidean:
      return project(domain, y);
  }
  return y;
}

double conjugate(const Vector& y, const Regularizer& reg, const FeasibleDomain& domain) {
  const Vector m = mirror(y, reg, domain);
  return y.dot(m) - reg.value(m);
}

double fenchel(const Vector& x, const Vector& y, const Regularizer& reg,
               const FeasibleDomain& domain) {
  if (!domain.contains(x, 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff())))
    throw PreconditionError("Fenchel coupling requires x inside the domain");
  const double value = reg.value(x) + conjugate(y, reg, domain) - y.dot(x);
  // Cancellation can leave a tiny negative residue; the coupling is >= 0.
  return std::max(value, 0.0);
}

}  // namespace smdpen
