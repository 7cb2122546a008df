#pragma once

// Reference computations written independently of the library: direct power
// sums, central differences and scalar hand traces.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;

inline double power_norm(const std::vector<double>& v, double beta) {
  if (std::isinf(beta)) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
  }
  double s = 0.0;
  for (double a : v) s += std::pow(std::abs(a), beta);
  return std::pow(s, 1.0 / beta);
}

/// f + p ‖(max(g, 0), h)‖_β from raw constraint values.
inline double penalty(double f, const std::vector<double>& h, const std::vector<double>& g,
                      double p, double beta) {
  std::vector<double> r;
  for (double gj : g) r.push_back(gj > 0.0 ? gj : 0.0);
  for (double hi : h) r.push_back(hi);
  return f + p * power_norm(r, beta);
}

inline Vec central_difference(const std::function<double(const Vec&)>& fn, const Vec& x,
                              double step) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec a = x, b = x;
    a[i] += step;
    b[i] -= step;
    g[i] = (fn(a) - fn(b)) / (2.0 * step);
  }
  return g;
}

inline Vec uniform(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline Vec gaussian(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::normal_distribution<double> d(0.0, scale);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

struct HandTrace {
  std::vector<double> tests;  // test value at each candidate p
  double p_out = 0.0;
  int multiplications = 0;
};

/// The penalty test for one violated inequality g with scalar gradients:
/// d = -(f' + p g'), test = f' d + p g' d + g / p.
inline HandTrace scalar_penalty_trace(double fprime, double g, double gprime, double p,
                                      double kappa) {
  HandTrace t;
  while (true) {
    const double d = -(fprime + p * gprime);
    const double value = fprime * d + p * gprime * d + g / p;
    t.tests.push_back(value);
    if (value <= 0.0) break;
    p *= kappa;
    ++t.multiplications;
  }
  t.p_out = p;
  return t;
}

}  // namespace oracle
