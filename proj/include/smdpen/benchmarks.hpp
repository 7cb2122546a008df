#pragma once

#include <cstdint>
#include <string>

#include "smdpen/solver.hpp"

namespace smdpen::bench {

// 2-D test functions: 'a' quadratic product, 'b' Goldstein-Price, 'c' Bukin N.6, 'd' Beale.
double test_function(char name, const Vector& x);
/// Analytic gradient; Bukin uses the selection 0 on its two kinks.
Vector test_gradient(char name, const Vector& x);

/// Constraints paired with each test function:
/// a: x1 - x2 = 0, b: x2 + 0.5 = 0, c: three inequalities, d: x1^2 + x2^2 - 4 = 0.
ConstraintSystem test_constraints(char name);

/// Σ|h_i| + Σ max(g_j, 0) of the matching constraint system.
double test_penalty(char name, const Vector& x);

double rosenbrock(const Vector& x);
Vector rosenbrock_gradient(const Vector& x);
/// Gradient of the i-th term (1 <= i <= n-1); touches coordinates i and i+1.
Vector rosenbrock_term_grad(const Vector& x, long i);
/// Unbiased one-term oracle: draws i uniformly and returns (n-1) * term gradient.
GradientSample rosenbrock_sample(const Vector& x, std::mt19937_64& rng);

/// h(x) = xᵀx - n.
ConstraintSystem sphere_constraint(Index n);

struct RegressionDataset {
  Matrix x_train;
  Vector y_train;
  Matrix x_test;
  Vector y_test;
  Vector w_star;  // entries in {-1, +1}
  std::uint64_t seed = 0;
  Index n_samples = 0;
  Index p_features = 0;
  double noise_std = 0.1;
};

/// w*_i = +1 with probability 0.3 and -1 otherwise, X standard normal,
/// y = X w* + noise_std * N(0, 1). First 80% of rows train, the rest test.
RegressionDataset make_regression(std::uint64_t seed, Index n_samples, Index p_features,
                                  double noise_std = 0.1);

double regression_value(const Vector& w, const RegressionDataset& data);
Vector regression_gradient(const Vector& w, const RegressionDataset& data);

/// h_i(w) = w_i^2 - 1 for every feature.
ConstraintSystem binary_constraints(Index p);

/// Fraction of coordinates with sgn(ŵ_i) = w*_i; sgn(0) never matches.
double support_recovery(const Vector& w_hat, const Vector& w_star);
/// (1 / n_test) ‖X_test ŵ - y_test‖².
double test_mse(const Vector& w_hat, const RegressionDataset& data);

}  // namespace smdpen::bench
