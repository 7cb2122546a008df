#include "smdpen/benchmarks.hpp"

#include <cmath>

namespace smdpen::bench {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_2d(const Vector& x) {
  if (x.size() != 2) throw PreconditionError("test functions are defined on R^2");
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

ScalarFunction affine(double c0, double c1, double c2) {
  return {[=](const Vector& x) { return c0 + c1 * x[0] + c2 * x[1]; },
          [=](const Vector&) { return vec2(c1, c2); }};
}

}  // namespace

double test_function(char name, const Vector& x) {
  require_2d(x);
  const double x1 = x[0], x2 = x[1];
  switch (name) {
    case 'a':
      return x1 * x1 * x2 * x2;
    case 'b': {
      const double a = x1 + x2 + 1.0;
      const double b = 19 - 14 * x1 + 3 * x1 * x1 - 14 * x2 + 6 * x1 * x2 + 3 * x2 * x2;
      const double c = 2 * x1 - 3 * x2;
      const double d = 18 - 32 * x1 + 12 * x1 * x1 + 48 * x2 - 36 * x1 * x2 + 27 * x2 * x2;
      return (1 + a * a * b) * (30 + c * c * d);
    }
    case 'c':
      return 100.0 * std::sqrt(std::abs(x2 - 0.01 * x1 * x1)) + 0.01 * std::abs(x1 + 10.0);
    case 'd': {
      const double r1 = 1.5 - x1 + x1 * x2;
      const double r2 = 2.25 - x1 + x1 * x2 * x2;
      const double r3 = 2.625 - x1 + x1 * x2 * x2 * x2;
      return r1 * r1 + r2 * r2 + r3 * r3;
    }
    default:
      throw PreconditionError(std::string("unknown test function '") + name + "'");
  }
}

Vector test_gradient(char name, const Vector& x) {
  require_2d(x);
  const double x1 = x[0], x2 = x[1];
  switch (name) {
    case 'a':
      return vec2(2 * x1 * x2 * x2, 2 * x1 * x1 * x2);
    case 'b': {
      const double a = x1 + x2 + 1.0;
      const double b = 19 - 14 * x1 + 3 * x1 * x1 - 14 * x2 + 6 * x1 * x2 + 3 * x2 * x2;
      const double c = 2 * x1 - 3 * x2;
      const double d = 18 - 32 * x1 + 12 * x1 * x1 + 48 * x2 - 36 * x1 * x2 + 27 * x2 * x2;
      const double u = 1 + a * a * b;
      const double v = 30 + c * c * d;
      const double du = 2 * a * b + a * a * (-14 + 6 * x1 + 6 * x2);  // same in x1 and x2
      const double dv1 = 4 * c * d + c * c * (-32 + 24 * x1 - 36 * x2);
      const double dv2 = -6 * c * d + c * c * (48 - 36 * x1 + 54 * x2);
      return vec2(du * v + u * dv1, du * v + u * dv2);
    }
    case 'c': {
      const double u = x2 - 0.01 * x1 * x1;
      Vector g = vec2(0.01 * sgn(x1 + 10.0), 0.0);
      if (u != 0.0) {
        const double c = 50.0 / std::sqrt(std::abs(u)) * sgn(u);
        g[0] += c * (-0.02 * x1);
        g[1] += c;
      }
      return g;
    }
    case 'd': {
      const double y2 = x2 * x2, y3 = y2 * x2;
      const double r1 = 1.5 - x1 + x1 * x2;
      const double r2 = 2.25 - x1 + x1 * y2;
      const double r3 = 2.625 - x1 + x1 * y3;
      return vec2(2 * r1 * (x2 - 1) + 2 * r2 * (y2 - 1) + 2 * r3 * (y3 - 1),
                  2 * r1 * x1 + 2 * r2 * 2 * x1 * x2 + 2 * r3 * 3 * x1 * y2);
    }
    default:
      throw PreconditionError(std::string("unknown test function '") + name + "'");
  }
}

ConstraintSystem test_constraints(char name) {
  switch (name) {
    case 'a':
      return ConstraintSystem(2, {affine(0.0, 1.0, -1.0)}, {});
    case 'b':
      return ConstraintSystem(2, {affine(0.5, 0.0, 1.0)}, {});
    case 'c':
      return ConstraintSystem(
          2, {}, {affine(0.3, 0.0, -1.0), affine(-1.0, -1.0, -1.0), affine(-1.0, 1.0, -1.0)});
    case 'd':
      return ConstraintSystem(
          2,
          {{[](const Vector& x) { return x.squaredNorm() - 4.0; },
            [](const Vector& x) { return Vector(2.0 * x); }}},
          {});
    default:
      throw PreconditionError(std::string("unknown test function '") + name + "'");
  }
}

double test_penalty(char name, const Vector& x) {
  const ConstraintSystem cs = test_constraints(name);
  Vector h, g;
  cs.values(x, h, g);
  return h.cwiseAbs().sum() + g.cwiseMax(0.0).sum();
}

double rosenbrock(const Vector& x) {
  double sum = 0.0;
  for (Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

Vector rosenbrock_term_grad(const Vector& x, long i) {
  const Index n = x.size();
  if (n < 2 || i < 1 || i > n - 1) throw PreconditionError("rosenbrock term index out of range");
  Vector g = Vector::Zero(n);
  const Index a = i - 1;
  const double r = x[a + 1] - x[a] * x[a];
  g[a] = -400.0 * x[a] * r - 2.0 * (1.0 - x[a]);
  g[a + 1] = 200.0 * r;
  return g;
}

Vector rosenbrock_gradient(const Vector& x) {
  Vector g = Vector::Zero(x.size());
  for (long i = 1; i < x.size(); ++i) g += rosenbrock_term_grad(x, i);
  return g;
}

GradientSample rosenbrock_sample(const Vector& x, std::mt19937_64& rng) {
  const long terms = static_cast<long>(x.size()) - 1;
  std::uniform_int_distribution<long> pick(1, terms);
  const long i = pick(rng);
  return {static_cast<double>(terms) * rosenbrock_term_grad(x, i), i};
}

ConstraintSystem sphere_constraint(Index n) {
  return ConstraintSystem(n,
                          {{[n](const Vector& x) { return x.squaredNorm() - double(n); },
                            [](const Vector& x) { return Vector(2.0 * x); }}},
                          {});
}

RegressionDataset make_regression(std::uint64_t seed, Index n_samples, Index p_features,
                                  double noise_std) {
  if (n_samples < 5 || p_features < 1)
    throw PreconditionError("regression needs n_samples >= 5 and p_features >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution active(0.3);
  std::normal_distribution<double> normal(0.0, 1.0);

  RegressionDataset data;
  data.seed = seed;
  data.n_samples = n_samples;
  data.p_features = p_features;
  data.noise_std = noise_std;

  data.w_star.resize(p_features);
  for (Index i = 0; i < p_features; ++i) data.w_star[i] = active(rng) ? 1.0 : -1.0;

  Matrix x(n_samples, p_features);
  for (Index r = 0; r < n_samples; ++r)
    for (Index c = 0; c < p_features; ++c) x(r, c) = normal(rng);
  Vector y = x * data.w_star;
  for (Index r = 0; r < n_samples; ++r) y[r] += noise_std * normal(rng);

  const Index n_train = (n_samples * 8) / 10;
  data.x_train = x.topRows(n_train);
  data.y_train = y.head(n_train);
  data.x_test = x.bottomRows(n_samples - n_train);
  data.y_test = y.tail(n_samples - n_train);
  return data;
}

double regression_value(const Vector& w, const RegressionDataset& data) {
  return (data.x_train * w - data.y_train).squaredNorm();
}

Vector regression_gradient(const Vector& w, const RegressionDataset& data) {
  return 2.0 * data.x_train.transpose() * (data.x_train * w - data.y_train);
}

ConstraintSystem binary_constraints(Index p) {
  std::vector<ScalarFunction> eqs;
  eqs.reserve(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) {
    eqs.push_back({[i](const Vector& w) { return w[i] * w[i] - 1.0; },
                   [i](const Vector& w) {
                     Vector g = Vector::Zero(w.size());
                     g[i] = 2.0 * w[i];
                     return g;
                   }});
  }
  return ConstraintSystem(p, std::move(eqs), {});
}

double support_recovery(const Vector& w_hat, const Vector& w_star) {
  if (w_hat.size() != w_star.size() || w_hat.size() == 0)
    throw PreconditionError("support_recovery dimension mismatch");
  Index hits = 0;
  for (Index i = 0; i < w_hat.size(); ++i)
    if (w_hat[i] != 0.0 && sgn(w_hat[i]) == w_star[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(w_hat.size());
}

double test_mse(const Vector& w_hat, const RegressionDataset& data) {
  return (data.x_test * w_hat - data.y_test).squaredNorm() /
         static_cast<double>(data.y_test.size());
}

}  // namespace smdpen::bench
