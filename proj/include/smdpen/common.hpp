#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace smdpen {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// A point counts as feasible when its violation is at or below this value.
inline constexpr double kFeasibilityTolerance = 1e-12;
/// Tolerance for max-attainment and boundary tests (β = 1 and β = ∞ paths).
inline constexpr double kActiveTolerance = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constraint or objective returned a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested a formulation that the operation does not support (e.g. the
/// penalty gradient for β = 1 or β = ∞).
class UnsupportedFormulation : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, long iteration, double grad_norm)
      : Error(what), iteration_(iteration), grad_norm_(grad_norm) {}
  long iteration() const noexcept { return iteration_; }
  double grad_norm() const noexcept { return grad_norm_; }

 private:
  long iteration_;
  double grad_norm_;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace smdpen
