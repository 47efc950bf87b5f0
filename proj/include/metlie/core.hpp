#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace metlie {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, broken antisymmetry, Jacobi failure,
/// non positive definite Gram matrix.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Operation precondition violated (e.g. non-solvable algebra handed to a
/// solvable-only routine, matrix that is not a derivation).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver hit its sweep cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Numerical tolerances. Every report echoes the instance it was computed with.
///
/// Each value is a relative factor; the scale it multiplies is documented on
/// the field.
template <typename Scalar = double>
struct Tolerances {
  /// Jacobi residual bound, times (1 + max|C|)^3.
  Scalar jacobi = Scalar(1e-9);
  /// Rank threshold, times the largest column norm of the matrix examined.
  Scalar rank = Scalar(1e-9);
  /// Cholesky pivot threshold, times the largest Gram diagonal entry.
  Scalar pd = Scalar(1e-12);
  /// Operator predicates (skew, normal, traceless, abelian).
  Scalar predicate = Scalar(1e-9);
  /// Eigenvalue zero band, times (1 + ||M||_F).
  Scalar zero = Scalar(1e-8);
  /// Leibniz residual for derivation membership, times (1 + ||A||_F)(1 + max|C|).
  Scalar derivation = Scalar(1e-8);

  bool operator==(const Tolerances&) const = default;
};

}  // namespace metlie
