#pragma once

// Symmetric eigenvalues by cyclic Jacobi rotations, signature counting and
// the interlacing checks for principal submatrices.

#include <metlie/core.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace metlie {

template <typename Scalar>
struct SymmetricEigen {
  /// Ascending.
  Vector<Scalar> values;
  /// Columns are unit eigenvectors, in the order of `values`.
  Matrix<Scalar> vectors;
  int sweeps = 0;
  Scalar off_diagonal = 0;
};

/// Cyclic Jacobi method with row-wise sweep order.
///
/// Iterates until the off-diagonal Frobenius norm is at most
/// 1e-12 * (1 + ||M||_F). More than `max_sweeps` sweeps throws ConvergenceError.
template <typename Scalar>
SymmetricEigen<Scalar> jacobi_eigen(const Matrix<Scalar>& m, int max_sweeps = 100) {
  const Index n = m.rows();
  if (m.cols() != n) throw InputError("jacobi_eigen: matrix must be square");
  Matrix<Scalar> a = m;
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar target = Scalar(1e-12) * (Scalar(1) + m.norm());

  auto off = [&] {
    Scalar s = 0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) s += Scalar(2) * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  SymmetricEigen<Scalar> out;
  Scalar current = off();
  while (current > target) {
    if (out.sweeps >= max_sweeps) {
      std::ostringstream msg;
      msg << "jacobi_eigen: no convergence after " << max_sweeps << " sweeps (off-diagonal " << current << ")";
      throw ConvergenceError(msg.str());
    }
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        // symmetric 2x2 Schur decomposition
        const Scalar tau = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (tau >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;
        for (Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    ++out.sweeps;
    current = off();
  }
  out.off_diagonal = current;

  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return a(x, x) < a(y, y); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// (negative, zero, positive) eigenvalue counts.
struct Signature {
  int negative = 0;
  int zero = 0;
  int positive = 0;

  bool operator==(const Signature&) const = default;
};

template <typename Scalar>
struct SpectralSignature {
  Vector<Scalar> eigenvalues;
  Signature signature;
  /// Absolute zero band actually applied: zero_tol * (1 + ||M||_F).
  Scalar zero_band = 0;
};

/// Eigenvalues of a symmetric matrix and their sign counts.
/// |lambda| <= zero_tol * (1 + ||M||_F) counts as zero.
template <typename Scalar>
SpectralSignature<Scalar> eigen_signature(const Matrix<Scalar>& m, Scalar zero_tol) {
  const Scalar fro = m.norm();
  if (m.rows() != m.cols()) throw DomainError("eigen_signature: matrix is not square");
  if ((m - m.transpose()).norm() > Scalar(1e-9) * (Scalar(1) + fro))
    throw DomainError("eigen_signature: matrix is not symmetric");
  SpectralSignature<Scalar> out;
  out.eigenvalues = jacobi_eigen<Scalar>(Matrix<Scalar>((m + m.transpose()) / Scalar(2))).values;
  out.zero_band = zero_tol * (Scalar(1) + fro);
  for (Index i = 0; i < out.eigenvalues.size(); ++i) {
    const Scalar l = out.eigenvalues(i);
    if (std::abs(l) <= out.zero_band)
      ++out.signature.zero;
    else if (l < 0)
      ++out.signature.negative;
    else
      ++out.signature.positive;
  }
  return out;
}

/// Worst violation of Cauchy interlacing between the ascending spectra of a
/// symmetric n x n matrix and of one of its (n-1) x (n-1) principal
/// submatrices: full_i <= sub_i <= full_{i+1}. Returns the minimum slack
/// (non-negative when interlacing holds).
template <typename Scalar>
Scalar interlacing_slack(const Vector<Scalar>& full, const Vector<Scalar>& sub) {
  if (sub.size() + 1 != full.size()) throw InputError("interlacing_slack: sizes must differ by one");
  Scalar slack = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < sub.size(); ++i) {
    slack = std::min(slack, sub(i) - full(i));
    slack = std::min(slack, full(i + 1) - sub(i));
  }
  return slack;
}

/// Principal submatrix on the given index set.
template <typename Scalar>
Matrix<Scalar> principal_submatrix(const Matrix<Scalar>& m, const std::vector<Index>& idx) {
  const Index k = static_cast<Index>(idx.size());
  Matrix<Scalar> out(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return out;
}

}  // namespace metlie
