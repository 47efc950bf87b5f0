#pragma once

// Small dense helpers shared by every module: rank-revealing spans,
// nullspaces, orthogonal complements and the trace inner product on
// endomorphisms.

#include <metlie/core.hpp>

#include <algorithm>
#include <vector>

namespace metlie {

template <typename Scalar>
struct SpanResult {
  /// Orthonormal columns spanning the input columns.
  Matrix<Scalar> basis;
  /// Input column chosen at each elimination step, in order.
  std::vector<Index> pivots;
};

/// Column-pivoted Gram-Schmidt elimination.
///
/// At each step the remaining column with the largest residual norm is
/// eliminated against the basis built so far; elimination stops once that
/// residual drops to `rel_tol * max(largest input column norm, scale)`.
/// `scale` is an absolute floor for inputs that are pure roundoff. The pivot
/// order is fully determined by the input, so results are reproducible bit
/// for bit.
template <typename Derived>
SpanResult<typename Derived::Scalar> pivoted_span(const Eigen::MatrixBase<Derived>& cols,
                                                  typename Derived::Scalar rel_tol,
                                                  typename Derived::Scalar scale = 0) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> work = cols;
  const Index n = work.rows();
  const Index k = work.cols();
  SpanResult<Scalar> out;
  out.basis.resize(n, 0);
  if (k == 0 || n == 0) return out;

  Vector<Scalar> norms = work.colwise().norm().transpose();
  const Scalar largest = norms.maxCoeff();
  if (largest == Scalar(0)) return out;
  const Scalar threshold = rel_tol * std::max(largest, scale);

  std::vector<bool> used(static_cast<std::size_t>(k), false);
  std::vector<Vector<Scalar>> picked;
  for (Index step = 0; step < std::min(n, k); ++step) {
    Index best = -1;
    Scalar best_norm = Scalar(-1);
    for (Index c = 0; c < k; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      const Scalar nc = work.col(c).norm();
      if (nc > best_norm) {
        best_norm = nc;
        best = c;
      }
    }
    if (best < 0 || best_norm <= threshold) break;
    used[static_cast<std::size_t>(best)] = true;

    Vector<Scalar> q = work.col(best) / best_norm;
    // second pass against the accumulated basis
    for (const auto& p : picked) q -= p.dot(q) * p;
    q.normalize();
    picked.push_back(q);
    out.pivots.push_back(best);

    for (Index c = 0; c < k; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      work.col(c) -= q.dot(work.col(c)) * q;
    }
  }
  out.basis.resize(n, static_cast<Index>(picked.size()));
  for (std::size_t i = 0; i < picked.size(); ++i) out.basis.col(static_cast<Index>(i)) = picked[i];
  return out;
}

/// Orthonormal basis of the orthogonal complement of span(onb) in R^n.
/// `onb` must have orthonormal columns.
template <typename Scalar>
Matrix<Scalar> orthogonal_complement(const Matrix<Scalar>& onb, Index n) {
  const Index r = onb.cols();
  if (r == 0) return Matrix<Scalar>::Identity(n, n);
  if (r >= n) return Matrix<Scalar>(n, 0);
  Eigen::HouseholderQR<Matrix<Scalar>> qr(onb);
  Matrix<Scalar> q = qr.householderQ() * Matrix<Scalar>::Identity(n, n);
  return q.rightCols(n - r);
}

/// Orthonormal basis of ker(M), via the complement of the row space.
template <typename Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m,
                                           typename Derived::Scalar rel_tol,
                                           typename Derived::Scalar scale = 0) {
  using Scalar = typename Derived::Scalar;
  const Index n = m.cols();
  if (m.rows() == 0) return Matrix<Scalar>::Identity(n, n);
  auto rows = pivoted_span(m.transpose(), rel_tol, scale);
  return orthogonal_complement<Scalar>(rows.basis, n);
}

/// (A + A') / 2
template <typename Derived>
Matrix<typename Derived::Scalar> symmetric_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.transpose()) / typename Derived::Scalar(2);
}

/// <A, B> = trace(A B').
template <typename DA, typename DB>
typename DA::Scalar trace_inner_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw InputError("trace_inner_product: shape mismatch");
  return a.cwiseProduct(b).sum();
}

/// Largest residual ||v - P v|| over the columns of `vecs`, where P projects
/// onto span(onb).
template <typename Scalar>
Scalar containment_residual(const Matrix<Scalar>& onb, const Matrix<Scalar>& vecs) {
  if (vecs.cols() == 0) return Scalar(0);
  Matrix<Scalar> resid = vecs;
  if (onb.cols() > 0) resid -= onb * (onb.transpose() * vecs);
  return resid.colwise().norm().maxCoeff();
}

/// Column-major flattening of a matrix.
template <typename Derived>
Vector<typename Derived::Scalar> vectorize(const Eigen::MatrixBase<Derived>& a) {
  Matrix<typename Derived::Scalar> tmp = a;
  return Eigen::Map<const Vector<typename Derived::Scalar>>(tmp.data(), tmp.size());
}

template <typename Scalar>
Matrix<Scalar> unvectorize(const Vector<Scalar>& v, Index rows) {
  return Eigen::Map<const Matrix<Scalar>>(v.data(), rows, v.size() / (rows == 0 ? 1 : rows));
}

}  // namespace metlie
