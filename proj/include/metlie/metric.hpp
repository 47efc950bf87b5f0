#pragma once

// Inner products on a Lie algebra and everything that depends on one:
// orthonormal frames, adjoints, the vector H, the Killing operator.

#include <metlie/algebra.hpp>

#include <cmath>
#include <sstream>

namespace metlie {

/// Lower Cholesky factor of an SPD matrix. Throws InputError naming the
/// first pivot that is not above `pivot_tol`.
template <typename Scalar>
Matrix<Scalar> cholesky_lower(const Matrix<Scalar>& g, Scalar pivot_tol) {
  const Index n = g.rows();
  Matrix<Scalar> l = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    Scalar d = g(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > pivot_tol)) {
      std::ostringstream msg;
      msg << "metric is not positive definite: pivot " << j << " equals " << d << " (threshold " << pivot_tol << ")";
      throw InputError(msg.str());
    }
    l(j, j) = std::sqrt(d);
    for (Index i = j + 1; i < n; ++i) l(i, j) = (g(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
  }
  return l;
}

/// Symmetric positive definite Gram matrix, Q_ij = (e_i, e_j).
template <typename Scalar = double>
class InnerProduct {
 public:
  InnerProduct() = default;
  explicit InnerProduct(Matrix<Scalar> gram, const Tolerances<Scalar>& tol = {}) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols() || gram_.rows() == 0) throw InputError("metric: Gram matrix must be square and non-empty");
    const Scalar scale = Scalar(1) + gram_.cwiseAbs().maxCoeff();
    const Scalar asym = (gram_ - gram_.transpose()).cwiseAbs().maxCoeff();
    if (asym > Scalar(1e-12) * scale) {
      std::ostringstream msg;
      msg << "metric is not symmetric: max |Q - Q'| = " << asym;
      throw InputError(msg.str());
    }
    lower_ = cholesky_lower<Scalar>(gram_, tol.pd * gram_.diagonal().cwiseAbs().maxCoeff());
  }

  static InnerProduct identity(Index dim) { return InnerProduct(Matrix<Scalar>::Identity(dim, dim)); }

  Index dim() const { return gram_.rows(); }
  const Matrix<Scalar>& gram() const { return gram_; }
  /// gram = L L'
  const Matrix<Scalar>& cholesky_factor() const { return lower_; }

  InnerProduct scaled(Scalar c) const { return InnerProduct(Matrix<Scalar>(c * gram_)); }

  bool operator==(const InnerProduct& other) const { return gram_ == other.gram_; }

 private:
  Matrix<Scalar> gram_;
  Matrix<Scalar> lower_;
};

/// A Lie algebra with an inner product, plus the orthonormal frame all
/// downstream formulas work in.
///
/// `onb()` holds the frame vectors X_i as columns in the defining basis, so
/// onb' * gram * onb = I. `onb_algebra()` is the same algebra written in that
/// frame; there the metric adjoint is the plain transpose.
template <typename Scalar = double>
class MetricLieAlgebra {
 public:
  MetricLieAlgebra() = default;
  MetricLieAlgebra(LieAlgebra<Scalar> alg, InnerProduct<Scalar> metric, const Tolerances<Scalar>& tol = {})
      : alg_(std::move(alg)), metric_(std::move(metric)) {
    const Index n = alg_.dim();
    if (metric_.dim() != n) throw InputError("metric dimension differs from algebra dimension");
    const Matrix<Scalar>& l = metric_.cholesky_factor();
    onb_ = l.transpose().template triangularView<Eigen::Upper>().solve(Matrix<Scalar>::Identity(n, n));
    StructureConstants<Scalar> c(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        // coordinates of [X_i, X_j] in the frame are L' times the defining-basis coordinates
        const Vector<Scalar> v = l.transpose() * bracket(alg_, Vector<Scalar>(onb_.col(i)), Vector<Scalar>(onb_.col(j)));
        for (Index k = 0; k < n; ++k) c.set(i, j, k, v(k));
      }
    onb_alg_ = LieAlgebra<Scalar>(std::move(c), tol);
  }

  static MetricLieAlgebra with_identity(LieAlgebra<Scalar> alg) {
    const Index n = alg.dim();
    return MetricLieAlgebra(std::move(alg), InnerProduct<Scalar>::identity(n));
  }

  Index dim() const { return alg_.dim(); }
  const LieAlgebra<Scalar>& algebra() const { return alg_; }
  const InnerProduct<Scalar>& metric() const { return metric_; }
  const Matrix<Scalar>& onb() const { return onb_; }
  const LieAlgebra<Scalar>& onb_algebra() const { return onb_alg_; }
  const StructureConstants<Scalar>& constants_onb() const { return onb_alg_.constants(); }

 private:
  LieAlgebra<Scalar> alg_;
  InnerProduct<Scalar> metric_;
  Matrix<Scalar> onb_;
  LieAlgebra<Scalar> onb_alg_;
};

template <typename Scalar>
MetricLieAlgebra<Scalar> orthonormalize(const LieAlgebra<Scalar>& alg, const InnerProduct<Scalar>& metric,
                                        const Tolerances<Scalar>& tol = {}) {
  return MetricLieAlgebra<Scalar>(alg, metric, tol);
}

/// Metric adjoint of an operator given in the orthonormal frame.
template <typename Scalar>
Matrix<Scalar> metric_adjoint(const MetricLieAlgebra<Scalar>& m, const Matrix<Scalar>& a) {
  if (a.rows() != m.dim() || a.cols() != m.dim()) throw InputError("metric_adjoint: dimension mismatch");
  return a.transpose();
}

template <typename Scalar>
struct MeanCurvature {
  /// Frame coordinates, H_i = trace(ad X_i).
  Vector<Scalar> h;
  /// ||H||
  Scalar t = 0;
};

template <typename Scalar>
MeanCurvature<Scalar> mean_curvature_vector(const MetricLieAlgebra<Scalar>& m) {
  const auto& c = m.constants_onb();
  const Index n = m.dim();
  MeanCurvature<Scalar> out;
  out.h = Vector<Scalar>::Zero(n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) out.h(i) += c(i, k, k);
  out.t = out.h.norm();
  return out;
}

/// B_ij = trace(ad X_i ad X_j) in the orthonormal frame.
template <typename Scalar>
Matrix<Scalar> killing_operator(const MetricLieAlgebra<Scalar>& m) {
  const Index n = m.dim();
  std::vector<Matrix<Scalar>> ads;
  for (Index i = 0; i < n; ++i) ads.push_back(ad_basis(m.constants_onb(), i));
  Matrix<Scalar> b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      // trace(XY) = sum of X .* Y'
      b(i, j) = ads[static_cast<std::size_t>(i)].cwiseProduct(ads[static_cast<std::size_t>(j)].transpose()).sum();
      b(j, i) = b(i, j);
    }
  return b;
}

struct OperatorPredicates {
  bool is_skew = false;
  bool is_normal = false;
  bool is_traceless = false;

  bool operator==(const OperatorPredicates&) const = default;
};

/// Skew / normal / traceless tests for an operator in an orthonormal frame.
template <typename Derived>
OperatorPredicates operator_predicates(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar tol) {
  using Scalar = typename Derived::Scalar;
  const Scalar fro = a.norm();
  const Matrix<Scalar> at = a.transpose();
  OperatorPredicates p;
  p.is_skew = (a + at).norm() <= tol * (Scalar(1) + fro);
  p.is_normal = (a * at - at * a).norm() <= tol * (Scalar(1) + fro * fro);
  p.is_traceless = std::abs(a.trace()) <= tol * (Scalar(1) + fro);
  return p;
}

template <typename Scalar>
OperatorPredicates operator_predicates(const MetricLieAlgebra<Scalar>&, const Matrix<Scalar>& a, Scalar tol) {
  return operator_predicates(a, tol);
}

}  // namespace metlie
