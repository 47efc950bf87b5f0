#pragma once

// Structure-constant representation of real Lie algebras and the structural
// predicates built on it.

#include <metlie/linalg.hpp>

#include <cmath>
#include <sstream>
#include <vector>

namespace metlie {

/// Raw antisymmetric structure tensor C[i][j][k], [e_i, e_j] = sum_k C[i][j][k] e_k.
///
/// Only the i < j slices are stored, as the columns of a dim x dim(dim-1)/2
/// matrix, so antisymmetry holds by construction. No Jacobi check happens here;
/// see LieAlgebra for the validated type.
template <typename Scalar = double>
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(Index dim) : dim_(dim), pairs_(Matrix<Scalar>::Zero(dim, dim * (dim - 1) / 2)) {
    if (dim <= 0) throw InputError("structure constants: dimension must be positive");
  }

  Index dim() const { return dim_; }

  static Index pair_index(Index dim, Index i, Index j) { return i * (2 * dim - i - 1) / 2 + (j - i - 1); }

  /// C[i][j][k] with the antisymmetric extension to i >= j.
  Scalar operator()(Index i, Index j, Index k) const {
    if (i == j) return Scalar(0);
    if (i < j) return pairs_(k, pair_index(dim_, i, j));
    return -pairs_(k, pair_index(dim_, j, i));
  }

  /// Sets C[i][j][k] (and implicitly C[j][i][k] = -value). i == j is rejected.
  void set(Index i, Index j, Index k, Scalar value) {
    check_index(i);
    check_index(j);
    check_index(k);
    if (i == j) throw InputError("structure constants: diagonal entry [e_i, e_i] must vanish");
    if (i < j)
      pairs_(k, pair_index(dim_, i, j)) = value;
    else
      pairs_(k, pair_index(dim_, j, i)) = -value;
  }

  /// [e_i, e_j] as a coordinate vector.
  Vector<Scalar> basis_bracket(Index i, Index j) const {
    if (i == j) return Vector<Scalar>::Zero(dim_);
    if (i < j) return pairs_.col(pair_index(dim_, i, j));
    return -pairs_.col(pair_index(dim_, j, i));
  }

  /// All [e_i, e_j], i < j, as columns.
  const Matrix<Scalar>& pair_columns() const { return pairs_; }

  Scalar max_abs() const { return pairs_.size() == 0 ? Scalar(0) : pairs_.cwiseAbs().maxCoeff(); }

  /// Sum of C[i][j][k]^2 over all ordered (i, j, k).
  Scalar squared_norm() const { return Scalar(2) * pairs_.squaredNorm(); }

  bool operator==(const StructureConstants& other) const {
    return dim_ == other.dim_ && pairs_ == other.pairs_;
  }

 private:
  void check_index(Index i) const {
    if (i < 0 || i >= dim_) throw InputError("structure constants: index out of range");
  }

  Index dim_ = 0;
  Matrix<Scalar> pairs_;
};

/// ad(x) as a matrix: column j is [x, e_j].
template <typename Scalar>
Matrix<Scalar> ad_matrix(const StructureConstants<Scalar>& c, const Vector<Scalar>& x) {
  const Index n = c.dim();
  if (x.size() != n) throw InputError("ad_matrix: dimension mismatch");
  Matrix<Scalar> ad = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (x(i) == Scalar(0)) continue;
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      ad.col(j) += x(i) * c.basis_bracket(i, j);
    }
  }
  return ad;
}

template <typename Scalar>
Matrix<Scalar> ad_basis(const StructureConstants<Scalar>& c, Index i) {
  return ad_matrix(c, Vector<Scalar>(Vector<Scalar>::Unit(c.dim(), i)));
}

template <typename Scalar>
struct JacobiCheck {
  bool valid = true;
  Scalar max_residual = 0;
  /// Basis triple attaining the maximum residual.
  Index i = 0, j = 0, k = 0;
};

/// Max over basis triples of |[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]|
/// (componentwise); valid iff that maximum is <= tol.
template <typename Scalar>
JacobiCheck<Scalar> validate_jacobi(const StructureConstants<Scalar>& c, Scalar tol) {
  const Index n = c.dim();
  std::vector<Matrix<Scalar>> ads;
  ads.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) ads.push_back(ad_basis(c, i));
  JacobiCheck<Scalar> out;
  // the cyclic sum is alternating, so distinct ordered triples suffice
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        Vector<Scalar> r = -(ads[static_cast<std::size_t>(k)] * c.basis_bracket(i, j)) -
                           ads[static_cast<std::size_t>(i)] * c.basis_bracket(j, k) -
                           ads[static_cast<std::size_t>(j)] * c.basis_bracket(k, i);
        const Scalar res = r.cwiseAbs().maxCoeff();
        if (res > out.max_residual) {
          out.max_residual = res;
          out.i = i;
          out.j = j;
          out.k = k;
        }
      }
  out.valid = out.max_residual <= tol;
  return out;
}

/// A finite-dimensional real Lie algebra. Jacobi is enforced on construction.
template <typename Scalar = double>
class LieAlgebra {
 public:
  struct Entry {
    Index i, j, k;
    Scalar value;
  };

  LieAlgebra() = default;

  explicit LieAlgebra(StructureConstants<Scalar> constants, const Tolerances<Scalar>& tol = {})
      : c_(std::move(constants)) {
    const Scalar scale = Scalar(1) + c_.max_abs();
    const auto check = validate_jacobi(c_, tol.jacobi * scale * scale * scale);
    if (!check.valid) {
      std::ostringstream msg;
      msg << "Jacobi identity violated on basis triple (" << check.i << ", " << check.j << ", " << check.k
          << "), residual " << check.max_residual;
      throw InputError(msg.str());
    }
  }

  /// Builds from [e_i, e_j] = value e_k entries; unspecified entries are zero.
  static LieAlgebra from_entries(Index dim, const std::vector<Entry>& entries, const Tolerances<Scalar>& tol = {}) {
    StructureConstants<Scalar> c(dim);
    for (const auto& e : entries) c.set(e.i, e.j, e.k, e.value);
    return LieAlgebra(std::move(c), tol);
  }

  static LieAlgebra abelian(Index dim) { return LieAlgebra(StructureConstants<Scalar>(dim)); }

  Index dim() const { return c_.dim(); }
  const StructureConstants<Scalar>& constants() const { return c_; }
  Scalar operator()(Index i, Index j, Index k) const { return c_(i, j, k); }

  bool operator==(const LieAlgebra& other) const { return c_ == other.c_; }

 private:
  StructureConstants<Scalar> c_;
};

template <typename Scalar>
Vector<Scalar> bracket(const LieAlgebra<Scalar>& alg, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  const Index n = alg.dim();
  if (x.size() != n || y.size() != n) throw InputError("bracket: dimension mismatch");
  Vector<Scalar> out = Vector<Scalar>::Zero(n);
  const auto& pairs = alg.constants().pair_columns();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Scalar w = x(i) * y(j) - x(j) * y(i);
      if (w != Scalar(0)) out += w * pairs.col(StructureConstants<Scalar>::pair_index(n, i, j));
    }
  return out;
}

template <typename Scalar>
Matrix<Scalar> ad_matrix(const LieAlgebra<Scalar>& alg, const Vector<Scalar>& x) {
  return ad_matrix(alg.constants(), x);
}

/// A linear subspace stored as an orthonormal basis (standard inner product on
/// the coordinates it lives in).
template <typename Scalar = double>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}
  Subspace(Index ambient_dim, Matrix<Scalar> onb) : ambient_(ambient_dim), basis_(std::move(onb)) {
    if (basis_.rows() != ambient_) throw InputError("subspace: basis rows differ from ambient dimension");
    if (basis_.cols() > ambient_) throw InputError("subspace: more basis vectors than ambient dimension");
    if (basis_.cols() > 0) {
      const Scalar err = (basis_.transpose() * basis_ - Matrix<Scalar>::Identity(basis_.cols(), basis_.cols()))
                             .cwiseAbs()
                             .maxCoeff();
      if (err > Scalar(1e-12) * Scalar(std::max<Index>(1, ambient_)))
        throw InputError("subspace: basis is not orthonormal");
    }
  }

  static Subspace whole(Index ambient_dim) { return Subspace(ambient_dim, Matrix<Scalar>::Identity(ambient_dim, ambient_dim)); }

  /// Span of the given columns, rank decided by pivoted elimination.
  template <typename Derived>
  static Subspace span_of(const Eigen::MatrixBase<Derived>& cols, Scalar rank_tol, Scalar scale = 0) {
    return Subspace(cols.rows(), pivoted_span(cols, rank_tol, scale).basis);
  }

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const Matrix<Scalar>& basis() const { return basis_; }

  Matrix<Scalar> projector() const { return basis_ * basis_.transpose(); }

  Subspace complement() const { return Subspace(ambient_, orthogonal_complement<Scalar>(basis_, ambient_)); }

  /// Residual of projecting v (or each column of a matrix) onto this subspace.
  Scalar residual(const Matrix<Scalar>& vecs) const { return containment_residual<Scalar>(basis_, vecs); }

  bool contains(const Vector<Scalar>& v, Scalar tol) const { return residual(v) <= tol; }

 private:
  Index ambient_ = 0;
  Matrix<Scalar> basis_;
};

/// span{[e_i, e_j] : i < j}.
template <typename Scalar>
Subspace<Scalar> derived_algebra(const LieAlgebra<Scalar>& alg, const Tolerances<Scalar>& tol = {}) {
  return Subspace<Scalar>::span_of(alg.constants().pair_columns(), tol.rank, Scalar(1) + alg.constants().max_abs());
}

/// [U, W] for subspaces given by orthonormal bases.
template <typename Scalar>
Subspace<Scalar> bracket_span(const LieAlgebra<Scalar>& alg, const Matrix<Scalar>& u, const Matrix<Scalar>& w,
                              const Tolerances<Scalar>& tol) {
  const Index n = alg.dim();
  Matrix<Scalar> cols(n, u.cols() * w.cols());
  Index c = 0;
  for (Index a = 0; a < u.cols(); ++a) {
    const Matrix<Scalar> ad = ad_matrix(alg, Vector<Scalar>(u.col(a)));
    for (Index b = 0; b < w.cols(); ++b) cols.col(c++) = ad * w.col(b);
  }
  return Subspace<Scalar>::span_of(cols, tol.rank, Scalar(1) + alg.constants().max_abs());
}

/// n^0 = alg, n^k = [n^{k-1}, alg], stopping at the first term whose
/// successor has the same dimension. The last term is 0 iff alg is nilpotent.
template <typename Scalar>
std::vector<Subspace<Scalar>> lower_central_series(const LieAlgebra<Scalar>& alg, const Tolerances<Scalar>& tol = {}) {
  const Index n = alg.dim();
  const Matrix<Scalar> all = Matrix<Scalar>::Identity(n, n);
  std::vector<Subspace<Scalar>> series{Subspace<Scalar>::whole(n)};
  while (series.back().dim() > 0) {
    auto next = bracket_span(alg, series.back().basis(), all, tol);
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

/// s^(0) = alg, s^(k) = [s^(k-1), s^(k-1)], with the same stopping rule.
template <typename Scalar>
std::vector<Subspace<Scalar>> derived_series(const LieAlgebra<Scalar>& alg, const Tolerances<Scalar>& tol = {}) {
  std::vector<Subspace<Scalar>> series{Subspace<Scalar>::whole(alg.dim())};
  while (series.back().dim() > 0) {
    auto next = bracket_span(alg, series.back().basis(), series.back().basis(), tol);
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

struct StructuralPredicates {
  bool is_abelian = false;
  bool is_nilpotent = false;
  bool is_solvable = false;
  bool is_unimodular = false;
  /// p with n^p = 0 and n^{p-1} != 0; -1 when not nilpotent.
  int nilpotency_degree = -1;

  bool operator==(const StructuralPredicates&) const = default;
};

template <typename Scalar>
StructuralPredicates structural_predicates(const LieAlgebra<Scalar>& alg, const Tolerances<Scalar>& tol = {}) {
  StructuralPredicates p;
  const auto lcs = lower_central_series(alg, tol);
  p.is_nilpotent = lcs.back().dim() == 0;
  p.nilpotency_degree = p.is_nilpotent ? static_cast<int>(lcs.size()) - 1 : -1;
  p.is_abelian = lcs.size() >= 2 && lcs[1].dim() == 0;
  p.is_solvable = derived_series(alg, tol).back().dim() == 0;

  const auto& c = alg.constants();
  const Scalar bound = tol.predicate * (Scalar(1) + c.max_abs());
  p.is_unimodular = true;
  for (Index i = 0; i < alg.dim(); ++i) {
    Scalar tr = 0;
    for (Index k = 0; k < alg.dim(); ++k) tr += c(i, k, k);
    if (std::abs(tr) > bound) p.is_unimodular = false;
  }
  return p;
}

}  // namespace metlie
