#pragma once

// The Ricci operator of a metric Lie algebra, computed three ways: the
// general formula over an orthonormal frame, the block formula adapted to
// s = n + a for solvable algebras, and the nilpotent formula. Also the
// reduction used when [s,s] has codimension one.

#include <metlie/metric.hpp>
#include <metlie/spectral.hpp>

#include <optional>
#include <vector>

namespace metlie {

/// Ricci operator in the orthonormal frame together with its spectrum.
template <typename Scalar = double>
struct RicciReport {
  Matrix<Scalar> ricci;
  /// Ascending.
  Vector<Scalar> eigenvalues;
  Signature signature;
  Scalar scalar_curvature = 0;
  /// Relative zero tolerance, and the absolute band it produced.
  Scalar zero_tol = 0;
  Scalar zero_band = 0;

  /// Ric(x, y) = (Ric x, y), frame coordinates.
  Scalar form(const Vector<Scalar>& x, const Vector<Scalar>& y) const { return (ricci * x).dot(y); }
};

template <typename Scalar>
RicciReport<Scalar> make_ricci_report(Matrix<Scalar> ricci, Scalar zero_tol) {
  RicciReport<Scalar> r;
  auto spec = eigen_signature<Scalar>(ricci, zero_tol);
  r.ricci = std::move(ricci);
  r.eigenvalues = std::move(spec.eigenvalues);
  r.signature = spec.signature;
  r.scalar_curvature = r.ricci.trace();
  r.zero_tol = zero_tol;
  r.zero_band = spec.zero_band;
  return r;
}

/// Ric = -1/2 sum ad'(X_i) ad(X_i) + 1/4 sum ad(X_i) ad'(X_i) - 1/2 B - ad^s(H).
///
/// Valid for any metric Lie algebra.
template <typename Scalar>
Matrix<Scalar> ricci_direct_matrix(const MetricLieAlgebra<Scalar>& m) {
  const Index n = m.dim();
  Matrix<Scalar> outer = Matrix<Scalar>::Zero(n, n);
  Matrix<Scalar> inner = Matrix<Scalar>::Zero(n, n);
  Matrix<Scalar> ad_h = Matrix<Scalar>::Zero(n, n);
  const auto h = mean_curvature_vector(m);
  for (Index i = 0; i < n; ++i) {
    const Matrix<Scalar> ad = ad_basis(m.constants_onb(), i);
    outer.noalias() += ad.transpose() * ad;
    inner.noalias() += ad * ad.transpose();
    ad_h += h.h(i) * ad;
  }
  return Scalar(-0.5) * outer + Scalar(0.25) * inner - Scalar(0.5) * killing_operator(m) - symmetric_part(ad_h);
}

template <typename Scalar>
RicciReport<Scalar> ricci_direct(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {}) {
  return make_ricci_report(ricci_direct_matrix(m), tol.zero);
}

/// Orthonormal frame {e_1..e_l, f_1..f_m} adapted to s = n + a with
/// n = [s,s], a = n^perp, and the blocks of ad in that frame:
///
///   ad(f_j) = [A_j B_j; 0 0],   ad(e_i) = [D_i C_i; 0 0].
///
/// f_1 = H/||H|| when s is not unimodular, so trace(ad f_1) = t >= 0 and
/// trace(ad f_j) = 0 for j >= 2.
template <typename Scalar = double>
struct AdaptedDecomposition {
  /// Columns e_1..e_l, f_1..f_m in the orthonormal frame of the metric algebra.
  Matrix<Scalar> frame;
  Index l = 0;
  Index m = 0;
  Scalar t = 0;
  bool unimodular = true;
  std::vector<Matrix<Scalar>> a_blocks;  // l x l
  std::vector<Matrix<Scalar>> b_blocks;  // l x m
  std::vector<Matrix<Scalar>> d_blocks;  // l x l
  std::vector<Matrix<Scalar>> c_blocks;  // l x m
  /// Largest entry in the bottom m rows of any ad matrix (zero up to roundoff).
  Scalar block_residual = 0;

  Matrix<Scalar> n_basis() const { return frame.leftCols(l); }
  Matrix<Scalar> a_basis() const { return frame.rightCols(m); }

  /// The derived algebra n as a Lie algebra in the orthonormal basis e_i;
  /// its structure constants are C_ij^k = (D_i)_kj. Requires l > 0.
  LieAlgebra<Scalar> derived_subalgebra(const Tolerances<Scalar>& tol = {}) const {
    if (l == 0) throw DomainError("derived_subalgebra: [s,s] is zero");
    StructureConstants<Scalar> c(l);
    for (Index i = 0; i < l; ++i)
      for (Index j = i + 1; j < l; ++j)
        for (Index k = 0; k < l; ++k) c.set(i, j, k, d_blocks[static_cast<std::size_t>(i)](k, j));
    return LieAlgebra<Scalar>(std::move(c), tol);
  }
};

/// Builds the adapted frame. `n_rotation`, when given, is an l x l
/// orthogonal matrix applied to the chosen basis of n (the e_i may be any
/// orthonormal basis of n).
template <typename Scalar>
AdaptedDecomposition<Scalar> adapted_decomposition(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {},
                                                   const std::optional<Matrix<Scalar>>& n_rotation = std::nullopt) {
  const auto& alg = m.onb_algebra();
  if (!structural_predicates(alg, tol).is_solvable) throw DomainError("adapted_decomposition: algebra is not solvable");
  const Index dim = m.dim();
  const auto n_space = derived_algebra(alg, tol);
  const auto a_space = n_space.complement();

  AdaptedDecomposition<Scalar> d;
  d.l = n_space.dim();
  d.m = a_space.dim();
  Matrix<Scalar> n_basis = n_space.basis();
  if (n_rotation) {
    if (n_rotation->rows() != d.l || n_rotation->cols() != d.l)
      throw InputError("adapted_decomposition: rotation of n has the wrong size");
    n_basis = n_basis * (*n_rotation);
  }

  const auto h = mean_curvature_vector(m);
  const Scalar scale = Scalar(1) + alg.constants().max_abs();
  Matrix<Scalar> a_basis = a_space.basis();
  d.unimodular = h.t <= tol.predicate * scale;
  if (!d.unimodular) {
    // H is orthogonal to n (ad of n is nilpotent), so it lies in a.
    const Vector<Scalar> f1 = h.h / h.t;
    const Vector<Scalar> coords = a_basis.transpose() * f1;
    const Matrix<Scalar> rest = orthogonal_complement<Scalar>(Matrix<Scalar>(coords / coords.norm()), d.m);
    Matrix<Scalar> ab(dim, d.m);
    ab.col(0) = f1;
    ab.rightCols(d.m - 1) = a_basis * rest;
    a_basis = ab;
    d.t = h.t;
  }

  d.frame.resize(dim, dim);
  d.frame.leftCols(d.l) = n_basis;
  d.frame.rightCols(d.m) = a_basis;

  for (Index c = 0; c < dim; ++c) {
    const Matrix<Scalar> ad = d.frame.transpose() * ad_matrix(alg, Vector<Scalar>(d.frame.col(c))) * d.frame;
    if (d.m > 0) d.block_residual = std::max(d.block_residual, ad.bottomRows(d.m).cwiseAbs().maxCoeff());
    if (c < d.l) {
      d.d_blocks.push_back(ad.topLeftCorner(d.l, d.l));
      d.c_blocks.push_back(ad.topRightCorner(d.l, d.m));
    } else {
      d.a_blocks.push_back(ad.topLeftCorner(d.l, d.l));
      d.b_blocks.push_back(ad.topRightCorner(d.l, d.m));
    }
  }
  return d;
}

/// Ric^n = -1/2 sum D_i' D_i + 1/4 sum D_i D_i' for a nilpotent algebra given
/// by its ad matrices in an orthonormal basis.
template <typename Scalar>
Matrix<Scalar> nilpotent_ricci_from_ads(const std::vector<Matrix<Scalar>>& ds, Index l) {
  Matrix<Scalar> r = Matrix<Scalar>::Zero(l, l);
  for (const auto& d : ds) r += Scalar(-0.5) * d.transpose() * d + Scalar(0.25) * d * d.transpose();
  return r;
}

template <typename Scalar = double>
struct RicciBlocks {
  Matrix<Scalar> ricci_n;  // l x l
  Matrix<Scalar> r1;       // l x l
  Matrix<Scalar> r2;       // l x m
  Matrix<Scalar> r3;       // m x m
  /// [R1 R2; R2' R3] in the adapted frame.
  Matrix<Scalar> assembled;
};

/// Block form of the Ricci operator of a solvable metric Lie algebra:
///
///   R1 = Ric^n + 1/2 sum [A_j, A_j'] + 1/4 sum B_j B_j' - t A_1^s
///   R2 = -1/2 (sum D_i' C_i + sum A_j' B_j + t B_1)
///   R3 = -1/2 sum B_j' B_j - L,   L_pq = trace(A_p^s A_q^s)
template <typename Scalar>
RicciBlocks<Scalar> ricci_blocks(const AdaptedDecomposition<Scalar>& d) {
  const Index l = d.l, m = d.m;
  RicciBlocks<Scalar> rb;
  rb.ricci_n = nilpotent_ricci_from_ads(d.d_blocks, l);
  rb.r1 = rb.ricci_n;
  rb.r2 = Matrix<Scalar>::Zero(l, m);
  rb.r3 = Matrix<Scalar>::Zero(m, m);
  std::vector<Matrix<Scalar>> a_sym;
  for (Index j = 0; j < m; ++j) {
    const auto& a = d.a_blocks[static_cast<std::size_t>(j)];
    const auto& b = d.b_blocks[static_cast<std::size_t>(j)];
    rb.r1 += Scalar(0.5) * (a * a.transpose() - a.transpose() * a) + Scalar(0.25) * b * b.transpose();
    rb.r2 += a.transpose() * b;
    rb.r3 += Scalar(-0.5) * b.transpose() * b;
    a_sym.push_back(symmetric_part(a));
  }
  for (Index i = 0; i < l; ++i)
    rb.r2 += d.d_blocks[static_cast<std::size_t>(i)].transpose() * d.c_blocks[static_cast<std::size_t>(i)];
  if (m > 0) {
    rb.r1 -= d.t * a_sym[0];
    rb.r2 += d.t * d.b_blocks[0];
  }
  rb.r2 *= Scalar(-0.5);
  for (Index p = 0; p < m; ++p)
    for (Index q = 0; q < m; ++q)
      rb.r3(p, q) -= trace_inner_product(a_sym[static_cast<std::size_t>(p)], a_sym[static_cast<std::size_t>(q)]);

  rb.assembled.resize(l + m, l + m);
  rb.assembled.topLeftCorner(l, l) = rb.r1;
  rb.assembled.topRightCorner(l, m) = rb.r2;
  rb.assembled.bottomLeftCorner(m, l) = rb.r2.transpose();
  rb.assembled.bottomRightCorner(m, m) = rb.r3;
  return rb;
}

/// Relative Frobenius deviation ||X - Y||_F / max(1, ||Y||_F).
template <typename Scalar>
Scalar relative_deviation(const Matrix<Scalar>& x, const Matrix<Scalar>& y) {
  return (x - y).norm() / std::max(Scalar(1), y.norm());
}

/// Deviation between the block formula and the direct formula, the latter
/// rotated into the adapted frame.
template <typename Scalar>
Scalar route_deviation(const MetricLieAlgebra<Scalar>& m, const AdaptedDecomposition<Scalar>& d) {
  const Matrix<Scalar> direct = d.frame.transpose() * ricci_direct_matrix(m) * d.frame;
  return relative_deviation<Scalar>(ricci_blocks(d).assembled, direct);
}

/// Ricci operator of a nilpotent metric Lie algebra (no Killing or H terms).
template <typename Scalar>
RicciReport<Scalar> ricci_nilpotent(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {}) {
  if (!structural_predicates(m.onb_algebra(), tol).is_nilpotent) throw DomainError("ricci_nilpotent: algebra is not nilpotent");
  std::vector<Matrix<Scalar>> ds;
  for (Index i = 0; i < m.dim(); ++i) ds.push_back(ad_basis(m.constants_onb(), i));
  return make_ricci_report(nilpotent_ricci_from_ads(ds, m.dim()), tol.zero);
}

/// -1/4 sum_{i,j,k} (C_ij^k)^2 over an orthonormal basis: the scalar
/// curvature of a nilpotent metric Lie algebra.
template <typename Scalar>
Scalar nilpotent_scalar_curvature(const MetricLieAlgebra<Scalar>& m) {
  return Scalar(-0.25) * m.constants_onb().squared_norm();
}

/// Quantities of the reduction for dim a = 1 and A not skew.
template <typename Scalar = double>
struct Codim1Reduction {
  /// r = <A^s, A^s>
  Scalar r = 0;
  Scalar t = 0;
  /// -1/2 <D_i, A>
  Vector<Scalar> r2_entries;
  /// R2 from the block formula; matches r2_entries.
  Vector<Scalar> r2_block;
  /// R1 + (1/r) R2 R2'
  Matrix<Scalar> r_tilde;
  /// trace(Ric^n) - t^2 + (1/r) trace(R2 R2')
  Scalar trace_test = 0;
  /// L Ric L' with L = [I, R2/r; 0, 1]; block diagonal diag(r_tilde, -r).
  Matrix<Scalar> congruent;
  Signature ricci_signature;
  Signature r_tilde_signature;
  /// (Ric has >= 2 negative eigenvalues) <=> (r_tilde has >= 1).
  bool equivalence_holds = false;
  /// trace_test < 0 implies Ric has >= 2 negative eigenvalues.
  bool trace_test_consistent = false;
};

template <typename Scalar>
Codim1Reduction<Scalar> codim1_reduction(const AdaptedDecomposition<Scalar>& d, const Tolerances<Scalar>& tol = {}) {
  if (d.m != 1) throw DomainError("codim1_reduction: requires dim a = 1");
  const Matrix<Scalar>& a = d.a_blocks[0];
  const Matrix<Scalar> as = symmetric_part(a);
  Codim1Reduction<Scalar> out;
  out.r = trace_inner_product(as, as);
  out.t = d.t;
  if (!(out.r > tol.predicate * (Scalar(1) + a.squaredNorm())))
    throw DomainError("codim1_reduction: ad(f)|n is skew-symmetric (r = 0)");

  const auto rb = ricci_blocks(d);
  const Index l = d.l;
  out.r2_entries.resize(l);
  for (Index i = 0; i < l; ++i) out.r2_entries(i) = Scalar(-0.5) * trace_inner_product(d.d_blocks[static_cast<std::size_t>(i)], a);
  out.r2_block = rb.r2.col(0);
  out.r_tilde = rb.r1 + (out.r2_block * out.r2_block.transpose()) / out.r;
  out.trace_test = rb.ricci_n.trace() - out.t * out.t + out.r2_block.squaredNorm() / out.r;

  Matrix<Scalar> lmat = Matrix<Scalar>::Identity(l + 1, l + 1);
  lmat.topRightCorner(l, 1) = out.r2_block / out.r;
  out.congruent = lmat * rb.assembled * lmat.transpose();

  out.ricci_signature = eigen_signature<Scalar>(rb.assembled, tol.zero).signature;
  out.r_tilde_signature = eigen_signature<Scalar>(out.r_tilde, tol.zero).signature;
  const bool two_neg = out.ricci_signature.negative >= 2;
  out.equivalence_holds = two_neg == (out.r_tilde_signature.negative >= 1);
  out.trace_test_consistent = !(out.trace_test < -tol.zero * (Scalar(1) + out.r_tilde.norm())) || two_neg;
  return out;
}

}  // namespace metlie
