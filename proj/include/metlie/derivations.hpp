#pragma once

// Derivations of a (nilpotent) Lie algebra, the projection onto inner
// derivations, the filtration subspaces L1/L2/L3 and the facts about them
// that the signature argument relies on, each as a checkable quantity.
//
// Coordinates are taken to be orthonormal: pass MetricLieAlgebra::onb_algebra()
// when a metric is in play. The V_k, <.,.> and adjoints all depend on that
// inner product.

#include <metlie/ricci.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace metlie {

/// max over i < j of |A[e_i,e_j] - [A e_i, e_j] - [e_i, A e_j]|.
template <typename Scalar>
Scalar leibniz_residual(const LieAlgebra<Scalar>& alg, const Matrix<Scalar>& a) {
  const Index n = alg.dim();
  if (a.rows() != n || a.cols() != n) throw InputError("leibniz_residual: dimension mismatch");
  std::vector<Matrix<Scalar>> ads;
  for (Index i = 0; i < n; ++i) ads.push_back(ad_basis(alg.constants(), i));
  Scalar worst = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Vector<Scalar> r = a * alg.constants().basis_bracket(i, j) + ads[static_cast<std::size_t>(j)] * a.col(i) -
                               ads[static_cast<std::size_t>(i)] * a.col(j);
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  return worst;
}

template <typename Scalar>
bool is_derivation(const LieAlgebra<Scalar>& alg, const Matrix<Scalar>& a, const Tolerances<Scalar>& tol = {}) {
  return leibniz_residual(alg, a) <= tol.derivation * (Scalar(1) + a.norm()) * (Scalar(1) + alg.constants().max_abs());
}

/// Der(n) and InnDer(n) with the data needed for projections and filtration
/// tests. Immutable once built.
template <typename Scalar = double>
class DerivationSpace {
 public:
  DerivationSpace(LieAlgebra<Scalar> alg, const Tolerances<Scalar>& tol = {}) : alg_(std::move(alg)), tol_(tol) {
    const Index l = alg_.dim();
    const auto& c = alg_.constants();
    // Leibniz constraints: one row per (i<j, k), unknowns D(a,b) at a + b*l.
    Matrix<Scalar> system = Matrix<Scalar>::Zero(l * (l - 1) / 2 * l, l * l);
    Index row = 0;
    for (Index i = 0; i < l; ++i)
      for (Index j = i + 1; j < l; ++j)
        for (Index k = 0; k < l; ++k, ++row) {
          for (Index q = 0; q < l; ++q) {
            system(row, k + q * l) += c(i, j, q);   // (D[e_i,e_j])_k
            system(row, q + i * l) -= c(q, j, k);   // ([D e_i, e_j])_k
            system(row, q + j * l) -= c(i, q, k);   // ([e_i, D e_j])_k
          }
        }
    const Matrix<Scalar> null = nullspace(system, tol.rank, Scalar(1) + c.max_abs());
    for (Index s = 0; s < null.cols(); ++s) der_.push_back(unvectorize<Scalar>(Vector<Scalar>(null.col(s)), l));

    Matrix<Scalar> ads(l * l, l);
    for (Index i = 0; i < l; ++i) ads.col(i) = vectorize(ad_basis(c, i));
    const auto sel = pivoted_span(ads, tol.rank, Scalar(1) + c.max_abs());
    for (Index p : sel.pivots) {
      inner_index_.push_back(p);
      inner_.push_back(ad_basis(c, p));
    }
    inner_onb_ = sel.basis;
    const auto k = static_cast<Index>(inner_.size());
    gram_inner_.resize(k, k);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b)
        gram_inner_(a, b) = trace_inner_product(inner_[static_cast<std::size_t>(a)], inner_[static_cast<std::size_t>(b)]);

    lcs_ = lower_central_series(alg_, tol);
    nilpotent_ = lcs_.back().dim() == 0;
    if (nilpotent_) {
      for (std::size_t q = 1; q < lcs_.size(); ++q) {
        // V_q: complement of n^q inside n^{q-1}
        const Matrix<Scalar>& prev = lcs_[q - 1].basis();
        const Matrix<Scalar> coords = prev.transpose() * lcs_[q].basis();
        const Matrix<Scalar> rest = orthogonal_complement<Scalar>(coords, prev.cols());
        v_.emplace_back(l, Matrix<Scalar>(prev * rest));
      }
    }
  }

  const LieAlgebra<Scalar>& algebra() const { return alg_; }
  const Tolerances<Scalar>& tolerances() const { return tol_; }
  /// Orthonormal under <.,.>.
  const std::vector<Matrix<Scalar>>& der_basis() const { return der_; }
  /// Independent subset of {ad(e_i)} picked by pivoted elimination.
  const std::vector<Matrix<Scalar>>& inner_basis() const { return inner_; }
  const std::vector<Index>& inner_indices() const { return inner_index_; }
  const Matrix<Scalar>& gram_inner() const { return gram_inner_; }
  /// Orthonormal basis of vectorized InnDer, one column per element.
  const Matrix<Scalar>& inner_orthonormal() const { return inner_onb_; }
  Index der_dim() const { return static_cast<Index>(der_.size()); }
  Index inner_dim() const { return static_cast<Index>(inner_.size()); }

  bool nilpotent() const { return nilpotent_; }
  /// n^0, n^1, ..., n^p = 0 (for nilpotent algebras).
  const std::vector<Subspace<Scalar>>& lower_central() const { return lcs_; }
  /// V_1, ..., V_p; empty when not nilpotent.
  const std::vector<Subspace<Scalar>>& complements() const { return v_; }

  /// Basis ordered V_1, V_2, ..., V_p, with the block sizes. In this basis L2
  /// members are block diagonal and L3 members strictly block lower triangular.
  std::pair<Matrix<Scalar>, std::vector<Index>> filtration_frame() const {
    require_nilpotent("filtration_frame");
    Matrix<Scalar> frame(alg_.dim(), alg_.dim());
    std::vector<Index> sizes;
    Index col = 0;
    for (const auto& v : v_) {
      frame.middleCols(col, v.dim()) = v.basis();
      sizes.push_back(v.dim());
      col += v.dim();
    }
    return {frame, sizes};
  }

  void require_nilpotent(const char* what) const {
    if (!nilpotent_) throw DomainError(std::string(what) + ": algebra is not nilpotent");
  }

 private:
  LieAlgebra<Scalar> alg_;
  Tolerances<Scalar> tol_;
  std::vector<Matrix<Scalar>> der_;
  std::vector<Matrix<Scalar>> inner_;
  std::vector<Index> inner_index_;
  Matrix<Scalar> gram_inner_;
  Matrix<Scalar> inner_onb_;
  std::vector<Subspace<Scalar>> lcs_;
  std::vector<Subspace<Scalar>> v_;
  bool nilpotent_ = false;
};

template <typename Scalar>
DerivationSpace<Scalar> derivation_algebra(const LieAlgebra<Scalar>& alg, const Tolerances<Scalar>& tol = {}) {
  return DerivationSpace<Scalar>(alg, tol);
}

template <typename Scalar>
DerivationSpace<Scalar> derivation_algebra(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {}) {
  return DerivationSpace<Scalar>(m.onb_algebra(), tol);
}

/// <.,.>-orthogonal projection of a derivation onto InnDer.
///
/// Projects on the orthonormalized span rather than solving the normal
/// equations with gram_inner, which loses digits when the ad(e_i) are close
/// to dependent.
template <typename Scalar>
Matrix<Scalar> project_inner(const DerivationSpace<Scalar>& ds, const Matrix<Scalar>& a) {
  if (!is_derivation(ds.algebra(), a, ds.tolerances())) throw DomainError("project_inner: matrix is not a derivation");
  const Index l = ds.algebra().dim();
  if (ds.inner_dim() == 0) return Matrix<Scalar>::Zero(l, l);
  const Matrix<Scalar>& q = ds.inner_orthonormal();
  const Vector<Scalar> v = vectorize(a);
  return unvectorize<Scalar>(Vector<Scalar>(q * (q.transpose() * v)), l);
}

template <typename Scalar = double>
struct FiltrationMembership {
  bool in_l1 = false;
  bool in_l2 = false;
  bool in_l3 = false;
  Scalar residual_l1 = 0;
  Scalar residual_l2 = 0;
  Scalar residual_l3 = 0;
};

/// L1: A(n^k) in n^k;  L2: A(V_k) in V_k;  L3: A(n^k) in n^{k+1}.
/// Inclusions are decided by projection residual <= tol * (1 + ||A||_F).
template <typename Scalar>
FiltrationMembership<Scalar> filtration_membership(const DerivationSpace<Scalar>& ds, const Matrix<Scalar>& a, Scalar tol) {
  ds.require_nilpotent("filtration_membership");
  const auto& lcs = ds.lower_central();
  const Index p = static_cast<Index>(lcs.size()) - 1;
  FiltrationMembership<Scalar> f;
  for (Index k = 0; k < p; ++k) {
    const auto& nk = lcs[static_cast<std::size_t>(k)];
    const Matrix<Scalar> image = a * nk.basis();
    f.residual_l1 = std::max(f.residual_l1, nk.residual(image));
    f.residual_l3 = std::max(f.residual_l3, lcs[static_cast<std::size_t>(k + 1)].residual(image));
  }
  for (const auto& v : ds.complements()) f.residual_l2 = std::max(f.residual_l2, v.residual(Matrix<Scalar>(a * v.basis())));
  const Scalar band = tol * (Scalar(1) + a.norm());
  f.in_l1 = f.residual_l1 <= band;
  f.in_l2 = f.residual_l2 <= band;
  f.in_l3 = f.residual_l3 <= band;
  return f;
}

/// |2 trace(L^s L^s) - trace(L L')|, zero for nilpotent L.
template <typename Scalar>
Scalar nilpotent_symmetric_residual(const Matrix<Scalar>& l) {
  const Matrix<Scalar> ls = symmetric_part(l);
  return std::abs(Scalar(2) * (ls * ls).trace() - (l * l.transpose()).trace());
}

template <typename Scalar = double>
struct LemmaChecks {
  /// Projection of A onto InnDer and the remainder A - projection.
  Matrix<Scalar> projected;
  Matrix<Scalar> remainder;

  /// Nilpotent-matrix identity evaluated on the projection (an inner
  /// derivation, hence nilpotent).
  Scalar vnilp_residual = 0;

  /// trace(P P) and trace(P R), P = projection, R = remainder. Both vanish.
  Scalar trace_pp = 0;
  Scalar trace_pr = 0;

  /// <A^s, A^s> - 1/2 <P, P>  (>= 0), which equals <R^s, R^s>.
  Scalar symmetric_slack = 0;
  bool slack_is_zero = false;
  bool remainder_is_skew = false;
  /// slack_is_zero == remainder_is_skew
  bool equality_case_consistent = false;

  /// Filtration facts for A: A in L1 always; when A is in L2, its pairing with
  /// every inner derivation (all in L3) vanishes.
  FiltrationMembership<Scalar> membership;
  std::optional<Scalar> l2_l3_pairing;

  /// When A' is also a derivation, both A and A' lie in L2.
  bool transpose_is_derivation = false;
  std::optional<bool> transpose_pair_in_l2;
};

template <typename Scalar>
LemmaChecks<Scalar> lemma_checks(const DerivationSpace<Scalar>& ds, const Matrix<Scalar>& a) {
  ds.require_nilpotent("lemma_checks");
  const auto& tol = ds.tolerances();
  LemmaChecks<Scalar> out;
  out.projected = project_inner(ds, a);
  out.remainder = a - out.projected;
  const Matrix<Scalar>& p = out.projected;
  const Scalar scale = Scalar(1) + a.squaredNorm();

  out.vnilp_residual = nilpotent_symmetric_residual(p);
  out.trace_pp = (p * p).trace();
  out.trace_pr = (p * out.remainder).trace();

  const Matrix<Scalar> as = symmetric_part(a);
  out.symmetric_slack = trace_inner_product(as, as) - Scalar(0.5) * trace_inner_product(p, p);
  out.slack_is_zero = std::abs(out.symmetric_slack) <= tol.predicate * scale;
  out.remainder_is_skew = operator_predicates(out.remainder, tol.predicate).is_skew;
  out.equality_case_consistent = out.slack_is_zero == out.remainder_is_skew;

  out.membership = filtration_membership(ds, a, tol.predicate);
  if (out.membership.in_l2) {
    Scalar worst = 0;
    for (const auto& b : ds.inner_basis()) worst = std::max(worst, std::abs(trace_inner_product(a, b)));
    out.l2_l3_pairing = worst;
  }

  const Matrix<Scalar> at = a.transpose();
  out.transpose_is_derivation = is_derivation(ds.algebra(), at, tol);
  if (out.transpose_is_derivation)
    out.transpose_pair_in_l2 = out.membership.in_l2 && filtration_membership(ds, at, tol.predicate).in_l2;
  return out;
}

template <typename Scalar = double>
struct RicciDerivationCheck {
  /// <Ric^n, [A, A']>, never negative.
  Scalar value = 0;
  /// A' is a derivation.
  bool equality_flag = false;
  /// (value within the zero band) == equality_flag
  bool consistent = false;
};

template <typename Scalar>
RicciDerivationCheck<Scalar> riccider_check(const MetricLieAlgebra<Scalar>& m, const Matrix<Scalar>& a,
                                            const Tolerances<Scalar>& tol = {}) {
  const auto& alg = m.onb_algebra();
  if (!is_derivation(alg, a, tol)) throw DomainError("riccider_check: matrix is not a derivation");
  const auto ric = ricci_nilpotent(m, tol);
  const Matrix<Scalar> at = a.transpose();
  const Matrix<Scalar> comm = a * at - at * a;
  RicciDerivationCheck<Scalar> out;
  out.value = trace_inner_product(ric.ricci, comm);
  out.equality_flag = is_derivation(alg, at, tol);
  const Scalar band = tol.predicate * (Scalar(1) + ric.ricci.norm()) * (Scalar(1) + a.squaredNorm());
  out.consistent = (out.value <= band) == out.equality_flag;
  return out;
}

}  // namespace metlie
