#pragma once

// Three-way classification of solvable metric Lie algebras by the sign
// pattern of the Ricci operator, decided structurally and cross-checked
// against the spectrum.

#include <metlie/ricci.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace metlie {

enum class RicciCase {
  /// n and a abelian, every ad(X)|n skew: Ric = 0.
  Flat,
  /// n and a abelian, ad(X)|n traceless and normal, skew directions of
  /// codimension one in a: exactly one negative eigenvalue, the rest zero.
  OneNegative,
  /// At least two negative eigenvalues.
  TwoNegative,
};

/// Which branch of the case analysis over the skew directions
/// a~ = {X in a : ad(X) skew on s} applies.
enum class CaseBranch {
  /// dim a - dim a~ >= 2
  ManyNonSkew,
  /// dim a - dim a~ = 1, n abelian, the non-skew generator traceless normal
  OneNonSkewNormal,
  /// dim a - dim a~ = 1, otherwise
  OneNonSkewOther,
  /// a~ = a, n abelian
  AllSkewAbelian,
  /// a~ = a, n not abelian
  AllSkewNonAbelian,
};

inline const char* to_string(RicciCase c) {
  switch (c) {
    case RicciCase::Flat: return "flat";
    case RicciCase::OneNegative: return "one_negative";
    case RicciCase::TwoNegative: return "two_negative";
  }
  return "?";
}

inline const char* to_string(CaseBranch b) {
  switch (b) {
    case CaseBranch::ManyNonSkew: return "many_non_skew";
    case CaseBranch::OneNonSkewNormal: return "one_non_skew_normal";
    case CaseBranch::OneNonSkewOther: return "one_non_skew_other";
    case CaseBranch::AllSkewAbelian: return "all_skew_abelian";
    case CaseBranch::AllSkewNonAbelian: return "all_skew_non_abelian";
  }
  return "?";
}

/// Case the branch forces.
inline RicciCase implied_case(CaseBranch b) {
  switch (b) {
    case CaseBranch::OneNonSkewNormal: return RicciCase::OneNegative;
    case CaseBranch::AllSkewAbelian: return RicciCase::Flat;
    default: return RicciCase::TwoNegative;
  }
}

/// Whether a spectral signature is what the case promises.
inline bool signature_matches(RicciCase c, const Signature& s) {
  const int dim = s.negative + s.zero + s.positive;
  switch (c) {
    case RicciCase::Flat: return s.negative == 0 && s.positive == 0 && s.zero == dim;
    case RicciCase::OneNegative: return s.negative == 1 && s.positive == 0 && s.zero == dim - 1;
    case RicciCase::TwoNegative: return s.negative >= 2;
  }
  return false;
}

template <typename Scalar = double>
struct Classification {
  RicciCase ricci_case = RicciCase::TwoNegative;
  CaseBranch branch = CaseBranch::ManyNonSkew;

  bool n_abelian = false;
  bool a_abelian = false;
  Index n_dim = 0;
  Index a_dim = 0;
  /// {X in a : ad(X)|n skew}, frame coordinates.
  Subspace<Scalar> skew_subspace_b;
  Index codim_b = 0;
  /// dim of {X in a : ad(X) skew on all of s}
  Index skew_directions_dim = 0;
  /// Predicates of ad(f_j)|n for the adapted generators f_j.
  std::vector<OperatorPredicates> generator_predicates;
  bool all_traceless_normal = false;

  RicciReport<Scalar> ricci;
  bool consistent = false;
  Tolerances<Scalar> tolerances;
};

/// Raised by classify() when the structural and spectral routes disagree.
template <typename Scalar>
class RouteDisagreement : public Error {
 public:
  explicit RouteDisagreement(Classification<Scalar> c) : Error(describe(c)), witness_(std::move(c)) {}
  const Classification<Scalar>& witness() const { return witness_; }

 private:
  static std::string describe(const Classification<Scalar>& c) {
    std::ostringstream msg;
    msg << "structural case " << to_string(c.ricci_case) << " (branch " << to_string(c.branch)
        << ") disagrees with spectral signature (" << c.ricci.signature.negative << ", " << c.ricci.signature.zero
        << ", " << c.ricci.signature.positive << "); zero band " << c.ricci.zero_band;
    return msg.str();
  }
  Classification<Scalar> witness_;
};

/// Structural and spectral classification without throwing on disagreement;
/// inspect `consistent`.
template <typename Scalar>
Classification<Scalar> classify_unchecked(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {}) {
  const auto d = adapted_decomposition(m, tol);
  const Index l = d.l, mm = d.m;
  const Scalar scale = Scalar(1) + m.constants_onb().max_abs();
  const Scalar band = tol.predicate * scale;

  Classification<Scalar> c;
  c.tolerances = tol;
  c.n_dim = l;
  c.a_dim = mm;

  Scalar n_brackets = 0;
  for (const auto& di : d.d_blocks) n_brackets = std::max(n_brackets, di.size() ? di.cwiseAbs().maxCoeff() : Scalar(0));
  c.n_abelian = n_brackets <= band;
  // [f_i, f_j] = B_i e_j lies in n; a is an abelian subalgebra iff all B vanish
  Scalar a_brackets = d.block_residual;
  for (const auto& b : d.b_blocks) a_brackets = std::max(a_brackets, b.size() ? b.cwiseAbs().maxCoeff() : Scalar(0));
  c.a_abelian = a_brackets <= band;

  c.all_traceless_normal = true;
  Matrix<Scalar> sym_n(l * l, mm), sym_s(m.dim() * m.dim(), mm);
  for (Index j = 0; j < mm; ++j) {
    const auto& a = d.a_blocks[static_cast<std::size_t>(j)];
    const auto p = operator_predicates(a, tol.predicate);
    c.generator_predicates.push_back(p);
    c.all_traceless_normal = c.all_traceless_normal && p.is_traceless && p.is_normal;
    sym_n.col(j) = vectorize(symmetric_part(a));
    Matrix<Scalar> full = Matrix<Scalar>::Zero(m.dim(), m.dim());
    full.topLeftCorner(l, l) = a;
    full.topRightCorner(l, mm) = d.b_blocks[static_cast<std::size_t>(j)];
    sym_s.col(j) = vectorize(symmetric_part(full));
  }

  const Matrix<Scalar> b_coords = nullspace(sym_n, tol.rank, scale);
  c.skew_subspace_b = Subspace<Scalar>(m.dim(), Matrix<Scalar>(d.a_basis() * b_coords));
  c.codim_b = mm - b_coords.cols();
  const Matrix<Scalar> skew_coords = nullspace(sym_s, tol.rank, scale);
  c.skew_directions_dim = skew_coords.cols();

  if (c.n_abelian && c.a_abelian && c.codim_b == 0)
    c.ricci_case = RicciCase::Flat;
  else if (c.n_abelian && c.a_abelian && c.codim_b == 1 && c.all_traceless_normal)
    c.ricci_case = RicciCase::OneNegative;
  else
    c.ricci_case = RicciCase::TwoNegative;

  const Index non_skew = mm - c.skew_directions_dim;
  if (non_skew >= 2) {
    c.branch = CaseBranch::ManyNonSkew;
  } else if (non_skew == 1) {
    // the generator orthogonal to the skew directions
    const Matrix<Scalar> g = orthogonal_complement<Scalar>(skew_coords, mm);
    Matrix<Scalar> ag = Matrix<Scalar>::Zero(l, l);
    for (Index j = 0; j < mm; ++j) ag += g(j, 0) * d.a_blocks[static_cast<std::size_t>(j)];
    const auto p = operator_predicates(ag, tol.predicate);
    c.branch = (c.n_abelian && p.is_traceless && p.is_normal && !p.is_skew) ? CaseBranch::OneNonSkewNormal
                                                                             : CaseBranch::OneNonSkewOther;
  } else {
    c.branch = c.n_abelian ? CaseBranch::AllSkewAbelian : CaseBranch::AllSkewNonAbelian;
  }

  c.ricci = ricci_direct(m, tol);
  c.consistent = signature_matches(c.ricci_case, c.ricci.signature) && implied_case(c.branch) == c.ricci_case;
  return c;
}

/// classify_unchecked, but route disagreement throws RouteDisagreement.
template <typename Scalar>
Classification<Scalar> classify(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {}) {
  auto c = classify_unchecked(m, tol);
  if (!c.consistent) throw RouteDisagreement<Scalar>(std::move(c));
  return c;
}

/// For a non-unimodular solvable metric algebra: classified TwoNegative with
/// at least two negative eigenvalues.
template <typename Scalar>
bool verify_theorem2(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {}) {
  const auto p = structural_predicates(m.onb_algebra(), tol);
  if (!p.is_solvable) throw DomainError("verify_theorem2: algebra is not solvable");
  if (p.is_unimodular) throw DomainError("verify_theorem2: algebra is unimodular");
  const auto c = classify_unchecked(m, tol);
  return c.ricci_case == RicciCase::TwoNegative && c.ricci.signature.negative >= 2;
}

struct CorollaryChecks {
  /// Some eigenvalue is positive.
  bool has_positive = false;
  /// has_positive implies at least two negative eigenvalues.
  bool positive_implies_two_negative = true;
  /// a fails to be an abelian subalgebra.
  bool a_not_abelian = false;
  /// a_not_abelian implies TwoNegative.
  bool nonabelian_a_implies_two_negative = true;

  bool holds() const { return positive_implies_two_negative && nonabelian_a_implies_two_negative; }
};

template <typename Scalar>
CorollaryChecks verify_corollaries(const Classification<Scalar>& c) {
  CorollaryChecks out;
  out.has_positive = c.ricci.signature.positive >= 1;
  out.positive_implies_two_negative = !out.has_positive || c.ricci.signature.negative >= 2;
  out.a_not_abelian = !c.a_abelian;
  out.nonabelian_a_implies_two_negative = c.a_abelian || c.ricci_case == RicciCase::TwoNegative;
  return out;
}

template <typename Scalar>
CorollaryChecks verify_corollaries(const MetricLieAlgebra<Scalar>& m, const Tolerances<Scalar>& tol = {}) {
  return verify_corollaries(classify_unchecked(m, tol));
}

}  // namespace metlie
