#pragma once

// Seeded construction of test instances.
//
// Random algebras are Lie subalgebras of (strictly) upper triangular k x k
// matrices, grown one random element at a time and closed under the
// commutator, so Jacobi and solvability (nilpotency) hold by construction.
//
// Randomness comes from SplitMix64 only; doubles are drawn as
// (next() >> 11) * 2^-53. Every function documents the order in which it
// consumes the stream, so the same seed reproduces the same bits everywhere.

#include <metlie/derivations.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace metlie {

/// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// [0, n), n > 0; modulo reduction.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  bool chance(double p) { return uniform() < p; }

  /// Independent child stream seeded from the next draw.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// Seed of instance `index` in a campaign seeded with `seed`.
inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) { return seed ^ index; }

template <typename Scalar>
Matrix<Scalar> random_uniform_matrix(SplitMix64& rng, Index rows, Index cols, double lo = -1, double hi = 1) {
  Matrix<Scalar> m(rows, cols);
  // row-major draw order
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Scalar(rng.uniform(lo, hi));
  return m;
}

/// Orthogonal matrix from the QR factorization of a uniform random matrix,
/// with column signs fixed so that R has a positive diagonal.
template <typename Scalar>
Matrix<Scalar> random_orthogonal(SplitMix64& rng, Index n) {
  const Matrix<Scalar> m = random_uniform_matrix<Scalar>(rng, n, n);
  Eigen::HouseholderQR<Matrix<Scalar>> qr(m);
  Matrix<Scalar> q = qr.householderQ() * Matrix<Scalar>::Identity(n, n);
  const Matrix<Scalar> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

/// G = M'M + 0.1 I, M uniform in [-1, 1] (row-major draws).
template <typename Scalar = double>
InnerProduct<Scalar> random_metric(Index dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const Matrix<Scalar> m = random_uniform_matrix<Scalar>(rng, dim, dim);
  Matrix<Scalar> g = m.transpose() * m + Scalar(0.1) * Matrix<Scalar>::Identity(dim, dim);
  g = (g + g.transpose()).eval() / Scalar(2);
  return InnerProduct<Scalar>(g);
}

namespace detail {

/// Frobenius-orthonormal basis of a matrix Lie algebra, grown by closure.
template <typename Scalar>
class MatrixClosure {
 public:
  explicit MatrixClosure(Index k) : k_(k) {}

  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<Matrix<Scalar>>& basis() const { return basis_; }

  /// Adds x and closes under commutators. Returns false (leaving the closure
  /// in an unspecified state) once the dimension would exceed `cap`, or when
  /// some commutator is neither clearly inside the span nor clearly outside.
  bool add_and_close(const Matrix<Scalar>& x, Index cap) {
    std::vector<Matrix<Scalar>> pending{x};
    while (!pending.empty()) {
      Matrix<Scalar> y = pending.back();
      pending.pop_back();
      const Absorb a = absorb(y);
      if (a == Absorb::Ambiguous) return false;
      if (a == Absorb::Inside) continue;
      if (dim() > cap) return false;
      const Matrix<Scalar>& b = basis_.back();
      for (Index i = 0; i + 1 < dim(); ++i) pending.push_back(b * basis_[static_cast<std::size_t>(i)] - basis_[static_cast<std::size_t>(i)] * b);
    }
    return true;
  }

  /// Structure constants in the (orthonormal) basis.
  StructureConstants<Scalar> constants() const {
    const Index d = dim();
    StructureConstants<Scalar> c(d);
    for (Index i = 0; i < d; ++i)
      for (Index j = i + 1; j < d; ++j) {
        const auto& bi = basis_[static_cast<std::size_t>(i)];
        const auto& bj = basis_[static_cast<std::size_t>(j)];
        const Matrix<Scalar> comm = bi * bj - bj * bi;
        for (Index q = 0; q < d; ++q) {
          // roundoff from the orthogonalization is snapped to zero
          const Scalar v = trace_inner_product(comm, basis_[static_cast<std::size_t>(q)]);
          c.set(i, j, q, std::abs(v) <= Scalar(1e-14) ? Scalar(0) : v);
        }
      }
    return c;
  }

 private:
  enum class Absorb { Inside, Added, Ambiguous };

  // A residual between the two thresholds would either drop a genuine
  // component (breaking Jacobi) or normalize roundoff into a basis vector.
  Absorb absorb(Matrix<Scalar> y) {
    const Scalar scale = y.norm();
    if (scale == Scalar(0)) return Absorb::Inside;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) y -= trace_inner_product(y, b) * b;
    const Scalar rest = y.norm();
    const Scalar ref = std::max(Scalar(1), scale);
    if (rest <= Scalar(1e-10) * ref) return Absorb::Inside;
    if (rest <= Scalar(1e-5) * ref) return Absorb::Ambiguous;
    basis_.push_back(y / rest);
    return Absorb::Added;
  }

  Index k_;
  std::vector<Matrix<Scalar>> basis_;
};

/// Random upper triangular element. Draw order: band, density, then per
/// position (row-major over i <= j): keep-flag, value.
template <typename Scalar>
Matrix<Scalar> random_triangular_element(SplitMix64& rng, Index k, bool allow_diagonal) {
  Matrix<Scalar> x = Matrix<Scalar>::Zero(k, k);
  const Index min_offset = allow_diagonal ? 0 : 1;
  const Index band = min_offset + static_cast<Index>(rng.below(static_cast<std::uint64_t>(k - min_offset)));
  const double density = rng.uniform(0.2, 1.0);
  for (Index i = 0; i < k; ++i)
    for (Index j = i + min_offset; j < k; ++j) {
      const bool keep = rng.chance(density);
      const double v = rng.uniform(-1.0, 1.0);
      if (keep && j - i >= band) x(i, j) = Scalar(v);
    }
  return x;
}

template <typename Scalar>
LieAlgebra<Scalar> random_triangular_algebra(Index dim, std::uint64_t seed, bool nilpotent) {
  if (dim < 2 || dim > 12) throw InputError("random algebra: dimension must lie in 2..12");
  SplitMix64 rng(seed);
  Index k = 2;
  const auto capacity = [&](Index kk) { return nilpotent ? kk * (kk - 1) / 2 : kk * (kk + 1) / 2; };
  while (capacity(k) < dim) ++k;
  k += static_cast<Index>(rng.below(2));
  constexpr int kRestarts = 12;
  constexpr int kRejects = 60;
  for (int restart = 0; restart < kRestarts; ++restart, k += (restart % 3 == 0)) {
    MatrixClosure<Scalar> closure(k);
    int rejects = 0;
    while (closure.dim() < dim && rejects < kRejects) {
      const Matrix<Scalar> x = random_triangular_element<Scalar>(rng, k, !nilpotent && rng.chance(0.5));
      MatrixClosure<Scalar> trial = closure;
      if (trial.add_and_close(x, dim) && trial.dim() > closure.dim())
        closure = std::move(trial);
      else
        ++rejects;
    }
    if (closure.dim() != dim) continue;
    auto c = closure.constants();
    if (!validate_jacobi(c, Scalar(1e-10)).valid) continue;
    LieAlgebra<Scalar> alg(std::move(c));
    const auto p = structural_predicates(alg);
    if (nilpotent ? p.is_nilpotent : p.is_solvable) return alg;
  }
  throw Error("random algebra: could not reach the requested dimension");
}

}  // namespace detail

/// Random nilpotent algebra: closure of strictly upper triangular elements.
template <typename Scalar = double>
LieAlgebra<Scalar> random_nilpotent(Index dim, std::uint64_t seed) {
  return detail::random_triangular_algebra<Scalar>(dim, seed, true);
}

/// Random solvable algebra: closure of upper triangular elements.
template <typename Scalar = double>
LieAlgebra<Scalar> random_solvable(Index dim, std::uint64_t seed) {
  return detail::random_triangular_algebra<Scalar>(dim, seed, false);
}

/// n extended by generators f_j with [f_j, x] = D_j x and [f_j, f_k] = 0.
/// Basis order: n's basis, then f_1..f_m.
template <typename Scalar>
LieAlgebra<Scalar> semidirect(const LieAlgebra<Scalar>& n, const std::vector<Matrix<Scalar>>& derivs,
                              const Tolerances<Scalar>& tol = {}) {
  const Index l = n.dim();
  const Index m = static_cast<Index>(derivs.size());
  for (const auto& d : derivs) {
    if (d.rows() != l || d.cols() != l) throw InputError("semidirect: derivation has the wrong size");
    if (!is_derivation(n, d, tol)) throw DomainError("semidirect: matrix is not a derivation");
  }
  StructureConstants<Scalar> c(l + m);
  for (Index i = 0; i < l; ++i)
    for (Index j = i + 1; j < l; ++j)
      for (Index k = 0; k < l; ++k) c.set(i, j, k, n(i, j, k));
  for (Index j = 0; j < m; ++j)
    for (Index a = 0; a < l; ++a)
      for (Index k = 0; k < l; ++k) c.set(l + j, a, k, derivs[static_cast<std::size_t>(j)](k, a));
  return LieAlgebra<Scalar>(std::move(c), tol);
}

namespace detail {

/// R^l (l = 2q + s) with m commuting generators in block form
/// (q rotation-type 2x2 blocks, s 1x1 blocks) conjugated by a random
/// orthogonal frame. Generator 0 gets the normal non-skew part when
/// `one_negative`; every other generator is skew.
template <typename Scalar>
LieAlgebra<Scalar> block_semidirect(Index dim, std::uint64_t seed, bool one_negative) {
  SplitMix64 rng(seed);
  if (dim < 3) {
    if (one_negative) throw InputError("one_negative family needs dim >= 3");
    return LieAlgebra<Scalar>::abelian(dim);
  }
  Index q, s, m;
  if (one_negative) {
    // need at least two real eigen-directions (or a block plus a line) for a traceless normal non-skew part
    s = static_cast<Index>(rng.below(static_cast<std::uint64_t>(dim - 1)));  // 0..dim-2
    Index left = dim - s;
    q = std::max<Index>(0, (left - 1) / 2 - static_cast<Index>(rng.below(2)));
    if (2 * q + s < 2) s = 2 - 2 * q;
    m = dim - 2 * q - s;
    if (m < 1) {
      if (s > 0) --s; else --q;
      m = dim - 2 * q - s;
    }
    // a single rotation block has no traceless non-skew normal part
    if (q + s < 2) {
      q = 0;
      s = 2;
      m = dim - 2;
    }
  } else {
    q = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>((dim - 1) / 2)));
    s = 0;
    m = dim - 2 * q;
  }
  const Index l = 2 * q + s;
  const Matrix<Scalar> frame = random_orthogonal<Scalar>(rng, l);
  std::vector<Matrix<Scalar>> gens;
  for (Index j = 0; j < m; ++j) {
    Matrix<Scalar> g = Matrix<Scalar>::Zero(l, l);
    for (Index b = 0; b < q; ++b) {
      const Scalar theta = Scalar(rng.uniform(0.5, 2.0) * (rng.chance(0.5) ? 1 : -1));
      g(2 * b, 2 * b + 1) = -theta;
      g(2 * b + 1, 2 * b) = theta;
    }
    gens.push_back(g);
  }
  if (one_negative) {
    Matrix<Scalar>& g = gens[0];
    Vector<Scalar> re(q + s);
    for (Index i = 0; i < q + s; ++i) re(i) = Scalar(rng.uniform(-1.0, 1.0));
    // weights: 2 for a rotation block, 1 for a line
    Scalar tr = 0;
    for (Index b = 0; b < q; ++b) tr += 2 * re(b);
    for (Index i = 0; i < s; ++i) tr += re(q + i);
    const Scalar weight = Scalar(2 * q + s);
    for (Index b = 0; b < q; ++b) re(b) -= tr / weight;
    for (Index i = 0; i < s; ++i) re(q + i) -= tr / weight;
    for (Index b = 0; b < q; ++b) {
      g(2 * b, 2 * b) += re(b);
      g(2 * b + 1, 2 * b + 1) += re(b);
    }
    for (Index i = 0; i < s; ++i) g(2 * q + i, 2 * q + i) = re(q + i);
  }
  for (auto& g : gens) g = frame * g * frame.transpose();
  return semidirect(LieAlgebra<Scalar>::abelian(l), gens);
}

}  // namespace detail

/// R^l extended by commuting skew derivations: Ricci flat for the identity metric.
template <typename Scalar = double>
LieAlgebra<Scalar> random_flat(Index dim, std::uint64_t seed) {
  return detail::block_semidirect<Scalar>(dim, seed, false);
}

/// R^l extended by one traceless normal non-skew derivation and commuting
/// skew ones: one negative Ricci eigenvalue for the identity metric.
template <typename Scalar = double>
LieAlgebra<Scalar> random_one_negative(Index dim, std::uint64_t seed) {
  return detail::block_semidirect<Scalar>(dim, seed, true);
}

inline std::vector<std::string> catalog_names() {
  return {"abelian_<n>", "heisenberg3", "filiform_n4", "hyperbolic2", "diag_split", "euclid_motion", "grading_ext"};
}

/// Named instances with integer structure constants and the identity metric.
///
///   abelian_<n>    R^n, 1 <= n <= 12
///   heisenberg3    [e1,e2] = e3
///   filiform_n4    [e1,e2] = e3, [e1,e3] = e4
///   hyperbolic2    basis (e, f), [f,e] = e
///   diag_split     R^2 extended by diag(1,-1)
///   euclid_motion  R^2 extended by the rotation generator: [f,e1] = e2, [f,e2] = -e1
///   grading_ext    heisenberg3 extended by diag(1,1,2)
template <typename Scalar = double>
MetricLieAlgebra<Scalar> catalog(const std::string& name) {
  using Alg = LieAlgebra<Scalar>;
  const auto heis = [] { return Alg::from_entries(3, {{0, 1, 2, Scalar(1)}}); };
  Alg alg;
  if (name.rfind("abelian_", 0) == 0) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(name.substr(8), &used);
    } catch (const std::exception&) {
      throw InputError("unknown catalog entry: " + name);
    }
    if (used != name.size() - 8 || n < 1 || n > 12) throw InputError("unknown catalog entry: " + name);
    alg = Alg::abelian(n);
  } else if (name == "heisenberg3") {
    alg = heis();
  } else if (name == "filiform_n4") {
    alg = Alg::from_entries(4, {{0, 1, 2, Scalar(1)}, {0, 2, 3, Scalar(1)}});
  } else if (name == "hyperbolic2") {
    alg = Alg::from_entries(2, {{1, 0, 0, Scalar(1)}});
  } else if (name == "diag_split") {
    Matrix<Scalar> d = Matrix<Scalar>::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = -1;
    alg = semidirect(Alg::abelian(2), {d});
  } else if (name == "euclid_motion") {
    Matrix<Scalar> j = Matrix<Scalar>::Zero(2, 2);
    j(1, 0) = 1;
    j(0, 1) = -1;
    alg = semidirect(Alg::abelian(2), {j});
  } else if (name == "grading_ext") {
    Matrix<Scalar> g = Matrix<Scalar>::Zero(3, 3);
    g.diagonal() << 1, 1, 2;
    alg = semidirect(heis(), {g});
  } else {
    throw InputError("unknown catalog entry: " + name);
  }
  return MetricLieAlgebra<Scalar>::with_identity(std::move(alg));
}

enum class Family { Catalog, RandomNilpotent, RandomSolvable, Semidirect };

/// Which instance shape the `semidirect` family builds.
enum class SemidirectKind { Flat, OneNegative };

struct GeneratorSpec {
  Family family = Family::Catalog;
  Index dim = 0;
  std::uint64_t seed = 0;
  std::string catalog_name;
  SemidirectKind kind = SemidirectKind::Flat;
};

template <typename Scalar = double>
LieAlgebra<Scalar> generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Catalog: return catalog<Scalar>(spec.catalog_name).algebra();
    case Family::RandomNilpotent: return random_nilpotent<Scalar>(spec.dim, spec.seed);
    case Family::RandomSolvable: return random_solvable<Scalar>(spec.dim, spec.seed);
    case Family::Semidirect:
      return spec.kind == SemidirectKind::Flat ? random_flat<Scalar>(spec.dim, spec.seed)
                                               : random_one_negative<Scalar>(spec.dim, spec.seed);
  }
  throw InputError("unknown generator family");
}

}  // namespace metlie
