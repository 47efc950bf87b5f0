#include <metlie/campaign.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace metlie {

using json = nlohmann::ordered_json;

void InstanceResult::track_max(const std::string& key, double v) {
  auto it = maxima.find(key);
  if (it == maxima.end() || v > it->second) maxima[key] = v;
}

void InstanceResult::track_min(const std::string& key, double v) {
  auto it = minima.find(key);
  if (it == minima.end() || v < it->second) minima[key] = v;
}

void InstanceResult::check(bool ok, const std::string& what) {
  if (!ok) violations.push_back(what);
}

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

Matrix<double> random_derivation(SplitMix64& rng, const DerivationSpace<double>& ds) {
  const Index l = ds.algebra().dim();
  Matrix<double> a = Matrix<double>::Zero(l, l);
  for (const auto& d : ds.der_basis()) a += rng.uniform(-1.0, 1.0) * d;
  const double n = a.norm();
  return n > 0 ? Matrix<double>(a / n) : a;
}

/// Derivations A whose transpose is a derivation too.
std::vector<Matrix<double>> transpose_closed_derivations(const DerivationSpace<double>& ds) {
  const Index l = ds.algebra().dim();
  const Index k = ds.der_dim();
  std::vector<Matrix<double>> out;
  if (k == 0) return out;
  Matrix<double> stacked(l * l, 2 * k);
  for (Index i = 0; i < k; ++i) {
    const auto& d = ds.der_basis()[static_cast<std::size_t>(i)];
    stacked.col(i) = vectorize(d);
    stacked.col(k + i) = -vectorize(Matrix<double>(d.transpose()));
  }
  const Matrix<double> null = nullspace(stacked, 1e-9, 1.0);
  Matrix<double> span(l * l, null.cols());
  for (Index c = 0; c < null.cols(); ++c) span.col(c) = stacked.leftCols(k) * null.col(c).head(k);
  const auto basis = pivoted_span(span, 1e-9, 1.0).basis;
  for (Index c = 0; c < basis.cols(); ++c) out.push_back(unvectorize(Vector<double>(basis.col(c)), l));
  return out;
}

LieAlgebra<double> random_non_unimodular(SplitMix64& rng, Index dim, const Tolerances<double>& tol) {
  const bool solvable_first = rng.below(2) == 0 || dim == 2;
  for (int round = 0; round < 16; ++round) {
    if (solvable_first || round % 2 == 1) {
      for (int attempt = 0; attempt < 16; ++attempt) {
        auto alg = random_solvable<double>(dim, rng.next());
        if (!structural_predicates(alg, tol).is_unimodular) return alg;
      }
      if (dim == 2) continue;
    }
    const auto n = dim - 1 >= 2 ? random_nilpotent<double>(dim - 1, rng.next()) : LieAlgebra<double>::abelian(dim - 1);
    const auto ds = derivation_algebra(n, tol);
    // characteristically nilpotent n: every derivation is traceless
    double trace = 0;
    for (const auto& d : ds.der_basis()) trace = std::max(trace, std::abs(d.trace()));
    if (trace <= 1e-6) continue;
    for (int attempt = 0; attempt < 16; ++attempt) {
      auto alg = semidirect(n, {random_derivation(rng, ds)}, tol);
      if (!structural_predicates(alg, tol).is_unimodular) return alg;
    }
  }
  throw Error("random_non_unimodular: no non-unimodular draw");
}

InstanceResult with_instance(const LieAlgebra<double>& alg, const InnerProduct<double>& metric) {
  InstanceResult r;
  r.algebra = make_algebra_file(alg, metric);
  return r;
}

// Suites --------------------------------------------------------------------

void check_classification(InstanceResult& r, const MetricLieAlgebra<double>& m, const Tolerances<double>& tol,
                          bool full) {
  const auto c = classify_unchecked(m, tol);
  r.labels.push_back(std::string("case ") + to_string(c.ricci_case));
  const auto& s = c.ricci.signature;
  if (full) {
    r.check(c.consistent, std::string("structural case ") + to_string(c.ricci_case) + " (branch " +
                              to_string(c.branch) + ") disagrees with signature (" + std::to_string(s.negative) +
                              ", " + std::to_string(s.zero) + ", " + std::to_string(s.positive) + ")");
    if (c.ricci_case == RicciCase::Flat)
      r.check(std::abs(c.ricci.scalar_curvature) <= c.ricci.zero_band,
              "flat instance with scalar curvature " + fmt(c.ricci.scalar_curvature));
    else
      r.check(c.ricci.scalar_curvature < 0, "non-flat instance with scalar curvature " + fmt(c.ricci.scalar_curvature));
  }
  const auto cor = verify_corollaries(c);
  if (cor.has_positive) r.labels.push_back("positive eigenvalue");
  if (cor.a_not_abelian) r.labels.push_back("a not abelian");
  r.check(cor.positive_implies_two_negative, "positive eigenvalue with fewer than two negative ones");
  r.check(cor.nonabelian_a_implies_two_negative, "a not an abelian subalgebra but case " +
                                                     std::string(to_string(c.ricci_case)));
}

InstanceResult suite_theorem1(Index dim, SplitMix64& rng, const Tolerances<double>& tol, bool full) {
  auto s = sample_solvable_instance(dim, rng.next());
  auto r = with_instance(s.algebra, s.metric);
  r.labels.push_back("family " + s.family);
  check_classification(r, MetricLieAlgebra<double>(s.algebra, s.metric, tol), tol, full);
  return r;
}

InstanceResult suite_theorem2(Index dim, SplitMix64& rng, const Tolerances<double>& tol) {
  const auto alg = random_non_unimodular(rng, dim, tol);
  const auto metric = random_metric<double>(dim, rng.next());
  auto r = with_instance(alg, metric);
  const MetricLieAlgebra<double> m(alg, metric, tol);
  const auto c = classify_unchecked(m, tol);
  r.labels.push_back(std::string("case ") + to_string(c.ricci_case));
  r.track_min("negative eigenvalue count", c.ricci.signature.negative);
  r.check(c.consistent, "structural and spectral routes disagree");
  r.check(verify_theorem2(m, tol), "non-unimodular instance with " + std::to_string(c.ricci.signature.negative) +
                                       " negative eigenvalues");
  return r;
}

InstanceResult suite_theorem3(Index dim, SplitMix64& rng, const Tolerances<double>& tol) {
  InstanceResult r;
  if (dim < 3) {
    r.skipped = true;
    return r;
  }
  LieAlgebra<double> alg;
  for (int attempt = 0; attempt < 64; ++attempt) {
    alg = random_nilpotent<double>(dim, rng.next());
    if (!structural_predicates(alg, tol).is_abelian) break;
  }
  const auto metric = random_metric<double>(dim, rng.next());
  r = with_instance(alg, metric);
  if (structural_predicates(alg, tol).is_abelian) {
    r.skipped = true;
    return r;
  }
  const MetricLieAlgebra<double> m(alg, metric, tol);
  const auto c = classify_unchecked(m, tol);
  r.labels.push_back(std::string("case ") + to_string(c.ricci_case));
  r.track_min("negative eigenvalue count", c.ricci.signature.negative);
  r.check(c.consistent, "structural and spectral routes disagree");
  r.check(c.ricci_case == RicciCase::TwoNegative && c.ricci.signature.negative >= 2,
          "non-abelian nilpotent instance with " + std::to_string(c.ricci.signature.negative) + " negative eigenvalues");
  return r;
}

InstanceResult suite_route(Index dim, SplitMix64& rng, const Tolerances<double>& tol) {
  auto s = sample_solvable_instance(dim, rng.next());
  auto r = with_instance(s.algebra, s.metric);
  const MetricLieAlgebra<double> m(s.algebra, s.metric, tol);
  const auto d = adapted_decomposition(m, tol);
  const double dev = route_deviation(m, d);
  r.track_max("direct vs blocks", dev);
  r.check(dev <= 1e-9, "direct and block Ricci differ by " + fmt(dev));
  if (structural_predicates(m.onb_algebra(), tol).is_nilpotent) {
    r.labels.push_back("nilpotent");
    const Matrix<double> direct = ricci_direct_matrix(m);
    const Matrix<double> nil = ricci_nilpotent(m, tol).ricci;
    const double dn = relative_deviation(direct, nil);
    r.track_max("direct vs nilpotent", dn);
    r.check(dn <= 1e-10, "direct and nilpotent Ricci differ by " + fmt(dn));
    const double expected = -0.25 * m.constants_onb().squared_norm();
    const double tr = nil.trace();
    const double te = std::abs(tr - expected) / std::max(1.0, std::abs(expected));
    r.track_max("trace identity", te);
    r.check(te <= 1e-10, "trace of nilpotent Ricci off by " + fmt(te));
  }
  return r;
}

InstanceResult suite_lemmas(Index dim, SplitMix64& rng, const Tolerances<double>& tol) {
  const auto alg = dim >= 2 ? random_nilpotent<double>(dim, rng.next()) : LieAlgebra<double>::abelian(dim);
  const auto metric = random_metric<double>(dim, rng.next());
  auto r = with_instance(alg, metric);
  const MetricLieAlgebra<double> m(alg, metric, tol);
  const auto n = MetricLieAlgebra<double>::with_identity(m.onb_algebra());
  const auto ds = derivation_algebra(n.algebra(), tol);

  // identity for nilpotent matrices, on an unrelated random one
  {
    Matrix<double> u = Matrix<double>::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i)
      for (Index j = i + 1; j < dim; ++j) u(i, j) = rng.uniform(-1.0, 1.0);
    const Matrix<double> q = random_orthogonal<double>(rng, dim);
    const double v = nilpotent_symmetric_residual(Matrix<double>(q * u * q.transpose()));
    r.track_max("nilpotent matrix identity", v);
    r.check(v <= 1e-10, "2 tr(L^s L^s) - tr(L L') = " + fmt(v) + " for nilpotent L");
  }

  Matrix<double> a;
  const auto kind = rng.below(3);
  const auto closed = transpose_closed_derivations(ds);
  if (kind == 1 && ds.inner_dim() > 0) {
    a = Matrix<double>::Zero(dim, dim);
    for (const auto& b : ds.inner_basis()) a += rng.uniform(-1.0, 1.0) * b;
    a /= a.norm();
    r.labels.push_back("inner derivation");
  } else if (kind == 2 && !closed.empty()) {
    a = Matrix<double>::Zero(dim, dim);
    for (const auto& b : closed) a += rng.uniform(-1.0, 1.0) * b;
    a /= a.norm();
    r.labels.push_back("transpose also a derivation");
  } else {
    a = random_derivation(rng, ds);
    r.labels.push_back("random derivation");
  }

  const auto lc = lemma_checks(ds, a);
  r.track_max("projection nilpotent identity", lc.vnilp_residual);
  r.check(lc.vnilp_residual <= 1e-10, "projection violates the nilpotent identity by " + fmt(lc.vnilp_residual));
  const double simple = std::max(std::abs(lc.trace_pp), std::abs(lc.trace_pr));
  r.track_max("projection traces", simple);
  r.check(simple <= 1e-9, "trace(PP) or trace(PR) is " + fmt(simple));
  r.track_min("symmetric slack", lc.symmetric_slack);
  r.check(lc.symmetric_slack >= -1e-9, "<A^s,A^s> - 1/2 <P,P> = " + fmt(lc.symmetric_slack));
  r.check(lc.equality_case_consistent, "equality case of the symmetric-part inequality misdetected (slack " +
                                           fmt(lc.symmetric_slack) + ")");
  if (lc.slack_is_zero) r.labels.push_back("symmetric slack zero");
  if (lc.l2_l3_pairing) {
    r.track_max("L2 L3 pairing", *lc.l2_l3_pairing);
    r.check(*lc.l2_l3_pairing <= 1e-10, "pairing of L2 and L3 elements is " + fmt(*lc.l2_l3_pairing));
  }
  if (lc.transpose_pair_in_l2) r.check(*lc.transpose_pair_in_l2, "A and A' derivations but not both in L2");

  const double proj_again = (project_inner(ds, lc.projected) - lc.projected).norm();
  r.track_max("projection idempotence", proj_again);
  r.check(proj_again <= 1e-10, "projection is not idempotent: " + fmt(proj_again));

  double l1 = filtration_membership(ds, a, tol.predicate).residual_l1;
  for (const auto& d : ds.der_basis()) l1 = std::max(l1, filtration_membership(ds, d, tol.predicate).residual_l1);
  double l3 = 0, tr3 = 0;
  for (const auto& b : ds.inner_basis()) {
    l3 = std::max(l3, filtration_membership(ds, b, tol.predicate).residual_l3);
    tr3 = std::max(tr3, std::abs(b.trace()));
  }
  r.track_max("derivations preserve n^k", l1);
  r.track_max("inner derivations lower n^k", l3);
  r.check(l1 <= 1e-10, "derivation fails to preserve the lower central series: " + fmt(l1));
  r.check(l3 <= 1e-10, "inner derivation fails to lower the lower central series: " + fmt(l3));
  r.check(tr3 <= 1e-10, "inner derivation with trace " + fmt(tr3));

  const auto rc = riccider_check(n, a, tol);
  r.track_min("<Ric, [A, A']>", rc.value);
  r.check(rc.value >= -1e-9, "<Ric, [A, A']> = " + fmt(rc.value));
  r.check(rc.consistent, "<Ric, [A, A']> = " + fmt(rc.value) + " but A' derivation flag " +
                             (rc.equality_flag ? "true" : "false"));
  return r;
}

InstanceResult suite_interlacing(Index dim, SplitMix64& rng, const Tolerances<double>&) {
  InstanceResult r;
  Matrix<double> m = random_uniform_matrix<double>(rng, dim, dim);
  m = (m + m.transpose()).eval() / 2.0;
  r.matrix = to_rows(m);
  const Vector<double> full = jacobi_eigen(m).values;

  std::vector<Index> keep;
  const auto drop = static_cast<Index>(rng.below(static_cast<std::uint64_t>(dim)));
  for (Index i = 0; i < dim; ++i)
    if (i != drop) keep.push_back(i);
  const Vector<double> sub = jacobi_eigen(principal_submatrix(m, keep)).values;
  const double slack = interlacing_slack(full, sub);
  r.track_min("deletion slack", slack);
  r.check(slack >= -1e-10, "deleting row/column " + std::to_string(drop) + " breaks interlacing by " + fmt(slack));

  // m-subset: lambda_i <= mu_i <= lambda_{i + n - m}
  const auto size = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(dim)));
  std::vector<Index> idx(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (Index i = dim - 1; i > 0; --i)
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
  idx.resize(static_cast<std::size_t>(size));
  std::sort(idx.begin(), idx.end());
  const Vector<double> mu = jacobi_eigen(principal_submatrix(m, idx)).values;
  double sub_slack = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < size; ++i)
    sub_slack = std::min({sub_slack, mu(i) - full(i), full(i + dim - size) - mu(i)});
  r.track_min("subset slack", sub_slack);
  r.check(sub_slack >= -1e-10, "principal submatrix of size " + std::to_string(size) + " breaks interlacing by " +
                                   fmt(sub_slack));
  return r;
}

InstanceResult suite_kossim(Index dim, SplitMix64& rng, const Tolerances<double>& tol) {
  auto s = sample_solvable_instance(dim, rng.next());
  auto r = with_instance(s.algebra, s.metric);
  const MetricLieAlgebra<double> m(s.algebra, s.metric, tol);
  const auto& alg = m.onb_algebra();
  const auto perp = derived_algebra(alg, tol).complement();
  if (perp.dim() == 0) {
    r.skipped = true;
    return r;
  }
  Vector<double> coef(perp.dim());
  for (Index i = 0; i < perp.dim(); ++i) coef(i) = rng.uniform(-1.0, 1.0);
  const Vector<double> x = perp.basis() * coef.normalized();
  const Matrix<double> ric = ricci_direct_matrix(m);
  const double value = x.dot(ric * x);
  const Matrix<double> ad = ad_matrix(alg, x);
  const double skew_res = (ad + ad.transpose()).norm() / (1 + ad.norm());
  r.track_max("(Ric X, X)", value);
  r.check(value <= 1e-9, "(Ric X, X) = " + fmt(value) + " for X orthogonal to [g, g]");
  if (std::abs(value) <= 1e-9) {
    r.labels.push_back("equality");
    r.track_max("skew residual at equality", skew_res);
    r.check(skew_res <= 1e-7, "(Ric X, X) vanishes but ad(X) is not skew (residual " + fmt(skew_res) + ")");
  }
  return r;
}

InstanceResult suite_basis(Index dim, SplitMix64& rng, const Tolerances<double>& tol) {
  InstanceResult r;
  if (dim < 2) {
    r.skipped = true;
    return r;
  }
  const auto n = dim - 1 >= 2 ? random_nilpotent<double>(dim - 1, rng.next()) : LieAlgebra<double>::abelian(dim - 1);
  const auto ds = derivation_algebra(n, tol);
  const auto alg = semidirect(n, {random_derivation(rng, ds)}, tol);
  const auto metric = random_metric<double>(dim, rng.next());
  r = with_instance(alg, metric);
  const MetricLieAlgebra<double> m(alg, metric, tol);
  const auto d0 = adapted_decomposition(m, tol);
  if (d0.m != 1) {
    r.skipped = true;
    return r;
  }
  Codim1Reduction<double> base;
  try {
    base = codim1_reduction(d0, tol);
  } catch (const DomainError&) {
    r.skipped = true;
    return r;
  }
  const double t0 = base.r2_block.squaredNorm();
  const auto sig = [&](const Matrix<double>& x) { return eigen_signature<double>(x, tol.zero).signature; };
  for (int k = 0; k < 20; ++k) {
    const Matrix<double> q = random_orthogonal<double>(rng, d0.l);
    const auto red = codim1_reduction(adapted_decomposition(m, tol, std::optional<Matrix<double>>(q)), tol);
    const double drift = std::abs(red.r2_block.squaredNorm() - t0) / std::max(1.0, std::abs(t0));
    r.track_max("trace(R2 R2') drift", drift);
    r.check(drift <= 1e-9, "trace(R2 R2') drifts by " + fmt(drift) + " under a change of basis of n");
    const double r2 = (red.r2_entries - red.r2_block).norm();
    r.track_max("R2 entry formula", r2);
    r.check(r2 <= 1e-9 * (1 + red.r2_block.norm()), "R2 entries differ from the block formula by " + fmt(r2));
    r.check(sig(red.congruent) == red.ricci_signature, "congruence changed the signature");
    r.check(red.equivalence_holds, "reduced matrix does not detect two negative eigenvalues");
    r.check(red.trace_test_consistent, "negative trace test without two negative eigenvalues");
  }
  r.labels.push_back(base.ricci_signature.negative >= 2 ? "two negative" : "fewer than two negative");
  return r;
}

using SuiteFn = std::function<InstanceResult(Index, SplitMix64&, const Tolerances<double>&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {
      {"theorem1", [](Index d, SplitMix64& g, const Tolerances<double>& t) { return suite_theorem1(d, g, t, true); }},
      {"theorem2", suite_theorem2},
      {"theorem3", suite_theorem3},
      {"lemmas", suite_lemmas},
      {"interlacing", suite_interlacing},
      {"route-agreement", suite_route},
      {"kossim", suite_kossim},
      {"corollaries", [](Index d, SplitMix64& g, const Tolerances<double>& t) { return suite_theorem1(d, g, t, false); }},
      {"basis-invariance", suite_basis},
  };
  return table;
}

void merge(CampaignSummary& s, const InstanceResult& r) {
  for (const auto& [k, v] : r.maxima) {
    auto it = s.maxima.find(k);
    if (it == s.maxima.end() || v > it->second) s.maxima[k] = v;
  }
  for (const auto& [k, v] : r.minima) {
    auto it = s.minima.find(k);
    if (it == s.minima.end() || v < it->second) s.minima[k] = v;
  }
  for (const auto& l : r.labels) ++s.counts[l];
}

}  // namespace

SampledInstance sample_solvable_instance(Index dim, std::uint64_t instance_seed) {
  SplitMix64 rng(instance_seed);
  const auto family = rng.below(4);
  const auto alg_seed = rng.next();
  const auto metric_choice = rng.below(4);
  const auto metric_seed = rng.next();
  SampledInstance s;
  bool identity = false;
  switch (family) {
    case 0:
      s.family = "solvable";
      s.algebra = random_solvable<double>(dim, alg_seed);
      identity = metric_choice == 0;
      break;
    case 1:
      s.family = "nilpotent";
      s.algebra = random_nilpotent<double>(dim, alg_seed);
      identity = metric_choice == 0;
      break;
    case 2:
      s.family = "flat";
      s.algebra = random_flat<double>(dim, alg_seed);
      identity = metric_choice < 2;
      break;
    default:
      if (dim >= 3) {
        s.family = "one_negative";
        s.algebra = random_one_negative<double>(dim, alg_seed);
      } else {
        s.family = "solvable";
        s.algebra = random_solvable<double>(dim, alg_seed);
      }
      identity = metric_choice < 2;
      break;
  }
  s.metric = identity ? InnerProduct<double>::identity(dim) : random_metric<double>(dim, metric_seed);
  return s;
}

std::vector<std::string> known_suites() {
  std::vector<std::string> out;
  for (const auto& [k, v] : suites()) out.push_back(k);
  return out;
}

InstanceResult run_instance(const std::string& suite, Index dim, std::uint64_t instance_seed,
                            const Tolerances<double>& tol) {
  const auto it = suites().find(suite);
  if (it == suites().end()) throw InputError("unknown suite: " + suite);
  SplitMix64 rng(instance_seed);
  try {
    return it->second(dim, rng, tol);
  } catch (const Error& e) {
    InstanceResult r;
    r.violations.push_back(std::string("exception: ") + e.what());
    return r;
  }
}

CampaignSummary run_campaign(const CampaignOptions& opts) {
  if (opts.dim_lo < 1 || opts.dim_hi < opts.dim_lo || opts.dim_hi > 12)
    throw InputError("dimension range must satisfy 1 <= a <= b <= 12");
  if (opts.count < 0) throw InputError("count must be non-negative");
  if (!suites().count(opts.suite)) throw InputError("unknown suite: " + opts.suite);
  CampaignSummary s;
  s.options = opts;
  long index = 0;
  for (Index dim = opts.dim_lo; dim <= opts.dim_hi; ++dim)
    for (int i = 0; i < opts.count; ++i, ++index) {
      const std::uint64_t iseed = instance_seed(opts.seed, static_cast<std::uint64_t>(index));
      const auto r = run_instance(opts.suite, dim, iseed, opts.tol);
      if (r.skipped) {
        ++s.skipped;
        continue;
      }
      ++s.instances;
      merge(s, r);
      if (r.violations.empty()) continue;
      ++s.violations;
      for (const auto& v : r.violations)
        if (s.messages.size() < 20) s.messages.push_back("instance " + std::to_string(index) + " (dim " + std::to_string(dim) + "): " + v);
      if (!opts.counterexample_dir.empty()) {
        Counterexample c{opts.suite, opts.seed, index, dim, iseed, opts.tol, r.violations, r.algebra, r.matrix};
        std::filesystem::create_directories(opts.counterexample_dir);
        const std::string path = (std::filesystem::path(opts.counterexample_dir) /
                                  (opts.suite + "-seed" + std::to_string(opts.seed) + "-" + std::to_string(index) + ".json"))
                                     .string();
        std::ofstream(path) << to_json(c).dump(2) << "\n";
        s.counterexamples.push_back(path);
      }
    }
  return s;
}

json to_json(const CampaignSummary& s) {
  json j;
  j["suite"] = s.options.suite;
  j["seed"] = s.options.seed;
  j["count"] = s.options.count;
  j["dims"] = json::array({s.options.dim_lo, s.options.dim_hi});
  j["tolerances"] = to_json(s.options.tol);
  j["instances"] = s.instances;
  j["skipped"] = s.skipped;
  j["violations"] = s.violations;
  j["counts"] = s.counts;
  j["max"] = s.maxima;
  j["min"] = s.minima;
  j["messages"] = s.messages;
  j["counterexamples"] = s.counterexamples;
  j["passed"] = s.passed();
  return j;
}

std::string render_text(const CampaignSummary& s) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "suite " << s.options.suite << "  seed " << s.options.seed << "  dims " << s.options.dim_lo << ".."
      << s.options.dim_hi << "  count " << s.options.count << " per dim\n";
  out << "instances " << s.instances << "  skipped " << s.skipped << "  violations " << s.violations << "\n";
  for (const auto& [k, v] : s.counts) out << "  " << k << ": " << v << "\n";
  for (const auto& [k, v] : s.maxima) out << "  max " << k << ": " << v << "\n";
  for (const auto& [k, v] : s.minima) out << "  min " << k << ": " << v << "\n";
  for (const auto& m : s.messages) out << "  ! " << m << "\n";
  for (const auto& c : s.counterexamples) out << "  counterexample written to " << c << "\n";
  out << (s.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

json to_json(const Counterexample& c) {
  json j;
  j["suite"] = c.suite;
  j["campaign_seed"] = c.campaign_seed;
  j["index"] = c.index;
  j["dim"] = c.dim;
  j["instance_seed"] = c.instance_seed;
  j["tolerances"] = to_json(c.tol);
  j["violations"] = c.violations;
  if (c.algebra) j["algebra"] = to_json(*c.algebra);
  if (c.matrix) j["matrix"] = *c.matrix;
  return j;
}

Counterexample counterexample_from_json(const json& j) {
  try {
    Counterexample c;
    c.suite = j.at("suite").get<std::string>();
    c.campaign_seed = j.at("campaign_seed").get<std::uint64_t>();
    c.index = j.at("index").get<long>();
    c.dim = j.at("dim").get<Index>();
    c.instance_seed = j.at("instance_seed").get<std::uint64_t>();
    c.tol = tolerances_from_json(j.at("tolerances"));
    c.violations = j.at("violations").get<std::vector<std::string>>();
    if (j.contains("algebra")) c.algebra = algebra_file_from_json(j.at("algebra"));
    if (j.contains("matrix")) c.matrix = j.at("matrix").get<Rows>();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("counterexample: ") + e.what());
  }
}

Counterexample read_counterexample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("counterexample: ") + e.what());
  }
  return counterexample_from_json(j);
}

InstanceResult replay(const Counterexample& c) { return run_instance(c.suite, c.dim, c.instance_seed, c.tol); }

}  // namespace metlie
