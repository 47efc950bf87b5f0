// Acceptance run: one PASS/FAIL line per criterion, exit status = number of
// failures. Campaigns use fixed seeds; thresholds are pinned below.

#include <metlie/campaign.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace metlie;
using Mat = Matrix<double>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

double max_key(const CampaignSummary& s, const std::string& key) {
  const auto it = s.maxima.find(key);
  return it == s.maxima.end() ? 0.0 : it->second;
}

double min_key(const CampaignSummary& s, const std::string& key, double fallback) {
  const auto it = s.minima.find(key);
  return it == s.minima.end() ? fallback : it->second;
}

long count_of(const CampaignSummary& s, const std::string& key) {
  const auto it = s.counts.find(key);
  return it == s.counts.end() ? 0 : it->second;
}

CampaignSummary campaign(const std::string& suite, int count, Index lo, Index hi, std::uint64_t seed) {
  CampaignOptions o;
  o.suite = suite;
  o.count = count;
  o.dim_lo = lo;
  o.dim_hi = hi;
  o.seed = seed;
  o.counterexample_dir.clear();
  return run_campaign(o);
}

long effective(const CampaignSummary& s) { return s.instances - s.skipped; }

std::string first_message(const CampaignSummary& s) { return s.messages.empty() ? "" : "; " + s.messages.front(); }

double max_eig_error(const Vector<double>& got, std::initializer_list<double> want) {
  if (got.size() != static_cast<Index>(want.size())) return 1e300;
  double e = 0;
  Index i = 0;
  for (double w : want) e = std::max(e, std::abs(got(i++) - w));
  return e;
}

Outcome c1_heisenberg() {
  const auto c = classify_unchecked(catalog<double>("heisenberg3"));
  const double err = max_eig_error(c.ricci.eigenvalues, {-0.5, -0.5, 0.5});
  return {err <= 1e-9 && c.ricci_case == RicciCase::TwoNegative && c.consistent,
          "eigenvalue error " + num(err) + ", case " + to_string(c.ricci_case)};
}

Outcome c2_abelian() {
  double worst = 0;
  int n_metrics = 0;
  for (Index n = 1; n <= 6; ++n)
    for (std::uint64_t seed = 0; seed < 50; ++seed, ++n_metrics) {
      const MetricLieAlgebra<double> m(LieAlgebra<double>::abelian(n), random_metric<double>(n, 1000 * n + seed));
      worst = std::max(worst, ricci_direct_matrix(m).cwiseAbs().maxCoeff());
    }
  return {worst <= 1e-12, std::to_string(n_metrics) + " metrics, max |Ric| " + num(worst)};
}

Outcome c3_euclid() {
  const auto c = classify_unchecked(catalog<double>("euclid_motion"));
  const double worst = c.ricci.ricci.cwiseAbs().maxCoeff();
  return {c.ricci_case == RicciCase::Flat && c.branch == CaseBranch::AllSkewAbelian && c.n_abelian && c.a_abelian &&
              c.codim_b == 0 && worst <= c.ricci.zero_band && c.consistent,
          std::string("case ") + to_string(c.ricci_case) + ", max |Ric| " + num(worst)};
}

Outcome c4_diag_split() {
  const auto c = classify_unchecked(catalog<double>("diag_split"));
  const double err = std::abs(c.ricci.eigenvalues(0) + 2);
  const auto red = codim1_reduction(adapted_decomposition(catalog<double>("diag_split")));
  return {c.ricci_case == RicciCase::OneNegative && c.ricci.signature == Signature{1, 2, 0} && err <= 1e-9 &&
              std::abs(red.r - 2) <= 1e-12 && c.consistent,
          std::string("case ") + to_string(c.ricci_case) + ", negative eigenvalue error " + num(err) + ", r " +
              num(red.r)};
}

Outcome c5_hyperbolic() {
  const auto c = classify_unchecked(catalog<double>("hyperbolic2"));
  const double err = max_eig_error(c.ricci.eigenvalues, {-1, -1});
  return {c.ricci.signature == Signature{2, 0, 0} && err <= 1e-9 && c.consistent, "eigenvalue error " + num(err)};
}

Outcome c6_theorem1() {
  const auto s = campaign("theorem1", 500, 2, 7, 7);
  return {s.passed() && effective(s) >= 3000,
          std::to_string(effective(s)) + " instances, " + std::to_string(s.violations) + " disagreements (flat " +
              std::to_string(count_of(s, "case flat")) + ", one_negative " +
              std::to_string(count_of(s, "case one_negative")) + ", two_negative " +
              std::to_string(count_of(s, "case two_negative")) + ")" + first_message(s)};
}

Outcome c7_theorem2() {
  const auto s = campaign("theorem2", 500, 2, 6, 7);
  const double n_neg = min_key(s, "negative eigenvalue count", 0);
  return {s.passed() && effective(s) >= 500 && n_neg >= 2,
          std::to_string(effective(s)) + " non-unimodular instances, min negative count " + num(n_neg) +
              first_message(s)};
}

Outcome c8_theorem3() {
  const auto s = campaign("theorem3", 150, 3, 7, 7);
  const double n_neg = min_key(s, "negative eigenvalue count", 0);
  return {s.passed() && effective(s) >= 500 && n_neg >= 2,
          std::to_string(effective(s)) + " non-abelian nilpotent instances, min negative count " + num(n_neg) +
              first_message(s)};
}

Outcome c9_corollaries() {
  long total = 0, positive = 0, nonabelian = 0, violations = 0;
  for (const auto& suite : {"corollaries", "theorem2", "theorem3"}) {
    const auto s = campaign(suite, 200, 2, 7, 11);
    total += effective(s);
    positive += count_of(s, "positive eigenvalue");
    nonabelian += count_of(s, "a not abelian");
    violations += s.violations;
  }
  return {violations == 0 && positive > 0 && nonabelian > 0,
          std::to_string(total) + " instances, " + std::to_string(positive) + " with a positive eigenvalue, " +
              std::to_string(nonabelian) + " with a non-abelian a, " + std::to_string(violations) + " violations"};
}

Outcome c10_route() {
  const auto s = campaign("route-agreement", 500, 2, 7, 7);
  const double blocks = max_key(s, "direct vs blocks");
  const double nil = max_key(s, "direct vs nilpotent");
  return {s.passed() && blocks <= 1e-9 && nil <= 1e-10 && count_of(s, "nilpotent") > 0,
          "blocks " + num(blocks) + ", nilpotent " + num(nil) + " over " + std::to_string(count_of(s, "nilpotent")) +
              " nilpotent instances" + first_message(s)};
}

Outcome c11_trace_identity() {
  const auto s = campaign("route-agreement", 500, 2, 7, 8);
  const double e = max_key(s, "trace identity");
  return {s.passed() && e <= 1e-10 && count_of(s, "nilpotent") > 0,
          "max relative error " + num(e) + " over " + std::to_string(count_of(s, "nilpotent")) + " instances"};
}

Outcome c12_lemmas() {
  const auto s = campaign("lemmas", 200, 2, 6, 7);
  const double vnilp = max_key(s, "nilpotent matrix identity");
  const double traces = max_key(s, "projection traces");
  const double slack = min_key(s, "symmetric slack", 0);
  const double pairing = max_key(s, "L2 L3 pairing");
  const double filt = std::max(max_key(s, "derivations preserve n^k"), max_key(s, "inner derivations lower n^k"));
  const double ricci = min_key(s, "<Ric, [A, A']>", 0);
  const bool ok = s.passed() && effective(s) >= 1000 && vnilp <= 1e-10 && traces <= 1e-9 && slack >= -1e-9 &&
                  pairing <= 1e-10 && filt <= 1e-10 && ricci >= -1e-9 && count_of(s, "symmetric slack zero") > 0 &&
                  count_of(s, "transpose also a derivation") > 0;
  return {ok, std::to_string(effective(s)) + " instances; vnilp " + num(vnilp) + ", traces " + num(traces) +
                  ", min slack " + num(slack) + " (" + std::to_string(count_of(s, "symmetric slack zero")) +
                  " equality cases), pairing " + num(pairing) + ", filtration " + num(filt) + ", min <Ric,[A,A']> " +
                  num(ricci) + first_message(s)};
}

Outcome c13_kossim() {
  const auto s = campaign("kossim", 250, 2, 6, 7);
  const double v = max_key(s, "(Ric X, X)");
  const double skew = max_key(s, "skew residual at equality");
  return {s.passed() && effective(s) >= 1000 && v <= 1e-9 && skew <= 1e-7,
          std::to_string(effective(s)) + " pairs, max (Ric X, X) " + num(v) + ", " +
              std::to_string(count_of(s, "equality")) + " near-zero with skew residual <= " + num(skew) +
              first_message(s)};
}

Outcome c14_interlacing() {
  const auto s = campaign("interlacing", 112, 2, 10, 7);
  const double slack = min_key(s, "deletion slack", -1);
  return {s.passed() && effective(s) >= 1000 && slack >= -1e-10,
          std::to_string(effective(s)) + " matrices, min slack " + num(slack)};
}

Outcome c15_basis() {
  const auto s = campaign("basis-invariance", 150, 3, 7, 7);
  const double drift = max_key(s, "trace(R2 R2') drift");
  return {s.passed() && effective(s) >= 100 && drift <= 1e-9,
          std::to_string(effective(s)) + " codimension-one instances x 20 bases, max drift " + num(drift) +
              first_message(s)};
}

Outcome c16_determinism() {
  int mismatches = 0, runs = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed, ++runs) {
    ReportInput in;
    in.source = "random";
    in.value = "solvable";
    in.seed = seed;
    in.metric_seed = seed + 100;
    const Index dim = 2 + static_cast<Index>(seed % 6);
    auto build = [&] {
      ReportInput x = in;
      x.algebra = make_algebra_file(random_solvable<double>(dim, seed), random_metric<double>(dim, seed + 100));
      return to_json(analyze(x)).dump(2);
    };
    if (build() != build()) ++mismatches;
  }
  const auto a = to_json(campaign("theorem1", 30, 2, 5, 3)).dump(2);
  const auto b = to_json(campaign("theorem1", 30, 2, 5, 3)).dump(2);
  if (a != b) ++mismatches;
  ++runs;
  return {mismatches == 0, std::to_string(runs) + " repeated runs, " + std::to_string(mismatches) + " differ"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"heisenberg3 spectrum and case", c1_heisenberg},
      {"abelian algebras are flat", c2_abelian},
      {"euclid_motion is flat", c3_euclid},
      {"diag_split has one negative eigenvalue", c4_diag_split},
      {"hyperbolic2 spectrum", c5_hyperbolic},
      {"structural case matches spectrum", c6_theorem1},
      {"non-unimodular: two negative eigenvalues", c7_theorem2},
      {"non-abelian nilpotent: two negative eigenvalues", c8_theorem3},
      {"positive eigenvalue and non-abelian a force two negative", c9_corollaries},
      {"Ricci routes agree", c10_route},
      {"nilpotent Ricci trace identity", c11_trace_identity},
      {"derivation lemmas", c12_lemmas},
      {"(Ric X, X) <= 0 off the derived algebra", c13_kossim},
      {"Cauchy interlacing", c14_interlacing},
      {"trace(R2 R2') basis invariance", c15_basis},
      {"byte-identical reports", c16_determinism},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %d criteria passed in %.1f s\n", index - failures, index, secs);
  return failures;
}
