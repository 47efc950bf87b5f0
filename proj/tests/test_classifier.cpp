#include "support.hpp"

using namespace metlie;
using namespace testing;

TEST_SUITE("classifier") {
  TEST_CASE("catalog cases") {
    struct Row {
      const char* name;
      RicciCase c;
      Signature sig;
    };
    const Row rows[] = {
        {"heisenberg3", RicciCase::TwoNegative, {2, 0, 1}},
        {"euclid_motion", RicciCase::Flat, {0, 3, 0}},
        {"hyperbolic2", RicciCase::TwoNegative, {2, 0, 0}},
        {"diag_split", RicciCase::OneNegative, {1, 2, 0}},
        {"grading_ext", RicciCase::TwoNegative, {4, 0, 0}},
        {"filiform_n4", RicciCase::TwoNegative, {2, 1, 1}},
        {"abelian_4", RicciCase::Flat, {0, 4, 0}},
    };
    for (const auto& r : rows) {
      CAPTURE(r.name);
      const auto c = classify(catalog<double>(r.name));
      CHECK(c.ricci_case == r.c);
      CHECK(c.ricci.signature == r.sig);
      CHECK(c.consistent);
      CHECK(implied_case(c.branch) == c.ricci_case);
    }
    const auto e = classify(catalog<double>("euclid_motion"));
    CHECK(e.branch == CaseBranch::AllSkewAbelian);
    CHECK(e.skew_directions_dim == 1);
    const auto d = classify(catalog<double>("diag_split"));
    CHECK(d.branch == CaseBranch::OneNonSkewNormal);
    CHECK(d.codim_b == 1);
    CHECK(classify(catalog<double>("heisenberg3")).branch == CaseBranch::ManyNonSkew);
    CHECK(classify(catalog<double>("hyperbolic2")).branch == CaseBranch::OneNonSkewOther);
  }

  TEST_CASE("case names") {
    CHECK(std::string(to_string(RicciCase::OneNegative)) == "one_negative");
    CHECK(std::string(to_string(CaseBranch::ManyNonSkew)) == "many_non_skew");
    CHECK(signature_matches(RicciCase::Flat, {0, 3, 0}));
    CHECK_FALSE(signature_matches(RicciCase::OneNegative, {1, 1, 1}));
    CHECK(signature_matches(RicciCase::TwoNegative, {2, 0, 5}));
  }

  TEST_CASE("non-unimodular algebras have two negative eigenvalues") {
    CHECK(verify_theorem2(catalog<double>("hyperbolic2")));
    CHECK(verify_theorem2(catalog<double>("grading_ext")));
    CHECK(verify_theorem2(MetricLieAlgebra<double>::with_identity(
        semidirect(LieAlgebra<double>::abelian(2), {Mat(Mat::Identity(2, 2))}))));
    CHECK_THROWS_AS(verify_theorem2(catalog<double>("heisenberg3")), DomainError);
    CHECK_THROWS_AS(verify_theorem2(MetricLieAlgebra<double>::with_identity(
                        LieAlgebra<double>::from_entries(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}))),
                    DomainError);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Index dim = 2 + static_cast<Index>(seed % 6);
      const MetricLieAlgebra<double> m(random_solvable<double>(dim, seed), random_metric<double>(dim, seed + 5));
      if (structural_predicates(m.onb_algebra()).is_unimodular) continue;
      CHECK(verify_theorem2(m));
    }
  }

  TEST_CASE("semidirect families land in their case") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Index dim = 3 + static_cast<Index>(seed % 6);
      const auto flat = classify(MetricLieAlgebra<double>::with_identity(random_flat<double>(dim, seed)));
      CHECK(flat.ricci_case == RicciCase::Flat);
      CHECK(flat.ricci.ricci.norm() < 1e-12);
      const auto one = classify(MetricLieAlgebra<double>::with_identity(random_one_negative<double>(dim, seed)));
      CHECK(one.ricci_case == RicciCase::OneNegative);
      CHECK(one.ricci.signature == Signature{1, static_cast<int>(dim) - 1, 0});
    }
  }

  TEST_CASE("corollaries") {
    for (const char* name : {"heisenberg3", "hyperbolic2", "diag_split", "grading_ext", "filiform_n4", "euclid_motion"})
      CHECK(verify_corollaries(catalog<double>(name)).holds());
    const auto h = verify_corollaries(catalog<double>("heisenberg3"));
    CHECK(h.has_positive);
    CHECK(h.a_not_abelian);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Index dim = 2 + static_cast<Index>(seed % 7);
      const MetricLieAlgebra<double> m(random_solvable<double>(dim, seed), random_metric<double>(dim, seed + 2));
      CHECK(verify_corollaries(m).holds());
    }
  }

  TEST_CASE("routes agree under random metrics") {
    for (const char* name : {"heisenberg3", "hyperbolic2", "diag_split", "grading_ext", "filiform_n4", "euclid_motion"})
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto base = catalog<double>(name);
        const MetricLieAlgebra<double> m(base.algebra(), random_metric<double>(base.dim(), seed));
        CHECK_NOTHROW(classify(m));
      }
  }

  TEST_CASE("classification ignores the overall scale of the metric") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Index dim = 2 + static_cast<Index>(seed % 6);
      const auto alg = random_solvable<double>(dim, seed);
      const auto g = random_metric<double>(dim, seed + 4);
      const auto a = classify(MetricLieAlgebra<double>(alg, g));
      const auto b = classify(MetricLieAlgebra<double>(alg, g.scaled(7.0)));
      CHECK(a.ricci_case == b.ricci_case);
      CHECK(a.branch == b.branch);
      CHECK(a.ricci.signature == b.ricci.signature);
    }
  }

  TEST_CASE("a zero band wide enough to hide the spectrum is reported as disagreement") {
    Tolerances<double> tol;
    tol.zero = 10;
    try {
      classify(catalog<double>("hyperbolic2"), tol);
      FAIL("expected RouteDisagreement");
    } catch (const RouteDisagreement<double>& e) {
      CHECK(e.witness().ricci_case == RicciCase::TwoNegative);
      CHECK(e.witness().ricci.signature == Signature{0, 2, 0});
      CHECK_FALSE(e.witness().consistent);
    }
    CHECK_FALSE(classify_unchecked(catalog<double>("hyperbolic2"), tol).consistent);
  }
}
