#include "support_basis.hpp"

using namespace metlie;
using namespace testing;

namespace {

// Reference values were computed exactly from the Levi-Civita connection.
struct Known {
  const char* what;
  MetricLieAlgebra<double> m;
  std::vector<double> eigenvalues;
};

std::vector<Known> known_instances() {
  const auto h = heisenberg();
  Mat n(2, 2);
  n << 0, 1, 0, 0;
  Mat g1(3, 3);
  g1 << 2, 1, 0, 1, 2, 0, 0, 0, 1;
  Mat g2(4, 4);
  g2 << 2, 0, 1, 0, 0, 1, 0, 0, 1, 0, 3, 0, 0, 0, 0, 1;
  return {
      {"heisenberg3", catalog<double>("heisenberg3"), {-0.5, -0.5, 0.5}},
      {"heisenberg3 diag(1,1,4)", {h, InnerProduct<double>(diag({1, 1, 4}))}, {-2, -2, 2}},
      {"heisenberg3 diag(4,1,1)", {h, InnerProduct<double>(diag({4, 1, 1}))}, {-0.125, -0.125, 0.125}},
      {"heisenberg3 2I", {h, InnerProduct<double>(Mat(2 * Mat::Identity(3, 3)))}, {-0.25, -0.25, 0.25}},
      {"heisenberg3 skewed gram", {h, InnerProduct<double>(g1)}, {-1.0 / 6, -1.0 / 6, 1.0 / 6}},
      {"hyperbolic2", catalog<double>("hyperbolic2"), {-1, -1}},
      {"diag_split", catalog<double>("diag_split"), {-2, 0, 0}},
      {"euclid_motion", catalog<double>("euclid_motion"), {0, 0, 0}},
      {"grading_ext", catalog<double>("grading_ext"), {-7.5, -6, -4.5, -4.5}},
      {"filiform_n4", catalog<double>("filiform_n4"), {-1, -0.5, 0, 0.5}},
      {"filiform_n4 skewed gram", {catalog<double>("filiform_n4").algebra(), InnerProduct<double>(g2)}, {-1, -0.9, 0.1, 0.8}},
      {"R2 x| I", MetricLieAlgebra<double>::with_identity(semidirect(LieAlgebra<double>::abelian(2), {Mat(Mat::Identity(2, 2))})),
       {-2, -2, -2}},
      {"R2 x| nilpotent", MetricLieAlgebra<double>::with_identity(semidirect(LieAlgebra<double>::abelian(2), {n})),
       {-0.5, -0.5, 0.5}},
  };
}

}  // namespace

TEST_SUITE("ricci") {
  TEST_CASE("direct formula matches exact reference spectra") {
    for (const auto& k : known_instances()) {
      CAPTURE(k.what);
      const auto r = ricci_direct(k.m);
      REQUIRE(r.eigenvalues.size() == static_cast<Index>(k.eigenvalues.size()));
      for (std::size_t i = 0; i < k.eigenvalues.size(); ++i)
        CHECK(r.eigenvalues(static_cast<Index>(i)) == doctest::Approx(k.eigenvalues[i]).epsilon(1e-10).scale(1));
      CHECK(max_abs_diff(r.ricci, r.ricci.transpose()) < 1e-14);
    }
  }

  TEST_CASE("scalar curvature") {
    CHECK(ricci_direct(catalog<double>("heisenberg3")).scalar_curvature == doctest::Approx(-0.5));
    CHECK(ricci_direct(catalog<double>("grading_ext")).scalar_curvature == doctest::Approx(-22.5));
    const auto h = heisenberg();
    CHECK(ricci_direct(MetricLieAlgebra<double>(h, InnerProduct<double>(diag({1, 1, 4})))).scalar_curvature ==
          doctest::Approx(-2));
    Mat g2(4, 4);
    g2 << 2, 0, 1, 0, 0, 1, 0, 0, 1, 0, 3, 0, 0, 0, 0, 1;
    const MetricLieAlgebra<double> f(catalog<double>("filiform_n4").algebra(), InnerProduct<double>(g2));
    CHECK(ricci_direct(f).scalar_curvature == doctest::Approx(-1));
    CHECK(nilpotent_scalar_curvature(f) == doctest::Approx(-1));
  }

  TEST_CASE("Ric(X, Y) form") {
    const auto r = ricci_direct(catalog<double>("heisenberg3"));
    CHECK(r.form(vec({0, 0, 1}), vec({0, 0, 1})) == doctest::Approx(0.5));
    CHECK(r.form(vec({1, 0, 0}), vec({0, 1, 0})) == doctest::Approx(0));
  }

  TEST_CASE("nilpotent formula agrees with the direct one") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Index dim = 2 + static_cast<Index>(seed % 7);
      const MetricLieAlgebra<double> m(random_nilpotent<double>(dim, seed), random_metric<double>(dim, seed + 1000));
      const auto a = ricci_direct(m);
      const auto b = ricci_nilpotent(m);
      CHECK(relative_deviation<double>(b.ricci, a.ricci) < 1e-10);
      CHECK(a.scalar_curvature == doctest::Approx(nilpotent_scalar_curvature(m)).epsilon(1e-9).scale(1));
    }
    CHECK_THROWS_AS(ricci_nilpotent(catalog<double>("hyperbolic2")), DomainError);
  }

  TEST_CASE("block formula agrees with the direct one") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const Index dim = 2 + static_cast<Index>(seed % 7);
      const MetricLieAlgebra<double> m(random_solvable<double>(dim, seed), random_metric<double>(dim, seed + 7));
      const auto d = adapted_decomposition(m);
      CHECK(d.block_residual < 1e-10);
      CHECK(route_deviation(m, d) < 1e-9);
      CHECK(max_abs_diff(d.frame.transpose() * d.frame, Mat::Identity(dim, dim)) < 1e-12);
      if (!d.unimodular) CHECK(d.a_blocks[0].trace() == doctest::Approx(d.t).epsilon(1e-9));
      for (Index j = 1; j < d.m; ++j) CHECK(std::abs(d.a_blocks[static_cast<std::size_t>(j)].trace()) < 1e-9 * (1 + d.t));
    }
  }

  TEST_CASE("adapted frame with a rotated basis of n") {
    const auto m = catalog<double>("grading_ext");
    const auto base = adapted_decomposition(m);
    SplitMix64 rng(3);
    const Mat q = random_orthogonal<double>(rng, base.l);
    const auto rot = adapted_decomposition(m, {}, std::optional<Mat>(q));
    CHECK(route_deviation(m, rot) < 1e-12);
    CHECK(codim1_reduction(rot).trace_test == doctest::Approx(codim1_reduction(base).trace_test));
    CHECK_THROWS_AS(adapted_decomposition(m, {}, std::optional<Mat>(Mat(Mat::Identity(2, 2)))), InputError);
    const auto so3 = MetricLieAlgebra<double>::with_identity(
        LieAlgebra<double>::from_entries(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}));
    CHECK_THROWS_AS(adapted_decomposition(so3), DomainError);
    // so(3) still has a Ricci operator: (1/2) I
    CHECK(max_abs_diff(ricci_direct(so3).ricci, 0.5 * Mat::Identity(3, 3)) < 1e-14);
  }

  TEST_CASE("codimension one reduction") {
    SUBCASE("hyperbolic2") {
      const auto c = codim1_reduction(adapted_decomposition(catalog<double>("hyperbolic2")));
      CHECK(c.r == doctest::Approx(1));
      CHECK(c.t == doctest::Approx(1));
      REQUIRE(c.r_tilde.rows() == 1);
      CHECK(c.r_tilde(0, 0) == doctest::Approx(-1));
      CHECK(c.equivalence_holds);
    }
    SUBCASE("diag_split") {
      const auto c = codim1_reduction(adapted_decomposition(catalog<double>("diag_split")));
      CHECK(c.r == doctest::Approx(2));
      CHECK(c.t == doctest::Approx(0).scale(1));
      CHECK(c.r_tilde.norm() < 1e-14);
      CHECK(c.ricci_signature == Signature{1, 2, 0});
      CHECK(c.r_tilde_signature == Signature{0, 2, 0});
      CHECK(c.equivalence_holds);
    }
    SUBCASE("grading_ext") {
      const auto d = adapted_decomposition(catalog<double>("grading_ext"));
      const auto c = codim1_reduction(d);
      CHECK(c.r == doctest::Approx(6));
      CHECK(c.t == doctest::Approx(4));
      CHECK(c.r2_entries.norm() < 1e-14);
      CHECK(c.trace_test == doctest::Approx(-16.5));
      CHECK(c.trace_test_consistent);
      CHECK(c.equivalence_holds);
      CHECK(c.ricci_signature == Signature{4, 0, 0});
      // congruence: block diagonal diag(r_tilde, -r)
      const Index l = d.l;
      CHECK(c.congruent.topRightCorner(l, 1).norm() < 1e-12);
      CHECK(c.congruent(l, l) == doctest::Approx(-6));
      CHECK(max_abs_diff(c.congruent.topLeftCorner(l, l), c.r_tilde) < 1e-12);
    }
    SUBCASE("skew generator has no reduction") {
      CHECK_THROWS_AS(codim1_reduction(adapted_decomposition(catalog<double>("euclid_motion"))), DomainError);
    }
  }

  TEST_CASE("scaling the metric by c scales the Ricci operator by 1/c") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Index dim = 2 + static_cast<Index>(seed % 6);
      const auto alg = random_solvable<double>(dim, seed);
      const auto g = random_metric<double>(dim, seed + 1);
      const auto base = ricci_direct(MetricLieAlgebra<double>(alg, g));
      for (double c : {0.25, 3.0}) {
        const auto scaled = ricci_direct(MetricLieAlgebra<double>(alg, g.scaled(c)));
        CHECK((scaled.eigenvalues * c - base.eigenvalues).cwiseAbs().maxCoeff() < 1e-9 * (1 + base.ricci.norm()));
        CHECK(scaled.signature == base.signature);
      }
    }
  }

  TEST_CASE("isometric change of basis leaves the spectrum unchanged") {
    SplitMix64 rng(11);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Index dim = 2 + static_cast<Index>(seed % 6);
      const MetricLieAlgebra<double> m(random_solvable<double>(dim, seed), random_metric<double>(dim, seed + 3));
      Mat p = random_uniform_matrix<double>(rng, dim, dim) + 2 * Mat::Identity(dim, dim);
      const auto moved = change_basis(m, p);
      const auto a = ricci_direct(m);
      const auto b = ricci_direct(moved);
      CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-8 * (1 + a.ricci.norm()));
    }
  }

  TEST_CASE("long double instantiation") {
    using L = long double;
    const auto m = catalog<L>("filiform_n4");
    const auto r = ricci_direct(m);
    CHECK(static_cast<double>(r.eigenvalues(0)) == doctest::Approx(-1));
    CHECK(static_cast<double>(r.eigenvalues(3)) == doctest::Approx(0.5));
    CHECK(static_cast<double>(route_deviation(m, adapted_decomposition(m))) < 1e-15);
  }
}
