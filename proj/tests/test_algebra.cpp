#include "support.hpp"

using namespace metlie;
using namespace testing;

TEST_SUITE("algebra") {
  TEST_CASE("structure constants store the antisymmetric extension") {
    StructureConstants<double> c(3);
    c.set(1, 0, 2, 2.0);
    CHECK(c(0, 1, 2) == -2.0);
    CHECK(c(1, 0, 2) == 2.0);
    CHECK(c(1, 1, 2) == 0.0);
    CHECK_THROWS_AS(c.set(1, 1, 0, 1.0), InputError);
    CHECK_THROWS_AS(c.set(0, 3, 0, 1.0), InputError);
    CHECK(c.squared_norm() == doctest::Approx(8));
  }

  TEST_CASE("ad matrices: column j is [x, e_j]") {
    const auto h = heisenberg();
    const Mat ad0 = ad_basis(h.constants(), 0);
    CHECK(ad0(2, 1) == 1.0);
    CHECK(ad0.cwiseAbs().sum() == 1.0);
    const Vec x = vec({1, 2, 0});
    const Vec y = vec({0, 1, 5});
    CHECK((ad_matrix(h, x) * y - bracket(h, x, y)).norm() < 1e-15);
    CHECK(bracket(h, x, y)(2) == doctest::Approx(1));
  }

  TEST_CASE("Jacobi validation") {
    SUBCASE("catalog entries are valid") {
      for (const char* n : {"heisenberg3", "filiform_n4", "hyperbolic2", "diag_split", "euclid_motion", "grading_ext"})
        CHECK(validate_jacobi(catalog<double>(n).algebra().constants(), 1e-12).valid);
    }
    SUBCASE("[e0,e1]=e0, [e0,e2]=e1 fails with residual 1") {
      StructureConstants<double> c(3);
      c.set(0, 1, 0, 1);
      c.set(0, 2, 1, 1);
      const auto j = validate_jacobi(c, 1e-9);
      CHECK_FALSE(j.valid);
      CHECK(j.max_residual == doctest::Approx(1));
      CHECK_THROWS_AS(LieAlgebra<double>{c}, InputError);
    }
  }

  TEST_CASE("lower central and derived series") {
    const auto h = heisenberg();
    auto lcs = lower_central_series(h);
    REQUIRE(lcs.size() == 3);
    CHECK(lcs[0].dim() == 3);
    CHECK(lcs[1].dim() == 1);
    CHECK(lcs[2].dim() == 0);
    CHECK(std::abs(lcs[1].basis()(2, 0)) == doctest::Approx(1));

    const auto hyp = catalog<double>("hyperbolic2").algebra();
    lcs = lower_central_series(hyp);
    REQUIRE(lcs.size() == 2);
    CHECK(lcs[1].dim() == 1);
    CHECK(derived_series(hyp).back().dim() == 0);

    const auto f = catalog<double>("filiform_n4").algebra();
    std::vector<Index> dims;
    for (const auto& s : lower_central_series(f)) dims.push_back(s.dim());
    CHECK(dims == std::vector<Index>{4, 2, 1, 0});
  }

  TEST_CASE("structural predicates") {
    auto p = structural_predicates(LieAlgebra<double>::abelian(4));
    CHECK(p.is_abelian);
    CHECK(p.is_nilpotent);
    CHECK(p.nilpotency_degree == 1);
    p = structural_predicates(heisenberg());
    CHECK_FALSE(p.is_abelian);
    CHECK(p.is_nilpotent);
    CHECK(p.nilpotency_degree == 2);
    CHECK(p.is_unimodular);
    p = structural_predicates(catalog<double>("filiform_n4").algebra());
    CHECK(p.nilpotency_degree == 3);
    p = structural_predicates(catalog<double>("hyperbolic2").algebra());
    CHECK(p.is_solvable);
    CHECK_FALSE(p.is_nilpotent);
    CHECK_FALSE(p.is_unimodular);
    CHECK(structural_predicates(catalog<double>("euclid_motion").algebra()).is_unimodular);

    // so(3): perfect, so neither solvable nor abelian
    const auto so3 = LieAlgebra<double>::from_entries(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}});
    p = structural_predicates(so3);
    CHECK_FALSE(p.is_abelian);
    CHECK_FALSE(p.is_solvable);
    CHECK(p.nilpotency_degree == -1);
  }

  TEST_CASE("subspaces") {
    Mat cols(3, 2);
    cols << 1, 2, 0, 0, 0, 0;
    const auto s = Subspace<double>::span_of(cols, 1e-9);
    CHECK(s.dim() == 1);
    CHECK(s.complement().dim() == 2);
    CHECK(s.contains(vec({3, 0, 0}), 1e-12));
    CHECK_FALSE(s.contains(vec({0, 1, 0}), 1e-12));
    CHECK(max_abs_diff(s.projector(), diag({1, 0, 0})) < 1e-15);
  }

  TEST_CASE("random nilpotent algebras: invariants over many draws") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto a = random_nilpotent<double>(2 + static_cast<Index>(seed % 6), seed);
      const auto p = structural_predicates(a);
      CHECK(p.is_nilpotent);
      // lower central series strictly decreases until it vanishes
      const auto lcs = lower_central_series(a);
      for (std::size_t k = 1; k < lcs.size(); ++k) CHECK(lcs[k].dim() < lcs[k - 1].dim());
      CHECK(lcs.back().dim() == 0);
    }
  }
}

TEST_SUITE("algebra") {
  TEST_CASE("derived algebra is the second term of the lower central series") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto a = random_solvable<double>(2 + static_cast<Index>(seed % 7), seed);
      const auto d = derived_algebra(a);
      const auto lcs = lower_central_series(a);
      REQUIRE(lcs.size() >= 2);
      CHECK(d.dim() == lcs[1].dim());
      CHECK(lcs[1].residual(d.basis()) < 1e-10);
    }
  }

  TEST_CASE("ad is linear and reproduces the bracket") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const Index n = 2 + static_cast<Index>(rng.below(7));
      const auto alg = random_solvable<double>(n, rng.next());
      const Vec x = random_uniform_matrix<double>(rng, n, 1);
      const Vec y = random_uniform_matrix<double>(rng, n, 1);
      const double s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
      CHECK(max_abs_diff(ad_matrix(alg, Vec(s * x + t * y)), s * ad_matrix(alg, x) + t * ad_matrix(alg, y)) < 1e-12);
      CHECK((bracket(alg, x, y) - ad_matrix(alg, x) * y).cwiseAbs().maxCoeff() < 1e-15);
      CHECK((bracket(alg, x, y) + bracket(alg, y, x)).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
}
