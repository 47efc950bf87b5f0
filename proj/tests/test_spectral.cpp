#include "support.hpp"

using namespace metlie;
using namespace testing;

TEST_SUITE("spectral") {
  TEST_CASE("Jacobi eigenvalues agree with Eigen's solver") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const Index n = 1 + static_cast<Index>(rng.below(12));
      const Mat a = random_uniform_matrix<double>(rng, n, n);
      const Mat s = (a + a.transpose()) / 2;
      const auto e = jacobi_eigen<double>(s);
      const Vec ref = reference_eigenvalues(s);
      CHECK((e.values - ref).cwiseAbs().maxCoeff() <= 1e-11 * (1 + s.norm()));
      CHECK(max_abs_diff(s * e.vectors, e.vectors * e.values.asDiagonal()) < 1e-10);
      CHECK(max_abs_diff(e.vectors.transpose() * e.vectors, Mat::Identity(n, n)) < 1e-12);
    }
  }

  TEST_CASE("degenerate spectra") {
    const auto e = jacobi_eigen<double>(Mat(Mat::Ones(4, 4)));
    CHECK(e.values(3) == doctest::Approx(4));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(e.values(i)) < 1e-14);
    CHECK(jacobi_eigen<double>(Mat(Mat::Zero(3, 3))).sweeps == 0);
  }

  TEST_CASE("signatures and the zero band") {
    auto s = eigen_signature<double>(diag({-1, 0, 2}), 1e-8);
    CHECK(s.signature == Signature{1, 1, 1});
    s = eigen_signature<double>(diag({-1e-10, 3}), 1e-8);
    CHECK(s.signature == Signature{0, 1, 1});
    CHECK(s.zero_band == doctest::Approx(1e-8 * (1 + 3)));
    s = eigen_signature<double>(diag({-1e-10, 3}), 1e-12);
    CHECK(s.signature == Signature{1, 0, 1});
  }

  TEST_CASE("errors") {
    Mat a = diag({1, 2});
    a(0, 1) = 1;
    CHECK_THROWS_AS(eigen_signature<double>(a, 1e-8), DomainError);
    Mat s(2, 2);
    s << 1, 1, 1, 2;
    CHECK_THROWS_AS(jacobi_eigen<double>(s, 0), ConvergenceError);
    CHECK_THROWS_AS(jacobi_eigen<double>(Mat(2, 3)), InputError);
  }

  TEST_CASE("Cauchy interlacing for principal submatrices") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const Index n = 2 + static_cast<Index>(rng.below(8));
      const Mat a = random_uniform_matrix<double>(rng, n, n);
      const Mat s = (a + a.transpose()) / 2;
      std::vector<Index> idx;
      const Index drop = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
      for (Index i = 0; i < n; ++i)
        if (i != drop) idx.push_back(i);
      const double slack = interlacing_slack<double>(jacobi_eigen<double>(s).values,
                                                     jacobi_eigen<double>(principal_submatrix(s, idx)).values);
      CHECK(slack >= -1e-12);
    }
    CHECK(interlacing_slack<double>(vec({0, 1}), vec({2})) == doctest::Approx(-1));
  }
}
