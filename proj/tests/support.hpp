#pragma once

#include <metlie/metlie.hpp>

#include <doctest.h>

#include <algorithm>
#include <vector>

namespace testing {

using metlie::Index;
using Mat = metlie::Matrix<double>;
using Vec = metlie::Vector<double>;

inline Mat diag(std::initializer_list<double> d) {
  Vec v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

inline Vec vec(std::initializer_list<double> d) {
  Vec v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return v;
}

/// Ascending eigenvalues from Eigen's own solver, used as the reference.
inline Vec reference_eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.eigenvalues();
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline metlie::LieAlgebra<double> heisenberg() { return metlie::catalog<double>("heisenberg3").algebra(); }

}  // namespace testing
