#pragma once

#include "support.hpp"

namespace testing {

/// The same metric Lie algebra written in the basis given by the columns of p.
inline metlie::MetricLieAlgebra<double> change_basis(const metlie::MetricLieAlgebra<double>& m, const Mat& p) {
  using namespace metlie;
  const Index n = m.dim();
  const Mat pinv = p.inverse();
  StructureConstants<double> c(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Vec v = pinv * bracket(m.algebra(), Vec(p.col(i)), Vec(p.col(j)));
      for (Index k = 0; k < n; ++k) c.set(i, j, k, v(k));
    }
  const Mat g = p.transpose() * m.metric().gram() * p;
  return MetricLieAlgebra<double>(LieAlgebra<double>(c), InnerProduct<double>(Mat((g + g.transpose()) / 2)));
}

}  // namespace testing
