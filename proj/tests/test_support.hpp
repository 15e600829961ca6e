#pragma once

#include <vector>

#include "flatmod/matrix_core.hpp"
#include "flatmod/random.hpp"

namespace testing_support {

using flatmod::Complex;
using flatmod::ComplexMatrix;

inline ComplexMatrix diag(const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = v[i];
  return d;
}

inline ComplexMatrix conj(const ComplexMatrix& q, const ComplexMatrix& a) {
  return q * a * q.inverse();
}

inline ComplexMatrix random_matrix(flatmod::Rng& rng, int n) {
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = rng.unit_disc();
  return m;
}

// Plain loop; no Eigen expression templates, so it doubles as an oracle.
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c = ComplexMatrix::Zero(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      for (int k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// Numerical rank from a full singular value list with an explicit cutoff.
inline int rank_at(const ComplexMatrix& m, double rel) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

}  // namespace testing_support
