#include "flatmod/generation_check.hpp"

namespace flatmod {

SpanClosureResult algebra_span(const TupleWitness& t, const Tolerance& tol) {
  t.validate(tol);
  const int n = t.size();
  const int n2 = n * n;

  std::vector<ComplexMatrix> gens;
  for (const auto& a : t.matrices) {
    gens.push_back(a);
    gens.push_back(inverse(a));
  }

  // Columns are vec'd algebra elements; kept orthonormal.
  auto orthonormalize = [&](const ComplexMatrix& cols) {
    return column_space(cols, tol);
  };
  ComplexMatrix start(n2, 1 + static_cast<Eigen::Index>(gens.size()));
  start.col(0) = vec(ComplexMatrix::Identity(n, n));
  for (size_t i = 0; i < gens.size(); ++i) start.col(static_cast<Eigen::Index>(i) + 1) = vec(gens[i]);
  ComplexMatrix basis = orthonormalize(start);

  SpanClosureResult out;
  for (int round = 0; round <= n2; ++round) {
    const auto k = basis.cols();
    if (k == n2) break;
    ComplexMatrix grown(n2, k * (1 + static_cast<Eigen::Index>(gens.size())));
    grown.leftCols(k) = basis;
    for (size_t g = 0; g < gens.size(); ++g) {
      for (Eigen::Index c = 0; c < k; ++c) {
        grown.col(k * (static_cast<Eigen::Index>(g) + 1) + c) = vec(gens[g] * unvec(basis.col(c), n));
      }
    }
    ComplexMatrix next = orthonormalize(grown);
    ++out.steps;
    if (next.cols() == k) break;
    basis = std::move(next);
  }
  out.dim = static_cast<int>(basis.cols());
  out.irreducible = out.dim == n2;
  return out;
}

bool generates_full_group(const TupleWitness& t, const Tolerance& tol) {
  return algebra_span(t, tol).irreducible;
}

}  // namespace flatmod
