#include "flatmod/commutator_lab.hpp"

#include <cmath>

#include "flatmod/random.hpp"

namespace flatmod {

void TupleWitness::validate(const Tolerance& tol) const {
  if (matrices.empty()) throw Error(ErrorCode::InvalidInput, "tuple is empty");
  const auto n = matrices.front().rows();
  for (const auto& a : matrices) {
    if (a.rows() != n || a.cols() != n || n == 0) {
      throw Error(ErrorCode::InvalidInput, "tuple members must be square of one size");
    }
    require_finite(a, "tuple member");
    if (!is_invertible(a, tol)) throw Error(ErrorCode::InvalidInput, "tuple member is singular");
  }
}

ComplexMatrix kappa(const TupleWitness& t, const Tolerance& tol) {
  t.validate(tol);
  const auto n = t.size();
  ComplexMatrix forward = ComplexMatrix::Identity(n, n);
  ComplexMatrix backward = ComplexMatrix::Identity(n, n);
  for (const auto& a : t.matrices) {
    forward = forward * a;
    backward = backward * inverse(a);
  }
  return forward * backward;
}

StabilizerResult common_stabilizer(const std::vector<ComplexMatrix>& mats,
                                   const Tolerance& tol) {
  if (mats.empty()) throw Error(ErrorCode::InvalidInput, "no matrices given");
  const int n = static_cast<int>(mats.front().rows());
  const int n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix system(n2 * static_cast<int>(mats.size()), n2);
  double scale = 0.0;
  for (size_t i = 0; i < mats.size(); ++i) {
    scale = std::max(scale, operator_norm(mats[i]));
    // vec(X A - A X) = (A^T (x) I - I (x) A) vec(X)
    system.middleRows(static_cast<Eigen::Index>(i) * n2, n2) =
        kron(mats[i].transpose(), id) - kron(id, mats[i]);
  }
  const auto rk = rank_and_kernel(system, tol, scale);
  StabilizerResult out;
  out.dim = static_cast<int>(rk.kernel.cols());
  for (Eigen::Index c = 0; c < rk.kernel.cols(); ++c) {
    out.basis.push_back(unvec(rk.kernel.col(c), n));
  }
  return out;
}

StabilizerResult common_stabilizer_dim(const TupleWitness& t, const Tolerance& tol) {
  t.validate(tol);
  return common_stabilizer(t.matrices, tol);
}

DifferentialRank dkappa_rank(const ComplexMatrix& b, const ComplexMatrix& d,
                             const Tolerance& tol) {
  TupleWitness{{b, d}, {}}.validate(tol);
  const int n = static_cast<int>(b.rows());
  const int n2 = n * n;
  const ComplexMatrix id2 = ComplexMatrix::Identity(n2, n2);
  ComplexMatrix full(n2, 2 * n2);
  // vec(D^{-1} x D) = (D^T (x) D^{-1}) vec(x)
  full.leftCols(n2) = kron(d.transpose(), inverse(d)) - id2;
  full.rightCols(n2) = id2 - kron(b.transpose(), inverse(b));
  DifferentialRank out;
  // The image is trace-free; the last diagonal coordinate is redundant.
  out.matrix = full.topRows(n2 - 1);
  out.rank = out.matrix.rows() == 0 ? 0 : rank_and_kernel(out.matrix, tol, 1.0).rank;
  return out;
}

TupleWitness solve_semisimple(const std::vector<Complex>& eigenvalues,
                              const std::optional<ComplexMatrix>& conjugator,
                              const Tolerance& tol) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "semisimple solver needs n >= 2");
  std::vector<Complex> g(n);
  Complex running = 1.0;
  for (int i = 0; i < n; ++i) {
    running *= eigenvalues[i];
    g[i] = running;
  }
  if (!(std::abs(g[n - 1] - 1.0) <= tol.unit_eps)) {
    throw Error(ErrorCode::InvalidTarget, "target eigenvalues do not multiply to 1",
                std::abs(g[n - 1] - 1.0));
  }
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    b(i, i + 1) = g[i];
    d(i + 1, i) = 1.0;
  }
  b(n - 1, 0) = g[n - 1];
  d(0, n - 1) = 1.0;

  TupleWitness out{{b, d}, {{"solver", "semisimple"}, {"n", std::to_string(n)}}};
  if (conjugator) {
    const ComplexMatrix& q = *conjugator;
    if (q.rows() != n || !is_invertible(q, tol)) {
      throw Error(ErrorCode::InvalidInput, "conjugator must be invertible of matching size");
    }
    const ComplexMatrix qi = inverse(q);
    for (auto& a : out.matrices) a = q * a * qi;
    out.provenance["conjugated"] = "true";
  }
  return out;
}

TupleWitness solve_unipotent(const Partition& partition, const Tolerance& tol) {
  if (partition.empty()) throw Error(ErrorCode::InvalidArgument, "empty partition");
  for (size_t k = 0; k < partition.size(); ++k) {
    if (partition[k] < 1 || (k > 0 && partition[k] > partition[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "partition must be weakly decreasing and positive");
    }
  }
  const ComplexMatrix u = jordan_matrix({{{1.0, partition}}});
  const ComplexMatrix w = unipotent_sqrt(u, tol);
  const ComplexMatrix bc = similarity_conjugator(inverse(w), w, tol);
  std::string parts;
  for (int p : partition) parts += (parts.empty() ? "" : ",") + std::to_string(p);
  return {{w, bc}, {{"solver", "unipotent"}, {"partition", parts}}};
}

TupleWitness pad_tuple(const TupleWitness& t, int p) {
  if (p < t.length()) throw Error(ErrorCode::InvalidArgument, "cannot pad to a shorter length");
  TupleWitness out = t;
  const int n = t.size();
  while (out.length() < p) out.matrices.push_back(ComplexMatrix::Identity(n, n));
  out.provenance["padded_to"] = std::to_string(p);
  return out;
}

TupleWitness solve_for_class(const ClassSpec& spec, const Tolerance& tol) {
  if (spec.group.is_classical()) {
    throw Error(ErrorCode::UnsupportedClass, "pair solvers cover GL and SL classes");
  }
  spec.validate(tol);
  if (spec.is_semisimple()) return solve_semisimple(spec.expanded(), std::nullopt, tol);
  if (spec.eigs.size() == 1 && same_eigenvalue(spec.eigs[0].value, 1.0)) {
    return solve_unipotent(spec.eigs[0].partition, tol);
  }
  throw Error(ErrorCode::UnsupportedClass,
              "explicit solutions exist for semisimple and unipotent classes only");
}

TupleWitness sample_conjugated_pair(const ClassSpec& spec, std::uint64_t seed,
                                    const Tolerance& tol) {
  TupleWitness base = solve_for_class(spec, tol);
  Rng rng(seed);
  const ComplexMatrix q = random_conjugator(rng, spec.n());
  const ComplexMatrix qi = inverse(q);
  for (auto& a : base.matrices) a = q * a * qi;
  base.provenance["seed"] = std::to_string(seed);
  base.provenance["conjugated"] = "true";
  return base;
}

}  // namespace flatmod
