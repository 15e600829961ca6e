#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatmod/conjugacy_classes.hpp"
#include "flatmod/matrix_core.hpp"

namespace flatmod {

/// An ordered tuple (A_1, ..., A_p) of invertible matrices of one size, with
/// a free-form record of how it was built.
struct TupleWitness {
  std::vector<ComplexMatrix> matrices;
  std::map<std::string, std::string> provenance;

  int size() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
  int length() const { return static_cast<int>(matrices.size()); }

  /// Throws InvalidInput on an empty tuple, size mismatch, non-finite
  /// entries, or a member that is singular at the tolerance.
  void validate(const Tolerance& tol = {}) const;
};

/// A_1 ... A_p A_1^{-1} ... A_p^{-1}.
ComplexMatrix kappa(const TupleWitness& t, const Tolerance& tol = {});

struct StabilizerResult {
  int dim = 0;
  std::vector<ComplexMatrix> basis;
};

/// Solutions of X A_i = A_i X for every member, from the stacked system.
StabilizerResult common_stabilizer(const std::vector<ComplexMatrix>& mats,
                                   const Tolerance& tol = {});
StabilizerResult common_stabilizer_dim(const TupleWitness& t, const Tolerance& tol = {});

struct DifferentialRank {
  int rank = 0;
  /// (n^2 - 1) x 2n^2 matrix of (x, y) -> D^{-1} x D - x + y - B^{-1} y B in
  /// trace-zero coordinates: every entry but the last diagonal one.
  ComplexMatrix matrix;
};

DifferentialRank dkappa_rank(const ComplexMatrix& b, const ComplexMatrix& d,
                             const Tolerance& tol = {});

/// Cyclic pair (B, D) with commutator diag(eigenvalues). B carries the
/// partial products g_i = lambda_1...lambda_i on the superdiagonal and g_n in
/// the corner; D is the cyclic shift. With a conjugator Q the pair is
/// conjugated by Q.
TupleWitness solve_semisimple(const std::vector<Complex>& eigenvalues,
                              const std::optional<ComplexMatrix>& conjugator = std::nullopt,
                              const Tolerance& tol = {});

/// (W, Bc) with W^2 = U for U the unipotent Jordan matrix of the partition,
/// and Bc W Bc^{-1} = W^{-1}; hence [W, Bc] = U.
TupleWitness solve_unipotent(const Partition& partition, const Tolerance& tol = {});

/// Appends identities up to length p.
TupleWitness pad_tuple(const TupleWitness& t, int p);

/// Solver pair for the class, conjugated by a seeded random well-conditioned
/// matrix. Supports semisimple classes and unipotent classes.
TupleWitness sample_conjugated_pair(const ClassSpec& spec, std::uint64_t seed,
                                    const Tolerance& tol = {});

/// Solver pair for the class without the random conjugation.
TupleWitness solve_for_class(const ClassSpec& spec, const Tolerance& tol = {});

}  // namespace flatmod
