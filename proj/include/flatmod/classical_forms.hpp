#pragma once

#include <vector>

#include "flatmod/commutator_lab.hpp"
#include "flatmod/conjugacy_classes.hpp"
#include "flatmod/matrix_core.hpp"

namespace flatmod {

/// Bilinear form <u, v> = u^T J v fixed by an SO or Sp group.
struct FormSpec {
  GroupKind kind;
  ComplexMatrix gram;
};

/// Split forms: SO uses antidiagonal ones; Sp uses antidiagonal +1 in the
/// upper half of the rows and -1 in the lower half.
FormSpec standard_form(const GroupKind& kind);

/// u^T J v.
Complex pairing(const FormSpec& form, const ComplexVector& u, const ComplexVector& v);

bool is_in_group(const ComplexMatrix& a, const FormSpec& form, const Tolerance& tol = {});

/// Basis (orthonormal columns) of a nonzero, totally isotropic subspace
/// invariant under K and every member of `commuting`. Built from an
/// eigenspace of K for an eigenvalue other than +-1 when one exists, and
/// otherwise from ker(K - mu) ∩ im(K^{-1} - mu) for a defective mu = +-1.
/// Throws NoConstruction when K^2 = I.
ComplexMatrix isotropic_invariant_subspace(const ComplexMatrix& k,
                                           const std::vector<ComplexMatrix>& commuting,
                                           const FormSpec& form, const Tolerance& tol = {});

/// Dimension of {X : X A_i = A_i X for all i, X^T J + J X = 0}.
int lie_centralizer_dim_in_g(const TupleWitness& t, const FormSpec& form,
                             const Tolerance& tol = {});

/// Basis of the same solution space, as matrices.
std::vector<ComplexMatrix> lie_centralizer_basis(const std::vector<ComplexMatrix>& mats,
                                                 const FormSpec& form, const Tolerance& tol = {});

/// Largest |<b_i, b_j>| over basis columns.
double max_pairing(const ComplexMatrix& basis, const FormSpec& form);

/// Largest distance of M b_i from span(basis), over columns.
double invariance_residual(const ComplexMatrix& basis, const ComplexMatrix& m);

/// Cayley transform (I - X/2)^{-1} (I + X/2), mapping the Lie algebra of
/// a quadratic group into the group.
ComplexMatrix cayley(const ComplexMatrix& x);

/// J^{-1} S with S symmetric (Sp) or skew (SO): a Lie algebra element.
ComplexMatrix lie_element_from(const ComplexMatrix& s, const FormSpec& form);

}  // namespace flatmod
