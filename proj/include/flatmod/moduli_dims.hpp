#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatmod/commutator_lab.hpp"
#include "flatmod/conjugacy_classes.hpp"

namespace flatmod {

/// Dimension bookkeeping for the variety X_C of p-tuples with commutator in
/// a class C, and for its quotient M_C by simultaneous conjugation.
struct DimensionReport {
  GroupKind group;
  int p = 2;
  int dim_class = 0;
  int dim_Z = 0;
  int dim_XC = 0;
  int dim_MC = 0;
  int h0 = 0;
  int h1 = 0;
  std::optional<int> numeric_tangent_XC;
  /// Set when a sampled point was checked: true when its stabilizer
  /// dimension matches dim_Z.
  std::optional<bool> generic_point;
  std::map<std::string, double> residuals;
};

/// Formula dimensions. For GL/SL classes with property P dim_Z defaults to
/// 1 (scalars); for classical classes with property P to 0. Without property
/// P the caller must supply dim_Z. Throws InvalidArgument on inconsistent
/// input (dim_Z below the group minimum, a supplied dim_Z contradicting
/// property P, p < 2).
DimensionReport dims_for_class(const ClassSpec& spec, std::optional<int> dim_Z, int p,
                               const Tolerance& tol = {});

/// Generic stabilizer dimension for the identity class: the rank of a
/// maximal torus (n for GL/SL, counted in gl(n)).
int identity_class_generic_dim_Z(const GroupKind& g);

/// dims_for_class plus a numeric check at a sampled point (GL/SL classes the
/// pair solvers support): numeric tangent dimension of X_C, stabilizer,
/// and residuals.
DimensionReport dims_with_sample(const ClassSpec& spec, std::optional<int> dim_Z,
                                 std::uint64_t seed, const Tolerance& tol = {});

struct CatalogEntry {
  std::string name;
  ClassSpec spec;
  int class_dim = 0;
  int dim_Z = 0;
  int dim_XC = 0;
  int dim_MC = 0;
  /// The moduli dimension where it is known independently (-I and the
  /// closure of R_e).
  std::optional<int> stated_dim_MC;
  bool property_p = false;
};

/// The five SL(2) strata I, -I, R_2, R_e, R_lambda (lambda = 2 as the sample
/// of the family), whose X_C cover GL(2)^2.
std::vector<CatalogEntry> sl2_catalog(const Tolerance& tol = {});

/// GL(2)^2 = X_I ∪ X_{-I} ∪ X_{R_2} ∪ X_{R_e} ∪ (union over lambda^2 != 1) X_{R_lambda}
inline constexpr const char* kSl2Decomposition =
    "GL(2)^2 = X_I u X_{-I} u X_{R_2} u X_{R_e} u U_{lambda^2 != 1} X_{R_lambda}";

/// dim of {(x, y) : dkappa(x, y) lies in the tangent space of the class of
/// kappa(B, D)}, the tangent space of X_C at (B, D). Throws IllConditioned
/// when a singular value sits too close to the rank cutoff.
int tangent_dim_XC_numeric(const ComplexMatrix& b, const ComplexMatrix& d,
                           const Tolerance& tol = {});

struct Cohomology {
  int h0 = 0;
  int h1 = 0;
};

/// Group cohomology of the free group <B, D> with coefficients in gl(n)
/// under Ad: h0 = dim of invariants, h1 = 2n^2 - rank of the coboundary map.
Cohomology cohomology_dims(const ComplexMatrix& b, const ComplexMatrix& d,
                           const Tolerance& tol = {});

struct RelationCheck {
  bool holds = false;
  double residual = 0.0;
};

/// Compares C_1 ... C_k with [A_1, ..., A_2p].
RelationCheck verify_surface_relation(const std::vector<ComplexMatrix>& punctures,
                                      const std::vector<ComplexMatrix>& handles,
                                      const Tolerance& tol = {});

/// Handles (A_1, ..., A_2p) with [A_1, ..., A_2p] = C_1 ... C_k. Needs
/// det(C_1 ... C_k) = 1 (UnsolvableByTheorem otherwise) and a semisimple or
/// unipotent product (UnsupportedTarget otherwise).
TupleWitness solve_surface_relation(const std::vector<ComplexMatrix>& punctures, int p,
                                    const Tolerance& tol = {});

}  // namespace flatmod
