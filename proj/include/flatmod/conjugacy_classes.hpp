#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatmod/matrix_core.hpp"

namespace flatmod {

enum class Family { GL, SL, SO_even, SO_odd, Sp };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// A matrix group together with the size of the matrices it acts by.
struct GroupKind {
  Family family = Family::GL;
  int size = 1;

  /// Throws InvalidArgument on parity violations (Sp and SO_even need even
  /// size, SO_odd odd size) or nonpositive size.
  void validate() const;

  bool is_classical() const;
  /// Number of +-pairs of eigenvalues for classical kinds (the n of
  /// SO(2n), SO(2n+1), Sp(2n)); the matrix size otherwise.
  int rank() const;
  /// Dimension of the group the tuples live in. GL and SL kinds both use
  /// GL(n): classes sit in SL(n), tuples range over GL(n).
  int ambient_dim() const;
};

/// A conjugacy class given intrinsically: eigenvalues with Jordan partitions.
/// For classical kinds the list holds both members of each (lambda,
/// lambda^{-1}) pair as separate entries.
struct ClassSpec {
  GroupKind group;
  std::vector<EigenBlock> eigs;

  int n() const { return group.size; }
  /// Eigenvalues repeated by multiplicity, in entry order.
  std::vector<Complex> expanded() const;
  bool is_semisimple() const;
  JordanStructure structure() const { return {eigs}; }

  /// Throws InvalidClass when partitions, sizes, the SL determinant, or the
  /// classical pairing rules are violated.
  void validate(const Tolerance& tol = {}) const;
};

/// Class of a matrix in a given group, read off from eigen_and_jordan.
ClassSpec class_of(const ComplexMatrix& m, GroupKind group, const Tolerance& tol = {});

struct PropertyPVerdict {
  bool verdict = true;
  /// 1-based positions in the multiplicity-expanded list.
  std::optional<std::vector<int>> witness;
  /// Distance to 1 of the closest proper-subset product (infinity if there
  /// are no proper subsets).
  double min_residual = 0.0;
};

struct SignedFactor {
  int index;  // 1-based position in the paired list
  int sign;   // +1 or -1
};

struct ClassicalVerdict {
  bool verdict = true;
  std::optional<std::vector<SignedFactor>> witness;
  double min_residual = 0.0;
  /// The tested list lambda_1..lambda_n, one entry per +- pair.
  std::vector<Complex> paired;
};

struct FixedSpaceDims {
  long semisimple_fixed = 0;
  long torus_fixed = 0;
};

inline constexpr int kSubsetCap = 16;
inline constexpr int kSignedCap = 10;
inline constexpr int kWedgeCap = 10;
inline constexpr int kFixedSpaceCap = 20;

PropertyPVerdict property_p_sl(const ClassSpec& spec, const Tolerance& tol = {});

/// One representative per +- pair. Eigenvalues +-1 contribute themselves,
/// once per pair of copies; SO_odd drops one copy of 1.
std::vector<Complex> paired_eigenvalues(const ClassSpec& spec);

ClassicalVerdict property_p_classical(const ClassSpec& spec, const Tolerance& tol = {});

/// Dispatches on the group family.
bool has_property_p(const ClassSpec& spec, const Tolerance& tol = {});

/// Matrix of M acting on the i-th exterior power, basis ordered by
/// lexicographic index subsets.
ComplexMatrix wedge_power(const ComplexMatrix& m, int degree);

/// No nonzero vector of any wedge power of degree 0 < i < n is fixed.
bool property_p_via_wedge(const ComplexMatrix& m, const Tolerance& tol = {});

FixedSpaceDims fixed_space_dims(const ClassSpec& spec, const Tolerance& tol = {});

/// Centralizer dimension inside the Lie algebra: gl(n) for GL and SL,
/// so(m) or sp(2n) for classical kinds.
int centralizer_dim(const ClassSpec& spec);

/// Dimension of the class: ambient Lie algebra dimension minus the
/// centralizer. For SL the ambient is gl(n).
int class_dim(const ClassSpec& spec);

/// Dimension of the group's own Lie algebra (n^2 - 1 for SL).
int group_dim(const GroupKind& g);

/// All partitions of n, each weakly decreasing, in reverse-lexicographic order.
std::vector<Partition> partitions_of(int n);

/// a dominates b: partial sums of a are >= those of b.
bool dominates(const Partition& a, const Partition& b);

Partition dual_partition(const Partition& p);

/// Classes in the closure of `spec` other than itself: same eigenvalues,
/// each partition replaced by one it dominates, at least one strictly.
std::vector<ClassSpec> boundary_classes(const ClassSpec& spec);

/// Block-diagonal Jordan matrix for GL and SL; for classical kinds a group
/// element preserving the standard form with the requested Jordan type.
/// Classical support: every semisimple class; every class whose +-1 parts
/// either pair up or (Sp) are even, or (SO_odd) leave a single odd block
/// for the middle coordinate.
ComplexMatrix representative(const ClassSpec& spec, const Tolerance& tol = {});

}  // namespace flatmod
