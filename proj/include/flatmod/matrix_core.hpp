#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "flatmod/error.hpp"

namespace flatmod {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest matrix size the dense routines are meant for.
inline constexpr int kMaxMatrixSize = 16;

/// Two computed eigenvalues are identified when
/// |a - b| <= kClusterEps * max(1, |a|).
inline constexpr double kClusterEps = 1e-7;

/// Numeric cutoffs. rank_eps is relative to the operator norm of the matrix
/// being ranked; match_eps bounds normalized residuals; unit_eps is the
/// absolute |z - 1| cutoff for "this product equals one".
struct Tolerance {
  double rank_eps = 1e-9;
  double match_eps = 1e-8;
  double unit_eps = 1e-9;

  /// Throws InvalidArgument unless every cutoff lies in (0, 1).
  void validate() const;
};

/// A weakly decreasing list of positive integers.
using Partition = std::vector<int>;

/// One eigenvalue together with the sizes of its Jordan blocks.
struct EigenBlock {
  Complex value;
  Partition partition;

  int multiplicity() const;
};

/// Jordan type of a matrix: distinct eigenvalues with their partitions.
struct JordanStructure {
  std::vector<EigenBlock> blocks;

  int size() const;
  bool is_semisimple() const;
};

struct RankKernel {
  int rank = 0;
  /// Orthonormal columns spanning the numerical kernel.
  ComplexMatrix kernel;
};

/// True when two eigenvalues are identified under kClusterEps.
bool same_eigenvalue(Complex a, Complex b);

/// Throws InvalidInput when an entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Numerical rank with singular-value cutoff rank_eps * max(||M||_2,
/// scale_floor), plus an orthonormal kernel basis. Works on rectangular
/// arrays. The floor matters for operators built from the input, such as
/// X -> XA - AX, that vanish up to roundoff when A is nearly scalar.
RankKernel rank_and_kernel(const ComplexMatrix& m, const Tolerance& tol = {},
                           double scale_floor = 0.0);

/// Rank with an explicit absolute singular-value cutoff.
int numeric_rank(const ComplexMatrix& m, double cutoff);

/// Orthonormal basis of the column space at cutoff rank_eps * ||M||_2.
ComplexMatrix column_space(const ComplexMatrix& m, const Tolerance& tol = {});

/// True when the smallest singular value clears rank_eps * ||M||_2.
bool is_invertible(const ComplexMatrix& m, const Tolerance& tol = {});

ComplexMatrix inverse(const ComplexMatrix& m);

/// Eigenvalues with multiplicities clustered and Jordan partitions read off
/// from the kernel chain of (M - lambda I). Blocks are sorted by real then
/// imaginary part of the eigenvalue; partitions are weakly decreasing.
/// Throws IllConditioned (detail = cluster diameter) when a cluster's
/// generalized eigenspace does not match its algebraic multiplicity.
JordanStructure eigen_and_jordan(const ComplexMatrix& m, const Tolerance& tol = {});

/// Jordan basis: columns P with M P = P J, J the upper Jordan matrix of
/// `structure` (blocks in order, parts in order).
struct JordanDecomposition {
  JordanStructure structure;
  ComplexMatrix basis;
};

JordanDecomposition jordan_decomposition(const ComplexMatrix& m, const Tolerance& tol = {});

/// Block-diagonal upper Jordan matrix for a structure.
ComplexMatrix jordan_matrix(const JordanStructure& structure);

/// Same eigenvalues (under kClusterEps) with identical partitions.
bool same_structure(const JordanStructure& a, const JordanStructure& b);

/// Q with Q A Q^{-1} = B. Throws NotSimilar when the Jordan structures
/// differ and IllConditioned when the residual check fails.
ComplexMatrix similarity_conjugator(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol = {});

/// Unipotent W with W^2 = U, W = exp(log(U) / 2) via terminating series.
ComplexMatrix unipotent_sqrt(const ComplexMatrix& u, const Tolerance& tol = {});

/// True when (U - I)^n vanishes to within match_eps.
bool is_unipotent(const ComplexMatrix& u, const Tolerance& tol = {});

/// Column-major vec of X in matrix form, and back.
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, int n);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest |a_ij - b_ij| divided by max(1, largest |b_ij|).
double normalized_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace flatmod
