#include "flatmod/classical_forms.hpp"

#include <algorithm>
#include <cmath>

namespace flatmod {

FormSpec standard_form(const GroupKind& kind) {
  kind.validate();
  if (!kind.is_classical()) {
    throw Error(ErrorCode::InvalidArgument, "GL and SL carry no invariant form");
  }
  const int m = kind.size;
  ComplexMatrix j = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const double sign = (kind.family == Family::Sp && i >= m / 2) ? -1.0 : 1.0;
    j(i, m - 1 - i) = sign;
  }
  return {kind, j};
}

Complex pairing(const FormSpec& form, const ComplexVector& u, const ComplexVector& v) {
  return (u.transpose() * form.gram * v)(0, 0);
}

bool is_in_group(const ComplexMatrix& a, const FormSpec& form, const Tolerance& tol) {
  if (a.rows() != form.gram.rows() || a.cols() != form.gram.cols()) return false;
  const double drift = (a.transpose() * form.gram * a - form.gram).norm();
  if (drift > tol.match_eps * form.gram.norm()) return false;
  if (form.kind.family != Family::Sp && std::abs(a.determinant() - 1.0) > tol.match_eps) {
    return false;
  }
  return true;
}

double max_pairing(const ComplexMatrix& basis, const FormSpec& form) {
  const ComplexMatrix g = basis.transpose() * form.gram * basis;
  return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

double invariance_residual(const ComplexMatrix& basis, const ComplexMatrix& m) {
  const auto n = basis.rows();
  const ComplexMatrix outside =
      (ComplexMatrix::Identity(n, n) - basis * basis.adjoint()) * m * basis;
  double worst = 0.0;
  for (Eigen::Index c = 0; c < outside.cols(); ++c) worst = std::max(worst, outside.col(c).norm());
  return worst;
}

ComplexMatrix isotropic_invariant_subspace(const ComplexMatrix& k,
                                           const std::vector<ComplexMatrix>& commuting,
                                           const FormSpec& form, const Tolerance& tol) {
  if (!is_in_group(k, form, tol)) {
    throw Error(ErrorCode::InvalidInput, "K does not preserve the form");
  }
  const auto n = k.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if ((k * k - id).norm() <= tol.match_eps * std::max(1.0, k.squaredNorm())) {
    throw Error(ErrorCode::NoConstruction, "K^2 = I: no isotropic subspace is produced");
  }
  for (const auto& c : commuting) {
    if (c.rows() != n || c.cols() != n) {
      throw Error(ErrorCode::InvalidInput, "commuting matrix has the wrong size");
    }
    if ((c * k - k * c).norm() > tol.match_eps * std::max(1.0, c.norm() * k.norm())) {
      throw Error(ErrorCode::InvalidInput, "supplied matrix does not commute with K");
    }
  }

  const auto structure = eigen_and_jordan(k, tol);
  auto is_sign = [](Complex z) { return same_eigenvalue(z, 1.0) || same_eigenvalue(z, -1.0); };

  const EigenBlock* pick = nullptr;
  for (const auto& b : structure.blocks) {
    if (!is_sign(b.value) && (pick == nullptr || std::abs(b.value) > std::abs(pick->value))) {
      pick = &b;
    }
  }
  if (pick != nullptr) {
    // <v, w> = <Kv, Kw> = lambda^2 <v, w> forces isotropy.
    return rank_and_kernel(k - pick->value * id, tol).kernel;
  }

  // Only +-1: take mu with a Jordan block of size > 1.
  for (const auto& b : structure.blocks) {
    if (b.partition.front() < 2) continue;
    const Complex mu = same_eigenvalue(b.value, 1.0) ? 1.0 : -1.0;
    const ComplexMatrix eigenspace = rank_and_kernel(k - mu * id, tol).kernel;
    const ComplexMatrix image = column_space(inverse(k) - mu * id, tol);
    ComplexMatrix stacked(n, eigenspace.cols() + image.cols());
    stacked << eigenspace, -image;
    const ComplexMatrix coeffs = rank_and_kernel(stacked, tol).kernel;
    if (coeffs.cols() == 0) break;
    return column_space(eigenspace * coeffs.topRows(eigenspace.cols()), tol);
  }
  throw Error(ErrorCode::IllConditioned, "no defective eigenvalue found although K^2 != I");
}

std::vector<ComplexMatrix> lie_centralizer_basis(const std::vector<ComplexMatrix>& mats,
                                                 const FormSpec& form, const Tolerance& tol) {
  const int n = static_cast<int>(form.gram.rows());
  const int n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix system(n2 * static_cast<int>(mats.size() + 1), n2);
  double scale = operator_norm(form.gram);
  for (size_t i = 0; i < mats.size(); ++i) {
    scale = std::max(scale, operator_norm(mats[i]));
    system.middleRows(static_cast<Eigen::Index>(i) * n2, n2) =
        kron(mats[i].transpose(), id) - kron(id, mats[i]);
  }
  // vec(X^T J + J X) = (J^T (x) I) T vec(X) + (I (x) J) vec(X), T the
  // commutation matrix with vec(X^T) = T vec(X).
  ComplexMatrix transpose_op = ComplexMatrix::Zero(n2, n2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) transpose_op(i + j * n, j + i * n) = 1.0;
  }
  system.bottomRows(n2) = kron(form.gram.transpose(), id) * transpose_op + kron(id, form.gram);
  const auto rk = rank_and_kernel(system, tol, scale);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index c = 0; c < rk.kernel.cols(); ++c) basis.push_back(unvec(rk.kernel.col(c), n));
  return basis;
}

int lie_centralizer_dim_in_g(const TupleWitness& t, const FormSpec& form, const Tolerance& tol) {
  t.validate(tol);
  for (const auto& a : t.matrices) {
    if (!is_in_group(a, form, tol)) {
      throw Error(ErrorCode::InvalidInput, "tuple member is not in the classical group");
    }
  }
  return static_cast<int>(lie_centralizer_basis(t.matrices, form, tol).size());
}

ComplexMatrix cayley(const ComplexMatrix& x) {
  const ComplexMatrix id = ComplexMatrix::Identity(x.rows(), x.cols());
  return inverse(id - 0.5 * x) * (id + 0.5 * x);
}

ComplexMatrix lie_element_from(const ComplexMatrix& s, const FormSpec& form) {
  return inverse(form.gram) * s;
}

}  // namespace flatmod
