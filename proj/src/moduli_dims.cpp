#include "flatmod/moduli_dims.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace flatmod {

DimensionReport dims_for_class(const ClassSpec& spec, std::optional<int> dim_Z, int p,
                               const Tolerance& tol) {
  spec.validate(tol);
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "tuple length p must be at least 2");
  const bool classical = spec.group.is_classical();
  const int generic = classical ? 0 : 1;
  const int dim_g = spec.group.ambient_dim();

  int dz = generic;
  if (has_property_p(spec, tol)) {
    if (dim_Z && *dim_Z != generic) {
      throw Error(ErrorCode::InvalidArgument,
                  "class has property P, so the stabilizer dimension is " +
                      std::to_string(generic));
    }
  } else {
    if (!dim_Z) {
      throw Error(ErrorCode::InvalidArgument,
                  "class lacks property P; supply the generic stabilizer dimension");
    }
    dz = *dim_Z;
    if (dz < generic || dz > dim_g) {
      throw Error(ErrorCode::InvalidArgument, "stabilizer dimension out of range");
    }
  }

  DimensionReport r;
  r.group = spec.group;
  r.p = p;
  r.dim_class = class_dim(spec);
  r.dim_Z = dz;
  r.dim_XC = (p - 1) * dim_g + r.dim_class + dz;
  r.dim_MC = (p - 2) * dim_g + r.dim_class + 2 * dz;
  r.h0 = dz;
  r.h1 = (p - 1) * dim_g + dz;
  return r;
}

int identity_class_generic_dim_Z(const GroupKind& g) { return g.rank(); }

DimensionReport dims_with_sample(const ClassSpec& spec, std::optional<int> dim_Z,
                                 std::uint64_t seed, const Tolerance& tol) {
  DimensionReport r = dims_for_class(spec, dim_Z, 2, tol);
  const TupleWitness t = sample_conjugated_pair(spec, seed, tol);
  const ComplexMatrix& b = t.matrices[0];
  const ComplexMatrix& d = t.matrices[1];
  const ComplexMatrix a = kappa(t, tol);

  const int n = spec.n();
  double eig_residual = 0.0;
  for (const auto& e : spec.eigs) {
    Eigen::BDCSVD<ComplexMatrix> svd(a - e.value * ComplexMatrix::Identity(n, n));
    const auto& s = svd.singularValues();
    eig_residual = std::max(eig_residual, s(s.size() - 1) / std::max(1.0, s(0)));
  }
  r.residuals["kappa_eigenvalues"] = eig_residual;
  r.residuals["kappa_det"] = std::abs(a.determinant() - 1.0);

  const auto stab = common_stabilizer_dim(t, tol);
  r.generic_point = stab.dim == r.dim_Z;
  r.numeric_tangent_XC = tangent_dim_XC_numeric(b, d, tol);
  r.residuals["tangent_minus_formula"] = static_cast<double>(*r.numeric_tangent_XC - r.dim_XC);
  const auto coh = cohomology_dims(b, d, tol);
  r.residuals["euler_defect"] = static_cast<double>(coh.h1 - coh.h0 - n * n);
  return r;
}

std::vector<CatalogEntry> sl2_catalog(const Tolerance& tol) {
  const GroupKind sl2{Family::SL, 2};
  struct Row {
    const char* name;
    std::vector<EigenBlock> eigs;
    std::optional<int> dim_Z;
    std::optional<int> stated_dim_MC;
  };
  // R_2 lacks property P; every noncommuting pair over it still has scalar
  // stabilizer, so its generic dim_Z is 1.
  const std::vector<Row> rows = {
      {"I", {{1.0, {1, 1}}}, identity_class_generic_dim_Z(sl2), std::nullopt},
      {"-I", {{-1.0, {1, 1}}}, std::nullopt, 2},
      {"R_2", {{1.0, {2}}}, 1, std::nullopt},
      {"R_e", {{-1.0, {2}}}, std::nullopt, 4},
      {"R_lambda", {{2.0, {1}}, {0.5, {1}}}, std::nullopt, std::nullopt},
  };
  std::vector<CatalogEntry> out;
  for (const auto& row : rows) {
    ClassSpec spec{sl2, row.eigs};
    const auto rep = dims_for_class(spec, row.dim_Z, 2, tol);
    out.push_back({row.name, spec, rep.dim_class, rep.dim_Z, rep.dim_XC, rep.dim_MC,
                   row.stated_dim_MC, has_property_p(spec, tol)});
  }
  return out;
}

namespace {

// Rank at cutoff rank_eps * max(sigma_max, 1), refusing when a singular value falls
// within two orders of magnitude of the cutoff.
int guarded_rank(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double cutoff = tol.rank_eps * std::max(s(0), 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
    if (s(i) > 1e-2 * cutoff && s(i) < 1e2 * cutoff) {
      throw Error(ErrorCode::IllConditioned, "rank decision is unstable at this tolerance",
                  s(i) / std::max(s(0), 1e-300));
    }
  }
  return rank;
}

}  // namespace

int tangent_dim_XC_numeric(const ComplexMatrix& b, const ComplexMatrix& d,
                           const Tolerance& tol) {
  TupleWitness{{b, d}, {}}.validate(tol);
  const int n = static_cast<int>(b.rows());
  const int n2 = n * n;
  const ComplexMatrix id2 = ComplexMatrix::Identity(n2, n2);
  const ComplexMatrix bi = inverse(b);
  const ComplexMatrix di = inverse(d);

  // Left-trivialized differential, up to the outer conjugation by DB:
  // (x, y) -> D^{-1} x D - x + y - B^{-1} y B.
  ComplexMatrix diff(n2, 2 * n2);
  diff.leftCols(n2) = kron(d.transpose(), di) - id2;
  diff.rightCols(n2) = id2 - kron(b.transpose(), bi);

  // Conjugating the class tangent range(Ad A - 1) back by DB gives
  // range(Ad A' - 1) with A' = B^{-1} D^{-1} B D. The preimage of that range
  // has codimension rank[diff | ad] - rank(ad); stacking avoids projecting
  // onto a computed range, whose error grows with the conditioning of ad.
  const ComplexMatrix a_prime = bi * di * b * d;
  const ComplexMatrix ad = kron(inverse(a_prime).transpose(), a_prime) - id2;
  ComplexMatrix stacked(n2, 3 * n2);
  stacked << diff, ad;
  return 2 * n2 - guarded_rank(stacked, tol) + guarded_rank(ad, tol);
}

Cohomology cohomology_dims(const ComplexMatrix& b, const ComplexMatrix& d,
                           const Tolerance& tol) {
  TupleWitness{{b, d}, {}}.validate(tol);
  const int n = static_cast<int>(b.rows());
  const int n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  // Free group on two generators: every (x, y) is a cocycle, coboundaries
  // are w -> (w B - B w, w D - D w) up to the Ad-twist, which has the same
  // rank.
  ComplexMatrix coboundary(2 * n2, n2);
  coboundary.topRows(n2) = kron(b.transpose(), id) - kron(id, b);
  coboundary.bottomRows(n2) = kron(d.transpose(), id) - kron(id, d);
  const auto rk = rank_and_kernel(coboundary, tol, std::max(operator_norm(b), operator_norm(d)));
  return {static_cast<int>(rk.kernel.cols()), 2 * n2 - rk.rank};
}

namespace {

void check_same_size(const std::vector<ComplexMatrix>& mats, int n, const Tolerance& tol) {
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::InvalidInput, "all matrices must share one square size");
    }
    require_finite(m, "matrix");
    if (!is_invertible(m, tol)) throw Error(ErrorCode::InvalidInput, "matrix is singular");
  }
}

ComplexMatrix ordered_product(const std::vector<ComplexMatrix>& mats, int n) {
  ComplexMatrix prod = ComplexMatrix::Identity(n, n);
  for (const auto& m : mats) prod = prod * m;
  return prod;
}

}  // namespace

RelationCheck verify_surface_relation(const std::vector<ComplexMatrix>& punctures,
                                      const std::vector<ComplexMatrix>& handles,
                                      const Tolerance& tol) {
  if (punctures.empty()) throw Error(ErrorCode::InvalidInput, "no puncture monodromies");
  if (handles.empty() || handles.size() % 2 != 0) {
    throw Error(ErrorCode::InvalidInput, "handle monodromies come in pairs A_1..A_2p");
  }
  const int n = static_cast<int>(punctures.front().rows());
  check_same_size(punctures, n, tol);
  check_same_size(handles, n, tol);
  const ComplexMatrix lhs = ordered_product(punctures, n);
  const ComplexMatrix rhs = kappa(TupleWitness{handles, {}}, tol);
  RelationCheck out;
  out.residual = normalized_distance(rhs, lhs);
  out.holds = out.residual <= tol.match_eps;
  return out;
}

TupleWitness solve_surface_relation(const std::vector<ComplexMatrix>& punctures, int p,
                                    const Tolerance& tol) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "genus p must be at least 1");
  if (punctures.empty()) throw Error(ErrorCode::InvalidInput, "no puncture monodromies");
  const int n = static_cast<int>(punctures.front().rows());
  check_same_size(punctures, n, tol);
  const ComplexMatrix target = ordered_product(punctures, n);
  const double det_defect = std::abs(target.determinant() - 1.0);
  if (det_defect > tol.match_eps) {
    throw Error(ErrorCode::UnsolvableByTheorem,
                "det(C_1...C_k) != 1: no commutator can equal the product", det_defect);
  }

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  TupleWitness pair;
  if (normalized_distance(target, id) <= tol.match_eps) {
    pair = {{id, id}, {{"solver", "identity"}}};
  } else {
    const auto structure = eigen_and_jordan(target, tol);
    if (structure.is_semisimple()) {
      std::vector<Complex> lambda = ClassSpec{{Family::GL, n}, structure.blocks}.expanded();
      Complex prod = 1.0;
      for (auto z : lambda) prod *= z;
      const Complex root = std::pow(prod, 1.0 / n);
      ComplexMatrix diag = ComplexMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        lambda[i] /= root;
        diag(i, i) = lambda[i];
      }
      pair = solve_semisimple(lambda, similarity_conjugator(diag, target, tol), tol);
    } else if (structure.blocks.size() == 1 && same_eigenvalue(structure.blocks[0].value, 1.0)) {
      pair = solve_unipotent(structure.blocks[0].partition, tol);
      const ComplexMatrix u = jordan_matrix({{{1.0, structure.blocks[0].partition}}});
      const ComplexMatrix q = similarity_conjugator(u, target, tol);
      const ComplexMatrix qi = inverse(q);
      for (auto& a : pair.matrices) a = q * a * qi;
    } else {
      throw Error(ErrorCode::UnsupportedTarget,
                  "product is neither semisimple nor unipotent; no explicit solver");
    }
  }
  TupleWitness out = pad_tuple(pair, 2 * p);
  out.provenance["relation"] = "surface";
  out.provenance["punctures"] = std::to_string(punctures.size());
  return out;
}

}  // namespace flatmod
