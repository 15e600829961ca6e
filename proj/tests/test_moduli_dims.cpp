#include <doctest.h>

#include "flatmod/moduli_dims.hpp"
#include "flatmod/theorem_suites.hpp"
#include "test_support.hpp"

using namespace flatmod;
using testing_support::diag;

namespace {

ClassSpec sl2(std::vector<EigenBlock> eigs) { return {{Family::SL, 2}, std::move(eigs)}; }

// Oracle for the tangent space of X_C in ambient coordinates: finite
// differences of kappa in every direction (dB, dD), projected off the
// class tangent [W, A]. No left trivialization, no conjugation tricks.
int tangent_dim_by_differences(const ComplexMatrix& b, const ComplexMatrix& d) {
  const int n = static_cast<int>(b.rows());
  const int n2 = n * n;
  auto k = [](const ComplexMatrix& bb, const ComplexMatrix& dd) {
    return ComplexMatrix(bb * dd * bb.inverse() * dd.inverse());
  };
  const ComplexMatrix a = k(b, d);
  const double h = 1e-6;
  ComplexMatrix jac(n2, 2 * n2);
  for (int c = 0; c < 2 * n2; ++c) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(c % n2 % n, c % n2 / n) = 1.0;
    const ComplexMatrix plus = c < n2 ? k(b + h * e, d) : k(b, d + h * e);
    const ComplexMatrix minus = c < n2 ? k(b - h * e, d) : k(b, d - h * e);
    jac.col(c) = vec((plus - minus) / (2 * h));
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix ad = kron(a.transpose(), id) - kron(id, a);
  Eigen::JacobiSVD<ComplexMatrix> svd(ad, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-8 * s(0)) ++r;
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  const ComplexMatrix normal = jac - u * (u.adjoint() * jac);
  return 2 * n2 - testing_support::rank_at(normal, 1e-6);
}

}  // namespace

TEST_CASE("formula dimensions for SL(2) classes") {
  const auto r = dims_for_class(sl2({{2.0, {1}}, {0.5, {1}}}), std::nullopt, 2);
  CHECK(r.dim_class == 2);
  CHECK(r.dim_Z == 1);
  CHECK(r.dim_XC == 7);
  CHECK(r.dim_MC == 4);
  CHECK(r.h1 - r.h0 == 4);
  const auto r3 = dims_for_class(sl2({{2.0, {1}}, {0.5, {1}}}), std::nullopt, 3);
  CHECK(r3.dim_XC == 11);
}

TEST_CASE("dim_Z input rules") {
  const ClassSpec p_class = sl2({{2.0, {1}}, {0.5, {1}}});
  CHECK_NOTHROW(dims_for_class(p_class, 1, 2));
  CHECK_THROWS_AS(dims_for_class(p_class, 2, 2), Error);
  const ClassSpec identity = sl2({{1.0, {1, 1}}});
  CHECK_THROWS_AS(dims_for_class(identity, std::nullopt, 2), Error);
  CHECK_THROWS_AS(dims_for_class(identity, 0, 2), Error);
  CHECK_THROWS_AS(dims_for_class(p_class, std::nullopt, 1), Error);
  CHECK(identity_class_generic_dim_Z({Family::SL, 3}) == 3);
  CHECK(identity_class_generic_dim_Z({Family::Sp, 4}) == 2);
}

TEST_CASE("SL(2) catalog") {
  const auto cat = sl2_catalog();
  REQUIRE(cat.size() == 5);
  const std::vector<int> expect_x = {6, 5, 7, 7, 7};
  for (size_t i = 0; i < cat.size(); ++i) {
    CAPTURE(cat[i].name);
    CHECK(cat[i].dim_XC == expect_x[i]);
    CHECK(cat[i].dim_XC == 4 + cat[i].class_dim + cat[i].dim_Z);
    if (cat[i].stated_dim_MC) CHECK(*cat[i].stated_dim_MC == cat[i].dim_MC);
  }
  CHECK(cat[0].dim_Z == 2);
  CHECK(cat[2].dim_Z == 1);
  CHECK_FALSE(cat[0].property_p);
  CHECK(cat[1].property_p);
}

TEST_CASE("dim M_C is even for GL and SL reports") {
  Rng rng(127);
  for (int i = 0; i < 60; ++i) {
    const int n = 2 + i % 5;
    const auto v = random_unit_product_spectrum(rng, n);
    const ClassSpec spec = semisimple_spec(v, i % 2 ? Family::SL : Family::GL);
    if (!has_property_p(spec)) continue;
    for (int p = 2; p <= 4; p += 2) CHECK(dims_for_class(spec, std::nullopt, p).dim_MC % 2 == 0);
  }
}

TEST_CASE("numeric tangent dimension matches the formula and finite differences") {
  for (int i = 0; i < 12; ++i) {
    const int n = 2 + i % 3;
    const auto s = property_p_pair(derive_seed(131, i), n);
    const auto& b = s.pair.matrices[0];
    const auto& d = s.pair.matrices[1];
    const int numeric = tangent_dim_XC_numeric(b, d);
    CHECK(numeric == dims_for_class(s.spec, 1, 2).dim_XC);
    CHECK(numeric == tangent_dim_by_differences(b, d));
  }
}

TEST_CASE("sampled reports") {
  const ClassSpec spec = semisimple_spec({2.0, Complex(0, 1), Complex(0, -0.5)});
  const auto r = dims_with_sample(spec, std::nullopt, 5);
  REQUIRE(r.numeric_tangent_XC);
  CHECK(*r.numeric_tangent_XC == r.dim_XC);
  CHECK(r.generic_point.value_or(false));
  CHECK(r.residuals.at("kappa_eigenvalues") < 1e-9);
  CHECK(r.residuals.at("euler_defect") == 0.0);
}

TEST_CASE("cohomology Euler characteristic") {
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 5;
    const auto s = i % 2 ? property_p_pair(derive_seed(137, i), n)
                         : non_property_p_pair(derive_seed(139, i), n, i / 2);
    const auto c = cohomology_dims(s.pair.matrices[0], s.pair.matrices[1]);
    CHECK(c.h0 - c.h1 == -n * n);
    CHECK(c.h0 == common_stabilizer_dim(s.pair).dim);
  }
}

TEST_CASE("surface relation examples") {
  const auto one = solve_surface_relation({diag({2.0, 0.5})}, 1);
  CHECK(one.length() == 2);
  CHECK(normalized_distance(kappa(one), diag({2.0, 0.5})) < 1e-10);

  Rng rng(149);
  const ComplexMatrix c = random_sl_semisimple(rng, 2);
  const auto trivial = solve_surface_relation({c, c.inverse()}, 1);
  CHECK((trivial.matrices[0] - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((trivial.matrices[1] - ComplexMatrix::Identity(2, 2)).norm() == 0.0);

  const std::vector<ComplexMatrix> three = {random_sl_semisimple(rng, 2), random_sl_semisimple(rng, 2),
                                            random_sl_semisimple(rng, 2)};
  const auto four = solve_surface_relation(three, 2);
  CHECK(four.length() == 4);
  const auto check = verify_surface_relation(three, four.matrices);
  CHECK(check.holds);
  CHECK(check.residual <= 1e-8);

  const ComplexMatrix u = jordan_matrix({{{1.0, {3}}}});
  const auto uni = solve_surface_relation({testing_support::conj(random_conjugator(rng, 3), u)}, 1);
  CHECK(uni.provenance.at("solver") == "unipotent");
}

TEST_CASE("surface relation errors") {
  try {
    solve_surface_relation({diag({2.0, 1.0})}, 1);
    FAIL("expected UnsolvableByTheorem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsolvableByTheorem);
  }
  ComplexMatrix mixed(2, 2);
  mixed << -1.0, 1.0, 0.0, -1.0;
  try {
    solve_surface_relation({mixed}, 1);
    FAIL("expected UnsupportedTarget");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedTarget);
  }
  CHECK_THROWS_AS(solve_surface_relation({diag({2.0, 0.5})}, 0), Error);
  CHECK_THROWS_AS(verify_surface_relation({diag({2.0, 0.5})}, {diag({2.0, 0.5})}), Error);
}
