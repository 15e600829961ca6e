#include <doctest.h>

#include "flatmod/conjugacy_classes.hpp"
#include "flatmod/matrix_core.hpp"
#include "test_support.hpp"

using namespace flatmod;
using testing_support::conj;
using testing_support::diag;
using testing_support::random_matrix;

TEST_CASE("tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{0.0, 1e-8, 1e-9}.validate()), Error);
  CHECK_THROWS_AS((Tolerance{1e-9, 2.0, 1e-9}.validate()), Error);
}

TEST_CASE("rank and kernel of an outer product") {
  Rng rng(3);
  ComplexVector u(4), v(4);
  for (int i = 0; i < 4; ++i) {
    u(i) = rng.unit_disc();
    v(i) = rng.unit_disc();
  }
  const ComplexMatrix m = u * v.transpose();
  const auto rk = rank_and_kernel(m);
  CHECK(rk.rank == 1);
  CHECK(rk.kernel.cols() == 3);
  CHECK((m * rk.kernel).norm() < 1e-12);
  CHECK((rk.kernel.adjoint() * rk.kernel - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("scale floor keeps roundoff operators at rank zero") {
  ComplexMatrix tiny = ComplexMatrix::Zero(3, 3);
  tiny(0, 1) = 1e-17;
  CHECK(rank_and_kernel(tiny).rank == 1);
  CHECK(rank_and_kernel(tiny, {}, 1.0).rank == 0);
}

TEST_CASE("vec and kron satisfy vec(AXB) = (B^T kron A) vec(X)") {
  Rng rng(11);
  for (int n = 1; n <= 4; ++n) {
    const ComplexMatrix a = random_matrix(rng, n);
    const ComplexMatrix x = random_matrix(rng, n);
    const ComplexMatrix b = random_matrix(rng, n);
    const ComplexMatrix lhs = testing_support::multiply(testing_support::multiply(a, x), b);
    CHECK((kron(b.transpose(), a) * vec(x) - vec(lhs)).norm() < 1e-12);
    CHECK((unvec(vec(x), n) - x).norm() == 0.0);
  }
}

TEST_CASE("normalized distance") {
  const ComplexMatrix a = diag({2.0, 3.0});
  const ComplexMatrix b = diag({2.0, 4.0});
  CHECK(normalized_distance(a, b) == doctest::Approx(0.25));
  CHECK(normalized_distance(0.1 * a, 0.1 * a) == 0.0);
}

TEST_CASE("same_eigenvalue uses a relative cluster width") {
  CHECK(same_eigenvalue(1.0, 1.0 + 5e-8));
  CHECK_FALSE(same_eigenvalue(1.0, 1.0 + 5e-7));
  CHECK(same_eigenvalue(1000.0, 1000.0 + 5e-5));
}

TEST_CASE("distinct eigenvalues are semisimple with unit partitions") {
  Rng rng(5);
  const ComplexMatrix m = conj(random_conjugator(rng, 3), diag({2.0, -1.0, Complex(0, 3)}));
  const auto js = eigen_and_jordan(m);
  REQUIRE(js.blocks.size() == 3);
  CHECK(js.is_semisimple());
  for (const auto& b : js.blocks) CHECK(b.partition == Partition{1});
}

// The partition of a Jordan matrix follows from rank((J - c)^k) of the
// exact, unconjugated matrix: part counts are second differences.
Partition partition_from_ranks(const ComplexMatrix& j, Complex c) {
  const int n = static_cast<int>(j.rows());
  std::vector<int> nullity(n + 2, 0);
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  const ComplexMatrix shifted = j - c * ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= n + 1; ++k) {
    power = power * shifted;
    nullity[k] = n - testing_support::rank_at(power, 1e-12);
  }
  Partition out;
  for (int k = n; k >= 1; --k) {
    const int at_least_k = nullity[k] - nullity[k - 1];
    const int at_least_k1 = nullity[k + 1] - nullity[k];
    for (int c2 = 0; c2 < at_least_k - at_least_k1; ++c2) out.push_back(k);
  }
  return out;
}

TEST_CASE("Jordan structure of conjugated Jordan matrices") {
  Rng rng(17);
  const std::vector<JordanStructure> cases = {
      {{{1.0, {2}}}},
      {{{-1.0, {2, 1}}}},
      {{{2.0, {3}}, {0.5, {1}}}},
      {{{1.0, {2, 2}}, {Complex(0, 1), {1}}}},
      {{{3.0, {1, 1}}, {1.0 / 3.0, {2}}}},
      {{{1.0, {4, 1}}}},
  };
  for (const auto& s : cases) {
    const ComplexMatrix j = jordan_matrix(s);
    for (const auto& b : s.blocks) CHECK(partition_from_ranks(j, b.value) == b.partition);
    const ComplexMatrix m = conj(random_conjugator(rng, s.size(), 50.0), j);
    const auto found = eigen_and_jordan(m);
    CHECK(same_structure(found, s));
  }
}

TEST_CASE("Jordan decomposition satisfies M P = P J") {
  Rng rng(23);
  const JordanStructure s{{{1.0, {3, 1}}, {-2.0, {1}}}};
  const ComplexMatrix m = conj(random_conjugator(rng, 5, 50.0), jordan_matrix(s));
  const auto dec = jordan_decomposition(m);
  const ComplexMatrix j = jordan_matrix(dec.structure);
  CHECK((m * dec.basis - dec.basis * j).norm() < 1e-8 * m.norm() * dec.basis.norm());
}

TEST_CASE("jordan_decomposition rejects oversized input") {
  const ComplexMatrix big = ComplexMatrix::Identity(kMaxMatrixSize + 1, kMaxMatrixSize + 1);
  CHECK_THROWS_AS(jordan_decomposition(big), Error);
}

TEST_CASE("similarity conjugator maps A onto B") {
  Rng rng(29);
  const JordanStructure s{{{2.0, {2}}, {0.5, {1}}}};
  const ComplexMatrix a = conj(random_conjugator(rng, 3), jordan_matrix(s));
  const ComplexMatrix b = conj(random_conjugator(rng, 3), jordan_matrix(s));
  const ComplexMatrix q = similarity_conjugator(a, b);
  CHECK(normalized_distance(q * a * inverse(q), b) < 1e-9);

  const ComplexMatrix other = jordan_matrix({{{2.0, {1, 1}}, {0.5, {1}}}});
  try {
    similarity_conjugator(a, other);
    FAIL("expected NotSimilar");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSimilar);
  }
}

TEST_CASE("unipotent square root") {
  for (const Partition& p : partitions_of(5)) {
    const ComplexMatrix u = jordan_matrix({{{1.0, p}}});
    CHECK(is_unipotent(u));
    const ComplexMatrix w = unipotent_sqrt(u);
    CHECK(is_unipotent(w));
    CHECK((w * w - u).norm() < 1e-12);
  }
  CHECK_FALSE(is_unipotent(diag({1.0, 2.0})));
  CHECK_THROWS_AS(unipotent_sqrt(diag({1.0, 2.0})), Error);
}

TEST_CASE("require_finite") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(require_finite(m, "m"), Error);
}
