#include "flatmod/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "flatmod/classical_forms.hpp"

namespace flatmod {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  const int k = static_cast<int>(uniform() * span);
  return lo + (k < span ? k : span - 1);
}

Complex Rng::unit_disc() {
  const double r = std::sqrt(uniform());
  const double theta = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, theta);
}

Complex Rng::annulus(double r_lo, double r_hi) {
  const double r = uniform(r_lo, r_hi);
  const double theta = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, theta);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ComplexMatrix random_conjugator(Rng& rng, int n, double max_condition) {
  while (true) {
    ComplexMatrix q(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) q(i, j) = rng.unit_disc();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(q);
    const auto& s = svd.singularValues();
    if (s(n - 1) > 0.0 && s(0) / s(n - 1) < max_condition) return q;
  }
}

std::vector<Complex> random_unit_product_spectrum(Rng& rng, int n) {
  std::vector<Complex> out;
  Complex prod = 1.0;
  for (int i = 0; i + 1 < n; ++i) {
    out.push_back(rng.annulus(0.5, 2.0));
    prod *= out.back();
  }
  out.push_back(1.0 / prod);
  return out;
}

ComplexMatrix random_lie_element(Rng& rng, const FormSpec& form, double scale) {
  const auto m = form.gram.rows();
  ComplexMatrix s(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) s(i, j) = scale * rng.unit_disc();
  }
  const bool symplectic = form.kind.family == Family::Sp;
  const ComplexMatrix sym = symplectic ? ComplexMatrix(s + s.transpose())
                                       : ComplexMatrix(s - s.transpose());
  return lie_element_from(0.5 * sym, form);
}

ComplexMatrix random_group_element(Rng& rng, const FormSpec& form) {
  const int m = static_cast<int>(form.gram.rows());
  ComplexMatrix torus = ComplexMatrix::Identity(m, m);
  for (int i = 0; i < m / 2; ++i) {
    const Complex t = rng.annulus(0.7, 1.4);
    torus(i, i) = t;
    torus(m - 1 - i, m - 1 - i) = 1.0 / t;
  }
  return cayley(random_lie_element(rng, form)) * torus * cayley(random_lie_element(rng, form));
}

}  // namespace flatmod
