#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "flatmod/matrix_core.hpp"

namespace flatmod {

struct FormSpec;

/// Seeded generator. Draws are built from raw mt19937_64 output so a seed
/// reproduces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);  // inclusive
  /// Uniform on the closed unit disc.
  Complex unit_disc();
  /// Modulus uniform in [r_lo, r_hi], argument uniform.
  Complex annulus(double r_lo, double r_hi);

 private:
  std::mt19937_64 engine_;
};

/// Per-trial seed derived from a root seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Entries uniform on the unit disc, redrawn until the condition number is
/// below max_condition.
ComplexMatrix random_conjugator(Rng& rng, int n, double max_condition = 1e3);

/// n eigenvalues with product exactly rebalanced to 1: the first n-1 drawn
/// from an annulus, the last their inverse product.
std::vector<Complex> random_unit_product_spectrum(Rng& rng, int n);

/// Random element of the classical group of `form`: product of Cayley
/// transforms of random Lie algebra elements and a random torus element.
ComplexMatrix random_group_element(Rng& rng, const FormSpec& form);

/// Random element of the Lie algebra of `form`, entries of order `scale`.
ComplexMatrix random_lie_element(Rng& rng, const FormSpec& form, double scale = 0.5);

}  // namespace flatmod
