#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flatmod/commutator_lab.hpp"
#include "flatmod/json_io.hpp"
#include "flatmod/random.hpp"

namespace flatmod {

/// A pair (B, D) together with the class its commutator lies in.
struct SampledPair {
  ClassSpec spec;
  TupleWitness pair;
};

/// Distinct eigenvalues of an SL(n) semisimple class, merged into a spec.
ClassSpec semisimple_spec(const std::vector<Complex>& values, Family family = Family::SL);

/// Random unit-product spectrum with property P (redrawn until it has it),
/// solved by the cyclic pair and conjugated by a random matrix.
SampledPair property_p_pair(std::uint64_t seed, int n, const Tolerance& tol = {});

/// Spectrum with a planted proper subset multiplying to 1 (needs n >= 2).
std::vector<Complex> planted_spectrum(Rng& rng, int n);

/// Pairs whose commutator lacks property P. variant 0: unipotent solver
/// pair; 1: semisimple pair over a planted spectrum; 2: commuting diagonal
/// pair. All conjugated by a random matrix.
SampledPair non_property_p_pair(std::uint64_t seed, int n, int variant,
                                const Tolerance& tol = {});

/// Q diag(lambda) Q^{-1} with a unit-product spectrum.
ComplexMatrix random_sl_semisimple(Rng& rng, int n);

struct SuiteResult {
  std::string name;
  std::string claim;
  int checks = 0;
  int failures = 0;
  /// Largest residual seen per named check.
  std::map<std::string, double> worst;
  /// First few failure descriptions.
  std::vector<std::string> notes;

  bool passed() const { return failures == 0 && checks > 0; }
  void record(bool ok, const std::string& what);
  void residual(const std::string& key, double value);
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  int trials = 100;
  Tolerance tol;
};

SuiteResult suite_scalar_stabilizer(const SuiteOptions& opt);
SuiteResult suite_differential_rank_law(const SuiteOptions& opt);
SuiteResult suite_tangent_dimension(const SuiteOptions& opt);
SuiteResult suite_full_generation(const SuiteOptions& opt);
SuiteResult suite_classical_finite_stabilizer(const SuiteOptions& opt);
SuiteResult suite_surface_relations(const SuiteOptions& opt);
SuiteResult suite_commutator_solvers(const SuiteOptions& opt);
SuiteResult suite_decider_equivalence(const SuiteOptions& opt);

/// Every suite, in a fixed order.
std::vector<SuiteResult> run_theorem_suites(const SuiteOptions& opt);

io::Json suite_to_json(const SuiteResult& s);
/// Full report: seed, trials, tolerance, suites, overall verdict.
io::Json suites_report(const SuiteOptions& opt, const std::vector<SuiteResult>& suites);

}  // namespace flatmod
