#include "flatmod/theorem_suites.hpp"

#include <cmath>

#include "flatmod/classical_forms.hpp"
#include "flatmod/generation_check.hpp"
#include "flatmod/moduli_dims.hpp"

namespace flatmod {

namespace {

// Stream ids under the root seed. The property-P pairs share one stream so
// every suite that uses them sees the same pairs.
enum Stream : std::uint64_t {
  kPairs = 1000,
  kNonPairs,
  kTangent,
  kControls,
  kSpotChecks,
  kIsotropic,
  kClassicalPairs,
  kSurface,
  kSolvers,
  kDeciders,
};

// Conjugators for sampled points stay this well conditioned, so rank
// decisions at the default tolerance have room on both sides.
constexpr double kSampleCondition = 50.0;

std::uint64_t trial_seed(const SuiteOptions& opt, Stream s, int i) {
  return derive_seed(derive_seed(opt.seed, s), static_cast<std::uint64_t>(i));
}

ComplexMatrix conjugate(const ComplexMatrix& q, const ComplexMatrix& a) {
  return q * a * inverse(q);
}

ComplexMatrix diag_of(const std::vector<Complex>& values) {
  const int n = static_cast<int>(values.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = values[i];
  return d;
}

std::string describe(const std::string& what, int n, int trial) {
  return what + " (n=" + std::to_string(n) + ", trial " + std::to_string(trial) + ")";
}

}  // namespace

void SuiteResult::record(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++failures;
  if (notes.size() < 5) notes.push_back(what);
}

void SuiteResult::residual(const std::string& key, double value) {
  auto [it, fresh] = worst.emplace(key, value);
  if (!fresh) it->second = std::max(it->second, value);
}

ClassSpec semisimple_spec(const std::vector<Complex>& values, Family family) {
  ClassSpec spec{{family, static_cast<int>(values.size())}, {}};
  for (Complex z : values) {
    bool merged = false;
    for (auto& b : spec.eigs) {
      if (same_eigenvalue(b.value, z)) {
        b.partition.push_back(1);
        merged = true;
        break;
      }
    }
    if (!merged) spec.eigs.push_back({z, {1}});
  }
  return spec;
}

SampledPair property_p_pair(std::uint64_t seed, int n, const Tolerance& tol) {
  Rng rng(seed);
  std::vector<Complex> spectrum;
  ClassSpec spec;
  do {
    spectrum = random_unit_product_spectrum(rng, n);
    spec = semisimple_spec(spectrum);
  } while (!has_property_p(spec, tol));
  // The solver's weights are the running products; keeping them near the
  // unit circle keeps the pair well conditioned.
  std::vector<Complex> ordered;
  Complex running = 1.0;
  while (!spectrum.empty()) {
    auto best = spectrum.begin();
    for (auto it = spectrum.begin(); it != spectrum.end(); ++it) {
      if (std::abs(std::log(std::abs(running * *it))) <
          std::abs(std::log(std::abs(running * *best)))) {
        best = it;
      }
    }
    running *= *best;
    ordered.push_back(*best);
    spectrum.erase(best);
  }
  spectrum = std::move(ordered);
  const ComplexMatrix q = random_conjugator(rng, n, kSampleCondition);
  return {spec, solve_semisimple(spectrum, q, tol)};
}

std::vector<Complex> planted_spectrum(Rng& rng, int n) {
  if (n == 2) return {1.0, 1.0};
  const int k = rng.uniform_int(1, n - 2);
  std::vector<Complex> out =
      k == 1 ? std::vector<Complex>{1.0} : random_unit_product_spectrum(rng, k);
  for (Complex z : random_unit_product_spectrum(rng, n - k)) out.push_back(z);
  return out;
}

ComplexMatrix random_sl_semisimple(Rng& rng, int n) {
  const auto spectrum = random_unit_product_spectrum(rng, n);
  return conjugate(random_conjugator(rng, n, kSampleCondition), diag_of(spectrum));
}

SampledPair non_property_p_pair(std::uint64_t seed, int n, int variant, const Tolerance& tol) {
  Rng rng(seed);
  SampledPair out;
  switch (variant % 3) {
    case 0: {
      const auto parts = partitions_of(n);
      const auto& pi = parts[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(parts.size()) - 1))];
      out.spec = {{Family::SL, n}, {{1.0, pi}}};
      out.pair = solve_unipotent(pi, tol);
      break;
    }
    case 1: {
      const auto spectrum = planted_spectrum(rng, n);
      out.spec = semisimple_spec(spectrum);
      out.pair = solve_semisimple(spectrum, std::nullopt, tol);
      break;
    }
    default: {
      std::vector<Complex> b(n), d(n);
      for (int i = 0; i < n; ++i) {
        b[i] = rng.annulus(0.5, 2.0);
        d[i] = rng.annulus(0.5, 2.0);
      }
      out.spec = {{Family::SL, n}, {{1.0, Partition(n, 1)}}};
      out.pair = {{diag_of(b), diag_of(d)}, {{"solver", "commuting-diagonal"}}};
      break;
    }
  }
  const ComplexMatrix q = random_conjugator(rng, n, kSampleCondition);
  for (auto& a : out.pair.matrices) a = conjugate(q, a);
  return out;
}

SuiteResult suite_scalar_stabilizer(const SuiteOptions& opt) {
  SuiteResult r{"scalar-stabilizer",
                "matrices commuting with a property-P pair are scalar", 0, 0, {}, {}};
  for (int i = 0; i < opt.trials; ++i) {
    const int n = 2 + i % 5;
    const auto s = property_p_pair(trial_seed(opt, kPairs, i), n, opt.tol);
    try {
      const auto stab = common_stabilizer_dim(s.pair, opt.tol);
      bool ok = stab.dim == 1;
      for (const auto& x : stab.basis) {
        const Complex mean = x.trace() / static_cast<double>(n);
        const double dist =
            (x - mean * ComplexMatrix::Identity(n, n)).norm() / std::max(x.norm(), 1e-300);
        r.residual("scalar_distance", dist);
        ok = ok && dist <= 1e-7;
      }
      r.record(ok, describe("stabilizer dim " + std::to_string(stab.dim), n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  }
  return r;
}

SuiteResult suite_differential_rank_law(const SuiteOptions& opt) {
  SuiteResult r{"differential-rank-law",
                "rank of the commutator differential plus stabilizer dimension is n^2", 0, 0,
                {}, {}};
  auto check = [&](const SampledPair& s, int i) {
    const int n = s.spec.n();
    try {
      const int rank = dkappa_rank(s.pair.matrices[0], s.pair.matrices[1], opt.tol).rank;
      const int z = common_stabilizer_dim(s.pair, opt.tol).dim;
      r.record(rank + z == n * n,
               describe("rank " + std::to_string(rank) + " + dim Z " + std::to_string(z), n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  };
  for (int i = 0; i < opt.trials; ++i) {
    check(property_p_pair(trial_seed(opt, kPairs, i), 2 + i % 5, opt.tol), i);
  }
  const int extra = std::max(1, opt.trials / 2);
  for (int i = 0; i < extra; ++i) {
    check(non_property_p_pair(trial_seed(opt, kNonPairs, i), 2 + i % 5, i, opt.tol), i);
  }
  return r;
}

SuiteResult suite_tangent_dimension(const SuiteOptions& opt) {
  SuiteResult r{"tangent-dimension",
                "numeric tangent dimension of X_C matches n^2 + dim C + dim Z; h1 - h0 = n^2; "
                "dim M_C is even",
                0, 0, {}, {}};
  for (int i = 0; i < opt.trials; ++i) {
    const int n = 2 + i % 4;
    const auto s = property_p_pair(trial_seed(opt, kTangent, i), n, opt.tol);
    const auto& b = s.pair.matrices[0];
    const auto& d = s.pair.matrices[1];
    try {
      const auto rep = dims_for_class(s.spec, std::nullopt, 2, opt.tol);
      const int numeric = tangent_dim_XC_numeric(b, d, opt.tol);
      r.record(numeric == rep.dim_XC && rep.dim_XC == n * n + rep.dim_class + 1,
               describe("tangent " + std::to_string(numeric) + " vs " +
                            std::to_string(rep.dim_XC),
                        n, i));
      r.record(rep.dim_MC % 2 == 0, describe("odd dim M_C", n, i));
      const auto coh = cohomology_dims(b, d, opt.tol);
      r.record(coh.h1 - coh.h0 == n * n, describe("h1 - h0 != n^2", n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  }
  const int extra = std::max(1, opt.trials / 2);
  for (int i = 0; i < extra; ++i) {
    const int n = 2 + i % 5;
    const auto s = non_property_p_pair(trial_seed(opt, kNonPairs, i), n, i, opt.tol);
    try {
      const auto coh = cohomology_dims(s.pair.matrices[0], s.pair.matrices[1], opt.tol);
      r.record(coh.h1 - coh.h0 == n * n, describe("h1 - h0 != n^2", n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  }
  return r;
}

SuiteResult suite_full_generation(const SuiteOptions& opt) {
  SuiteResult r{"full-generation",
                "a property-P pair spans all of M_n; commuting pairs do not; span dimension "
                "is conjugation invariant",
                0, 0, {}, {}};
  for (int i = 0; i < opt.trials; ++i) {
    const int n = 2 + i % 5;
    const auto s = property_p_pair(trial_seed(opt, kPairs, i), n, opt.tol);
    try {
      const auto span = algebra_span(s.pair, opt.tol);
      r.record(span.irreducible, describe("span dim " + std::to_string(span.dim), n, i));
      if (span.irreducible) {
        r.record(common_stabilizer_dim(s.pair, opt.tol).dim == 1,
                 describe("irreducible but stabilizer not scalar", n, i));
      }
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  }
  const int controls = std::max(5, opt.trials / 5);
  for (int i = 0; i < controls; ++i) {
    const int n = 2 + i % 5;
    const auto s = non_property_p_pair(trial_seed(opt, kControls, i), n, 2, opt.tol);
    try {
      r.record(!generates_full_group(s.pair, opt.tol), describe("commuting pair generated", n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  }
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 4;
    const std::uint64_t seed = trial_seed(opt, kSpotChecks, i);
    const auto s = i % 2 == 0 ? property_p_pair(seed, n, opt.tol)
                              : non_property_p_pair(seed, n, i / 2, opt.tol);
    Rng rng(derive_seed(seed, 1));
    const ComplexMatrix q = random_conjugator(rng, n, kSampleCondition);
    TupleWitness moved = s.pair;
    for (auto& a : moved.matrices) a = conjugate(q, a);
    try {
      const int before = algebra_span(s.pair, opt.tol).dim;
      const int after = algebra_span(moved, opt.tol).dim;
      r.record(before == after, describe("span dim changed under conjugation", n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  }
  return r;
}

SuiteResult suite_classical_finite_stabilizer(const SuiteOptions& opt) {
  SuiteResult r{"classical-finite-stabilizer",
                "isotropic invariant subspaces exist for K^2 != I; property-P classical pairs "
                "have trivial Lie centralizer",
                0, 0, {}, {}};
  const GroupKind sp4{Family::Sp, 4};
  const GroupKind so5{Family::SO_odd, 5};
  const int instances = std::max(10, opt.trials / 2);

  for (int i = 0; i < instances; ++i) {
    const GroupKind& g = i % 2 == 0 ? sp4 : so5;
    const FormSpec form = standard_form(g);
    Rng rng(trial_seed(opt, kIsotropic, i));
    ComplexMatrix k;
    if ((i / 2) % 3 == 2) {
      const double sign = (g.family == Family::Sp && (i / 6) % 2 == 1) ? -1.0 : 1.0;
      const ClassSpec spec{g, {{sign, {g.size}}}};
      k = conjugate(random_group_element(rng, form), representative(spec, opt.tol));
    } else {
      k = random_group_element(rng, form);
    }
    const std::vector<ComplexMatrix> commuting = {inverse(k), k * k};
    try {
      const ComplexMatrix basis = isotropic_invariant_subspace(k, commuting, form, opt.tol);
      const double pair_res = max_pairing(basis, form);
      double inv_res = invariance_residual(basis, k) / std::max(1.0, operator_norm(k));
      for (const auto& c : commuting) {
        inv_res = std::max(inv_res, invariance_residual(basis, c) / std::max(1.0, operator_norm(c)));
      }
      r.residual("isotropy", pair_res);
      r.residual("invariance", inv_res);
      r.record(basis.cols() > 0 && pair_res <= 1e-8 && inv_res <= 1e-8,
               describe("isotropic subspace check in " + family_name(g.family), g.size, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), g.size, i));
    }
  }

  int tested = 0;
  for (int i = 0; i < instances; ++i) {
    const GroupKind& g = i % 2 == 0 ? sp4 : so5;
    const FormSpec form = standard_form(g);
    Rng rng(trial_seed(opt, kClassicalPairs, i));
    const TupleWitness t{{random_group_element(rng, form), random_group_element(rng, form)}, {}};
    try {
      const ClassSpec spec = class_of(kappa(t, opt.tol), g, opt.tol);
      if (!property_p_classical(spec, opt.tol).verdict) continue;
      ++tested;
      const int dim = lie_centralizer_dim_in_g(t, form, opt.tol);
      r.record(dim == 0, describe("Lie centralizer dim " + std::to_string(dim), g.size, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), g.size, i));
    }
  }
  r.record(tested > 0, "no sampled classical pair had property P");
  return r;
}

SuiteResult suite_surface_relations(const SuiteOptions& opt) {
  SuiteResult r{"surface-relations",
                "solved handles reproduce the puncture product; det != 1 is rejected", 0, 0,
                {}, {}};
  const int instances = std::max(10, opt.trials / 2);
  for (int i = 0; i < instances; ++i) {
    Rng rng(trial_seed(opt, kSurface, i));
    const int n = rng.uniform_int(2, 4);
    const int k = rng.uniform_int(1, 3);
    const int p = rng.uniform_int(1, 2);
    std::vector<ComplexMatrix> punctures;
    for (int c = 0; c < k; ++c) punctures.push_back(random_sl_semisimple(rng, n));
    if (i % 10 == 0) punctures = {punctures.front(), inverse(punctures.front())};
    try {
      const auto handles = solve_surface_relation(punctures, p, opt.tol);
      const auto check = verify_surface_relation(punctures, handles.matrices, opt.tol);
      r.residual("relation", check.residual);
      r.record(check.holds && handles.length() == 2 * p,
               describe("relation residual " + std::to_string(check.residual), n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
    if (i % 5 == 0) {
      punctures.front() *= 1.5;
      bool rejected = false;
      try {
        solve_surface_relation(punctures, p, opt.tol);
      } catch (const Error& e) {
        rejected = e.code() == ErrorCode::UnsolvableByTheorem;
      }
      r.record(rejected, describe("det != 1 not rejected", n, i));
    }
  }
  return r;
}

SuiteResult suite_commutator_solvers(const SuiteOptions& opt) {
  SuiteResult r{"commutator-solvers",
                "explicit pairs have the requested semisimple or unipotent commutator", 0, 0,
                {}, {}};
  const int instances = std::max(10, opt.trials / 2);
  for (int i = 0; i < instances; ++i) {
    const int n = 2 + i % 5;
    Rng rng(trial_seed(opt, kSolvers, i));
    const auto spectrum = random_unit_product_spectrum(rng, n);
    try {
      const auto pair = solve_semisimple(spectrum, std::nullopt, opt.tol);
      const ComplexMatrix target = diag_of(spectrum);
      const double res = (kappa(pair, opt.tol) - target).norm() / target.norm();
      r.residual("semisimple", res);
      r.record(res <= 1e-8, describe("semisimple residual", n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  }
  for (int n = 1; n <= 6; ++n) {
    for (const auto& pi : partitions_of(n)) {
      try {
        const auto pair = solve_unipotent(pi, opt.tol);
        const auto js = eigen_and_jordan(kappa(pair, opt.tol), opt.tol);
        const bool ok = js.blocks.size() == 1 && same_eigenvalue(js.blocks[0].value, 1.0) &&
                        js.blocks[0].partition == pi;
        r.record(ok, describe("unipotent Jordan type mismatch", n, 0));
      } catch (const Error& e) {
        r.record(false, describe(e.what(), n, 0));
      }
    }
  }
  return r;
}

SuiteResult suite_decider_equivalence(const SuiteOptions& opt) {
  SuiteResult r{"decider-equivalence",
                "subset enumeration, wedge-power fixed vectors and fixed-space counts agree on "
                "property P",
                0, 0, {}, {}};
  auto compare = [&](const ClassSpec& spec, const ComplexMatrix& m, int i) {
    const int n = spec.n();
    try {
      const bool subsets = property_p_sl(spec, opt.tol).verdict;
      const bool wedge = property_p_via_wedge(m, opt.tol);
      const auto fixed = fixed_space_dims(spec, opt.tol);
      r.record(subsets == wedge, describe("subset and wedge verdicts differ", n, i));
      r.record(subsets == (fixed.semisimple_fixed == fixed.torus_fixed),
               describe("fixed-space count disagrees", n, i));
    } catch (const Error& e) {
      r.record(false, describe(e.what(), n, i));
    }
  };
  const int instances = std::max(10, 2 * opt.trials);
  for (int i = 0; i < instances; ++i) {
    const int n = 2 + i % 4;
    Rng rng(trial_seed(opt, kDeciders, i));
    const auto spectrum =
        i % 2 == 0 ? random_unit_product_spectrum(rng, n) : planted_spectrum(rng, n);
    compare(semisimple_spec(spectrum), conjugate(random_conjugator(rng, n, kSampleCondition), diag_of(spectrum)), i);
  }
  Rng rng(trial_seed(opt, kDeciders, instances));
  int j = 0;
  for (const auto& entry : sl2_catalog(opt.tol)) {
    compare(entry.spec, conjugate(random_conjugator(rng, 2), representative(entry.spec, opt.tol)),
            j++);
  }
  return r;
}

std::vector<SuiteResult> run_theorem_suites(const SuiteOptions& opt) {
  if (opt.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  opt.tol.validate();
  return {suite_scalar_stabilizer(opt),           suite_differential_rank_law(opt),
          suite_tangent_dimension(opt),           suite_full_generation(opt),
          suite_classical_finite_stabilizer(opt), suite_surface_relations(opt),
          suite_commutator_solvers(opt),          suite_decider_equivalence(opt)};
}

io::Json suite_to_json(const SuiteResult& s) {
  io::Json worst = io::Json::object();
  for (const auto& [k, v] : s.worst) worst[k] = io::number(v);
  return io::Json{{"name", s.name},         {"claim", s.claim},
                  {"checks", s.checks},     {"failures", s.failures},
                  {"passed", s.passed()},   {"worst_residuals", std::move(worst)},
                  {"notes", s.notes}};
}

io::Json suites_report(const SuiteOptions& opt, const std::vector<SuiteResult>& suites) {
  io::Json list = io::Json::array();
  bool all = true;
  for (const auto& s : suites) {
    list.push_back(suite_to_json(s));
    all = all && s.passed();
  }
  return io::Json{{"command", "verify-theorems"},
                  {"seed", opt.seed},
                  {"trials", opt.trials},
                  {"tolerance", io::tolerance_to_json(opt.tol)},
                  {"suites", std::move(list)},
                  {"passed", all}};
}

}  // namespace flatmod
