// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit on any
// failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "flatmod/classical_forms.hpp"
#include "flatmod/cli_frontend.hpp"
#include "flatmod/generation_check.hpp"
#include "flatmod/moduli_dims.hpp"
#include "flatmod/theorem_suites.hpp"

using namespace flatmod;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexMatrix diag_of(const std::vector<Complex>& v) {
  ComplexMatrix d = ComplexMatrix::Zero(static_cast<Eigen::Index>(v.size()),
                                        static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v[i];
  return d;
}

// The 100 property-P pairs shared by criteria 3, 4, 5 and 8.
std::vector<SampledPair> property_p_pairs() {
  std::vector<SampledPair> out;
  for (int i = 0; i < 100; ++i) out.push_back(property_p_pair(derive_seed(kSeed, i), 2 + i % 5));
  return out;
}

std::vector<SampledPair> non_property_p_pairs() {
  std::vector<SampledPair> out;
  for (int i = 0; i < 50; ++i) {
    out.push_back(non_property_p_pair(derive_seed(kSeed + 1, i), 2 + i % 5, i));
  }
  return out;
}

Verdict sl2_catalog_dims() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const auto cat = sl2_catalog();
  const double secs = seconds_since(t0);
  const std::vector<std::string> names = {"I", "-I", "R_2", "R_e", "R_lambda"};
  const std::vector<int> x_dims = {6, 5, 7, 7, 7};
  v.require(cat.size() == 5, "catalog size");
  for (size_t i = 0; i < cat.size() && i < 5; ++i) {
    v.require(cat[i].name == names[i], "order of strata");
    v.require(cat[i].dim_XC == x_dims[i], cat[i].name + " dim X");
  }
  if (cat.size() == 5) {
    v.require(cat[1].dim_MC == 2, "-I dim M");
    v.require(cat[3].dim_MC == 4, "R_e dim M");
  }
  v.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict commutator_solvers() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(kSeed + 2, i));
    const int n = 2 + i % 5;
    const auto spectrum = random_unit_product_spectrum(rng, n);
    const ComplexMatrix target = diag_of(spectrum);
    const double res = (kappa(solve_semisimple(spectrum)) - target).norm() / target.norm();
    v.require(res <= 1e-8, "semisimple residual " + std::to_string(res));
  }
  for (int n = 1; n <= 6; ++n) {
    for (const auto& pi : partitions_of(n)) {
      const auto js = eigen_and_jordan(kappa(solve_unipotent(pi)));
      v.require(js.blocks.size() == 1 && same_eigenvalue(js.blocks[0].value, 1.0) &&
                    js.blocks[0].partition == pi,
                "unipotent Jordan type for n=" + std::to_string(n));
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict scalar_stabilizer(const std::vector<SampledPair>& pairs) {
  Verdict v;
  for (const auto& s : pairs) {
    const auto stab = common_stabilizer_dim(s.pair);
    v.require(stab.dim == 1, "stabilizer dim " + std::to_string(stab.dim));
    for (const auto& x : stab.basis) {
      const auto n = x.rows();
      const Complex c = x.trace() / static_cast<double>(n);
      const double dist = (x - c * ComplexMatrix::Identity(n, n)).norm() / x.norm();
      v.require(dist <= 1e-7, "kernel vector not scalar");
    }
  }
  return v;
}

Verdict rank_law(const std::vector<SampledPair>& p_pairs, const std::vector<SampledPair>& others) {
  Verdict v;
  for (const auto* list : {&p_pairs, &others}) {
    for (const auto& s : *list) {
      const int n = s.spec.n();
      const int rank = dkappa_rank(s.pair.matrices[0], s.pair.matrices[1]).rank;
      const int z = common_stabilizer_dim(s.pair).dim;
      v.require(rank + z == n * n, "rank " + std::to_string(rank) + " + dim Z " +
                                       std::to_string(z) + " at n=" + std::to_string(n));
    }
  }
  return v;
}

Verdict tangent_dimension(const std::vector<SampledPair>& p_pairs,
                          const std::vector<SampledPair>& others) {
  Verdict v;
  for (const auto& s : p_pairs) {
    const int n = s.spec.n();
    if (n > 5) continue;
    const auto& b = s.pair.matrices[0];
    const auto& d = s.pair.matrices[1];
    const auto rep = dims_for_class(s.spec, 1, 2);
    const int numeric = tangent_dim_XC_numeric(b, d);
    v.require(numeric == rep.dim_XC && rep.dim_XC == n * n + class_dim(s.spec) + 1,
              "tangent " + std::to_string(numeric) + " vs " + std::to_string(rep.dim_XC));
  }
  for (const auto* list : {&p_pairs, &others}) {
    for (const auto& s : *list) {
      const int n = s.spec.n();
      const auto c = cohomology_dims(s.pair.matrices[0], s.pair.matrices[1]);
      v.require(c.h1 - c.h0 == n * n, "h1 - h0 at n=" + std::to_string(n));
    }
  }
  return v;
}

Verdict decider_equivalence() {
  Verdict v;
  auto compare = [&](const ClassSpec& spec, const ComplexMatrix& m) {
    const bool subsets = property_p_sl(spec).verdict;
    const auto fixed = fixed_space_dims(spec);
    v.require(subsets == property_p_via_wedge(m), "wedge disagrees at n=" + std::to_string(spec.n()));
    v.require(subsets == (fixed.semisimple_fixed == fixed.torus_fixed), "fixed-space disagrees");
  };
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive_seed(kSeed + 3, i));
    const int n = 2 + i % 4;
    const auto spectrum =
        i % 2 == 0 ? random_unit_product_spectrum(rng, n) : planted_spectrum(rng, n);
    const ComplexMatrix q = random_conjugator(rng, n);
    compare(semisimple_spec(spectrum), q * diag_of(spectrum) * inverse(q));
  }
  Rng rng(kSeed + 4);
  for (const auto& e : sl2_catalog()) {
    const ComplexMatrix q = random_conjugator(rng, 2);
    compare(e.spec, q * representative(e.spec) * inverse(q));
  }
  return v;
}

Verdict classical_suite() {
  Verdict v;
  const GroupKind kinds[] = {{Family::Sp, 4}, {Family::SO_odd, 5}};
  for (int i = 0; i < 50; ++i) {
    const GroupKind& g = kinds[i % 2];
    const FormSpec form = standard_form(g);
    Rng rng(derive_seed(kSeed + 5, i));
    ComplexMatrix k = random_group_element(rng, form);
    if (i % 5 == 4) {
      const ComplexMatrix h = random_group_element(rng, form);
      k = h * representative({g, {{1.0, {g.size}}}}) * inverse(h);
    }
    const std::vector<ComplexMatrix> commuting = {inverse(k), k * k * k};
    const ComplexMatrix basis = isotropic_invariant_subspace(k, commuting, form);
    v.require(basis.cols() > 0, "empty isotropic subspace");
    v.require(max_pairing(basis, form) <= 1e-8, "pairing too large");
    double inv = invariance_residual(basis, k) / std::max(1.0, operator_norm(k));
    for (const auto& c : commuting) {
      inv = std::max(inv, invariance_residual(basis, c) / std::max(1.0, operator_norm(c)));
    }
    v.require(inv <= 1e-8, "subspace not invariant");
  }
  int with_p = 0;
  for (int i = 0; i < 50; ++i) {
    const GroupKind& g = kinds[i % 2];
    const FormSpec form = standard_form(g);
    Rng rng(derive_seed(kSeed + 6, i));
    const TupleWitness t{{random_group_element(rng, form), random_group_element(rng, form)}, {}};
    if (!property_p_classical(class_of(kappa(t), g)).verdict) continue;
    ++with_p;
    v.require(lie_centralizer_dim_in_g(t, form) == 0, "nonzero Lie centralizer");
  }
  v.require(with_p > 0, "no sampled pair passed the classical test");
  return v;
}

Verdict generation_suite(const std::vector<SampledPair>& p_pairs) {
  Verdict v;
  for (const auto& s : p_pairs) v.require(generates_full_group(s.pair), "property-P pair did not generate");
  for (int i = 0; i < 20; ++i) {
    const auto c = non_property_p_pair(derive_seed(kSeed + 7, i), 2 + i % 5, 2);
    v.require(!generates_full_group(c.pair), "commuting pair generated");
  }
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 4;
    const auto s = i % 2 ? p_pairs[static_cast<size_t>(i)]
                         : non_property_p_pair(derive_seed(kSeed + 8, i), n, i / 2);
    Rng rng(derive_seed(kSeed + 9, i));
    const ComplexMatrix q = random_conjugator(rng, s.spec.n());
    TupleWitness moved = s.pair;
    for (auto& a : moved.matrices) a = q * a * inverse(q);
    v.require(algebra_span(s.pair).dim == algebra_span(moved).dim, "span dim not invariant");
  }
  return v;
}

Verdict surface_relations() {
  Verdict v;
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(kSeed + 10, i));
    const int n = rng.uniform_int(2, 4);
    const int k = rng.uniform_int(1, 3);
    const int p = rng.uniform_int(1, 2);
    std::vector<ComplexMatrix> punctures;
    for (int c = 0; c < k; ++c) punctures.push_back(random_sl_semisimple(rng, n));
    const auto handles = solve_surface_relation(punctures, p);
    const auto check = verify_surface_relation(punctures, handles.matrices);
    v.require(check.holds && check.residual <= 1e-8,
              "relation residual " + std::to_string(check.residual));

    punctures.front() *= 1.25;
    bool rejected = false;
    try {
      solve_surface_relation(punctures, p);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::UnsolvableByTheorem;
    }
    v.require(rejected, "det != 1 accepted");
  }
  return v;
}

Verdict determinism() {
  Verdict v;
  cli::RunConfig cfg;
  cfg.command = "verify-theorems";
  cfg.seed = 7;
  cfg.trials = 100;
  std::ostringstream a, b;
  const int sa = cli::run(cfg, a);
  const int sb = cli::run(cfg, b);
  v.require(!a.str().empty() && a.str() == b.str(), "reports differ");
  v.require(sa == cli::kExitOk && sb == cli::kExitOk, "verify-theorems reported failures");
  return v;
}

}  // namespace

int main() {
  const auto p_pairs = property_p_pairs();
  const auto others = non_property_p_pairs();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"SL(2) catalog dimensions", sl2_catalog_dims},
      {"semisimple and unipotent solvers", commutator_solvers},
      {"scalar stabilizer of property-P pairs", [&] { return scalar_stabilizer(p_pairs); }},
      {"differential rank law", [&] { return rank_law(p_pairs, others); }},
      {"tangent dimension and Euler characteristic", [&] { return tangent_dimension(p_pairs, others); }},
      {"decider equivalence", decider_equivalence},
      {"classical isotropic subspaces and centralizers", classical_suite},
      {"full generation", [&] { return generation_suite(p_pairs); }},
      {"surface relations", surface_relations},
      {"verify-theorems determinism", determinism},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d %s%s%s\n", v.ok ? "PASS" : "FAIL", index++, name.c_str(),
                v.ok ? "" : " -- ", v.ok ? "" : v.detail.c_str());
    if (!v.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
