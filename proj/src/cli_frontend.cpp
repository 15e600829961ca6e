#include "flatmod/cli_frontend.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "flatmod/classical_forms.hpp"
#include "flatmod/generation_check.hpp"
#include "flatmod/json_io.hpp"
#include "flatmod/moduli_dims.hpp"
#include "flatmod/theorem_suites.hpp"

namespace flatmod::cli {

namespace {

using io::Json;

struct Context {
  const RunConfig& config;
  Json input;
  Tolerance tol;
};

struct Outcome {
  Json report;
  bool verdict_ok = true;
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("input needs \"") + key + "\"");
  return j.at(key);
}

int int_or(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return j.at(key).get<int>();
}

// Accepts {"class": {...}} or the class object itself.
ClassSpec class_input(const Json& in) {
  return io::class_from_json(in.contains("class") ? in.at("class") : in);
}

std::vector<ComplexMatrix> matrices_input(const Json& in) {
  return io::matrices_from_json(need(in, "matrices"));
}

Json vectors_to_json(const ComplexMatrix& cols) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < cols.rows(); ++r) {
      re.push_back(cols(r, c).real());
      im.push_back(cols(r, c).imag());
    }
    out.push_back(Json{{"re", std::move(re)}, {"im", std::move(im)}});
  }
  return out;
}

Outcome cmd_check_p(Context& ctx) {
  const ClassSpec spec = class_input(ctx.input);
  spec.validate(ctx.tol);
  Outcome o;
  o.report["class"] = io::class_to_json(spec);
  if (spec.group.is_classical()) {
    const auto v = property_p_classical(spec, ctx.tol);
    o.report["verdict"] = v.verdict;
    o.report["min_residual"] = io::number(v.min_residual);
    Json paired = Json::array();
    for (Complex z : v.paired) paired.push_back(io::complex_to_json(z));
    o.report["paired"] = std::move(paired);
    if (v.witness) {
      Json w = Json::array();
      for (const auto& f : *v.witness) w.push_back(Json{{"index", f.index}, {"sign", f.sign}});
      o.report["witness"] = std::move(w);
    } else {
      o.report["witness"] = nullptr;
    }
    return o;
  }
  const auto v = property_p_sl(spec, ctx.tol);
  o.report["verdict"] = v.verdict;
  o.report["min_residual"] = io::number(v.min_residual);
  o.report["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  if (spec.n() <= kFixedSpaceCap) {
    const auto f = fixed_space_dims(spec, ctx.tol);
    o.report["fixed_space"] = Json{{"semisimple_fixed", f.semisimple_fixed},
                                   {"torus_fixed", f.torus_fixed}};
    o.verdict_ok = o.verdict_ok && ((f.semisimple_fixed == f.torus_fixed) == v.verdict);
  }
  if (spec.n() <= kWedgeCap) {
    const bool wedge = property_p_via_wedge(representative(spec, ctx.tol), ctx.tol);
    o.report["wedge_verdict"] = wedge;
    o.verdict_ok = o.verdict_ok && wedge == v.verdict;
  }
  return o;
}

Outcome cmd_solve_commutator(Context& ctx) {
  const Json& in = ctx.input;
  ClassSpec spec;
  if (in.contains("eigenvalues")) {
    const Json& ev = in.at("eigenvalues");
    if (!ev.is_array() || ev.empty()) bad("\"eigenvalues\" must be a nonempty array");
    std::vector<Complex> values;
    for (const auto& z : ev) values.push_back(io::complex_from_json(z));
    spec = semisimple_spec(values);
  } else if (in.contains("partition")) {
    Partition pi;
    const Json& part = in.at("partition");
    if (!part.is_array() || part.empty()) bad("\"partition\" must be a nonempty array");
    for (const auto& k : part) {
      if (!k.is_number_integer()) bad("partition parts must be integers");
      pi.push_back(k.get<int>());
    }
    int n = 0;
    for (int k : pi) n += k;
    spec = {{Family::SL, n}, {{1.0, pi}}};
  } else {
    spec = class_input(in);
  }
  const bool conjugate = in.contains("conjugate") && in.at("conjugate").is_boolean() &&
                         in.at("conjugate").get<bool>();
  const TupleWitness t = conjugate ? sample_conjugated_pair(spec, ctx.config.seed, ctx.tol)
                                   : solve_for_class(spec, ctx.tol);
  const ComplexMatrix k = kappa(t, ctx.tol);
  const bool match = same_structure(eigen_and_jordan(k, ctx.tol), spec.structure());

  Outcome o;
  o.report["class"] = io::class_to_json(spec);
  o.report["tuple"] = io::tuple_to_json(t);
  o.report["kappa"] = io::matrix_to_json(k);
  o.report["structure_match"] = match;
  Json res = Json::object();
  res["kappa_det"] = io::number(std::abs(k.determinant() - 1.0));
  bool close = true;
  if (!conjugate) {
    const double d = normalized_distance(k, representative(spec, ctx.tol));
    res["kappa_vs_representative"] = io::number(d);
    close = d <= ctx.tol.match_eps;
  }
  o.report["residuals"] = std::move(res);
  o.verdict_ok = match && close;
  return o;
}

Outcome cmd_stabilizer(Context& ctx) {
  const TupleWitness t{matrices_input(ctx.input), {}};
  const auto stab = common_stabilizer_dim(t, ctx.tol);
  Outcome o;
  o.report["dim"] = stab.dim;
  Json basis = Json::array();
  for (const auto& x : stab.basis) basis.push_back(io::matrix_to_json(x));
  o.report["basis"] = std::move(basis);
  return o;
}

Outcome cmd_dkappa(Context& ctx) {
  const auto mats = matrices_input(ctx.input);
  if (mats.size() != 2) bad("dkappa needs exactly two matrices [B, D]");
  const int n = static_cast<int>(mats[0].rows());
  const int rank = dkappa_rank(mats[0], mats[1], ctx.tol).rank;
  const int z = common_stabilizer_dim(TupleWitness{mats, {}}, ctx.tol).dim;
  Outcome o;
  o.report["n"] = n;
  o.report["rank"] = rank;
  o.report["stabilizer_dim"] = z;
  o.report["rank_law_holds"] = rank + z == n * n;
  o.verdict_ok = rank + z == n * n;
  return o;
}

Outcome cmd_dims(Context& ctx) {
  const Json& in = ctx.input;
  const ClassSpec spec = class_input(in);
  std::optional<int> dim_z;
  if (in.contains("dim_Z")) dim_z = int_or(in, "dim_Z", 0);
  const int p = int_or(in, "p", 2);
  const bool sample = in.contains("sample") && in.at("sample").is_boolean() &&
                      in.at("sample").get<bool>();
  Outcome o;
  DimensionReport r;
  if (sample) {
    if (p != 2) throw Error(ErrorCode::InvalidArgument, "sampling checks pairs only (p = 2)");
    r = dims_with_sample(spec, dim_z, ctx.config.seed, ctx.tol);
    if (r.generic_point.value_or(false)) o.verdict_ok = r.numeric_tangent_XC == r.dim_XC;
  } else {
    r = dims_for_class(spec, dim_z, p, ctx.tol);
  }
  o.report = io::report_to_json(r);
  o.report["class"] = io::class_to_json(spec);
  return o;
}

Outcome cmd_sl2_catalog(Context& ctx) {
  const auto entries = sl2_catalog(ctx.tol);
  Outcome o;
  o.report["decomposition"] = kSl2Decomposition;
  o.report["entries"] = io::catalog_to_json(entries);
  for (const auto& e : entries) {
    if (e.stated_dim_MC && *e.stated_dim_MC != e.dim_MC) o.verdict_ok = false;
  }
  return o;
}

Outcome cmd_wedge_crosscheck(Context& ctx) {
  Outcome o;
  if (ctx.input.contains("matrix")) {
    const ComplexMatrix m = io::matrix_from_json(ctx.input.at("matrix"));
    const int n = static_cast<int>(m.rows());
    const GroupKind g = ctx.input.contains("group") ? io::group_from_json(ctx.input.at("group"))
                                                    : GroupKind{Family::SL, n};
    const ClassSpec spec = class_of(m, g, ctx.tol);
    const auto subsets = property_p_sl(spec, ctx.tol);
    const bool wedge = property_p_via_wedge(m, ctx.tol);
    o.report["class"] = io::class_to_json(spec);
    o.report["subset_verdict"] = subsets.verdict;
    o.report["wedge_verdict"] = wedge;
    o.report["agree"] = subsets.verdict == wedge;
    o.verdict_ok = subsets.verdict == wedge;
    return o;
  }
  const SuiteOptions opt{ctx.config.seed, ctx.config.trials, ctx.tol};
  const SuiteResult s = suite_decider_equivalence(opt);
  o.report["seed"] = opt.seed;
  o.report["trials"] = opt.trials;
  o.report["suite"] = suite_to_json(s);
  o.verdict_ok = s.passed();
  return o;
}

Outcome cmd_isotropic(Context& ctx) {
  const Json& in = ctx.input;
  const FormSpec form = standard_form(io::group_from_json(need(in, "group")));
  const ComplexMatrix k = io::matrix_from_json(need(in, "K"));
  std::vector<ComplexMatrix> commuting;
  if (in.contains("commuting") && !in.at("commuting").empty()) {
    commuting = io::matrices_from_json(in.at("commuting"));
  }
  const ComplexMatrix basis = isotropic_invariant_subspace(k, commuting, form, ctx.tol);
  double inv = invariance_residual(basis, k);
  for (const auto& c : commuting) inv = std::max(inv, invariance_residual(basis, c));
  const double pairing_res = max_pairing(basis, form);
  Outcome o;
  o.report["dim"] = basis.cols();
  o.report["basis"] = vectors_to_json(basis);
  o.report["residuals"] = Json{{"max_pairing", io::number(pairing_res)},
                               {"invariance", io::number(inv)}};
  o.verdict_ok = basis.cols() > 0 && pairing_res <= ctx.tol.match_eps &&
                 inv <= ctx.tol.match_eps * std::max(1.0, operator_norm(k));
  return o;
}

Outcome cmd_generate(Context& ctx) {
  const TupleWitness t{matrices_input(ctx.input), {}};
  Outcome o;
  o.report = io::span_to_json(algebra_span(t, ctx.tol));
  if (ctx.input.contains("group")) {
    const GroupKind g = io::group_from_json(ctx.input.at("group"));
    if (g.is_classical()) {
      // Only necessary conditions are available for SO and Sp.
      o.report["lie_centralizer_dim"] = lie_centralizer_dim_in_g(t, standard_form(g), ctx.tol);
      o.report["necessary_conditions_only"] = true;
    }
  }
  return o;
}

Outcome cmd_surface(Context& ctx) {
  const Json& in = ctx.input;
  const auto punctures = io::matrices_from_json(need(in, "punctures"));
  Outcome o;
  std::vector<ComplexMatrix> handles;
  if (in.contains("handles")) {
    handles = io::matrices_from_json(in.at("handles"));
    o.report["mode"] = "verify";
  } else {
    const int p = int_or(in, "p", 1);
    const TupleWitness t = solve_surface_relation(punctures, p, ctx.tol);
    handles = t.matrices;
    o.report["mode"] = "solve";
    o.report["tuple"] = io::tuple_to_json(t);
  }
  const auto check = verify_surface_relation(punctures, handles, ctx.tol);
  o.report["holds"] = check.holds;
  o.report["residuals"] = Json{{"relation", io::number(check.residual)}};
  o.verdict_ok = check.holds;
  return o;
}

Outcome cmd_verify_theorems(Context& ctx) {
  const SuiteOptions opt{ctx.config.seed, ctx.config.trials, ctx.tol};
  const auto suites = run_theorem_suites(opt);
  Outcome o;
  o.report = suites_report(opt, suites);
  o.verdict_ok = o.report.at("passed").get<bool>();
  return o;
}

using Handler = std::function<Outcome(Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"check-p", cmd_check_p},
      {"solve-commutator", cmd_solve_commutator},
      {"stabilizer", cmd_stabilizer},
      {"dkappa", cmd_dkappa},
      {"dims", cmd_dims},
      {"sl2-catalog", cmd_sl2_catalog},
      {"wedge-crosscheck", cmd_wedge_crosscheck},
      {"isotropic", cmd_isotropic},
      {"generate", cmd_generate},
      {"surface", cmd_surface},
      {"verify-theorems", cmd_verify_theorems},
  };
  return table;
}

Json load_input(const RunConfig& c) {
  if (c.inline_json) return Json::parse(*c.inline_json);
  if (c.input_path) {
    std::ifstream f(*c.input_path);
    if (!f) bad("cannot open input file " + *c.input_path);
    return Json::parse(f);
  }
  return Json::object();
}

Tolerance resolve_tolerance(const RunConfig& c, const Json& input) {
  Tolerance tol;
  if (input.is_object() && input.contains("tolerance")) {
    tol = io::tolerance_from_json(input.at("tolerance"));
  }
  if (c.tol_rank) tol.rank_eps = *c.tol_rank;
  if (c.tol_match) tol.match_eps = *c.tol_match;
  if (c.tol_unit) tol.unit_eps = *c.tol_unit;
  tol.validate();
  return tol;
}

void emit(const RunConfig& c, std::ostream& out, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (c.output_path) {
    std::ofstream f(*c.output_path, std::ios::binary);
    if (!f) {
      out << io::error_to_json("invalid-input", "cannot write " + *c.output_path).dump(2) << "\n";
      return;
    }
    f << text;
  } else {
    out << text;
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, h] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

int run(const RunConfig& config, std::ostream& out) {
  Json report;
  int status = kExitOk;
  try {
    const auto it = handlers().find(config.command);
    if (it == handlers().end()) bad("unknown command \"" + config.command + "\"");
    if (config.format != "json") bad("only --format json is supported");
    if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    Json input = load_input(config);
    if (!input.is_object()) bad("input must be a JSON object");
    Context ctx{config, std::move(input), {}};
    ctx.tol = resolve_tolerance(config, ctx.input);
    Outcome o = it->second(ctx);
    Json head{{"command", config.command}, {"tolerance", io::tolerance_to_json(ctx.tol)}};
    for (auto& [k, v] : o.report.items()) {
      if (!head.contains(k)) head[k] = v;
    }
    report = std::move(head);
    report["status"] = o.verdict_ok ? "ok" : "verdict-failure";
    status = o.verdict_ok ? kExitOk : kExitVerdictFailure;
  } catch (const Json::parse_error& e) {
    report = io::error_to_json("invalid-json", e.what());
    status = kExitInputError;
  } catch (const Json::exception& e) {
    report = io::error_to_json("invalid-input", e.what());
    status = kExitInputError;
  } catch (const Error& e) {
    report = io::error_to_json(e);
    status = kExitInputError;
  }
  emit(config, out, report);
  return status;
}

}  // namespace flatmod::cli
