#include "flatmod/json_io.hpp"

#include <cmath>

namespace flatmod::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  const double re = as_double(field(j, "re"), "re");
  const double im = j.contains("im") ? as_double(j.at("im"), "im") : 0.0;
  return {re, im};
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ri.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Json& re = field(j, "re");
  if (!re.is_array() || re.empty()) bad("matrix \"re\" must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(re.size());
  if (j.contains("n") && as_int(j.at("n"), "n") != n) bad("matrix \"n\" disagrees with rows");
  if (n > kMaxMatrixSize) throw Error(ErrorCode::Capacity, "matrix larger than supported size");
  const Json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || static_cast<Eigen::Index>(im->size()) != n)) {
    bad("matrix \"im\" must match \"re\"");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = re[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      bad("matrix must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      double x = as_double(row[static_cast<size_t>(k)], "matrix entry");
      double y = 0.0;
      if (im) {
        const Json& irow = (*im)[static_cast<size_t>(i)];
        if (!irow.is_array() || static_cast<Eigen::Index>(irow.size()) != n) {
          bad("matrix \"im\" must match \"re\"");
        }
        y = as_double(irow[static_cast<size_t>(k)], "matrix entry");
      }
      m(i, k) = {x, y};
    }
  }
  return m;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json group_to_json(const GroupKind& g) {
  return Json{{"family", family_name(g.family)}, {"size", g.size}};
}

GroupKind group_from_json(const Json& j) {
  const Json& fam = field(j, "family");
  if (!fam.is_string()) bad("\"family\" must be a string");
  GroupKind g;
  try {
    g.family = family_from_name(fam.get<std::string>());
  } catch (const Error& e) {
    bad(e.what());
  }
  g.size = as_int(field(j, "size"), "size");
  g.validate();
  return g;
}

Json class_to_json(const ClassSpec& spec) {
  Json eigs = Json::array();
  for (const auto& b : spec.eigs) {
    eigs.push_back(Json{{"re", b.value.real()}, {"im", b.value.imag()}, {"partition", b.partition}});
  }
  return Json{{"group", group_to_json(spec.group)}, {"eigs", std::move(eigs)}};
}

ClassSpec class_from_json(const Json& j) {
  ClassSpec spec;
  spec.group = group_from_json(field(j, "group"));
  const Json& eigs = field(j, "eigs");
  if (!eigs.is_array() || eigs.empty()) bad("\"eigs\" must be a nonempty array");
  for (const auto& e : eigs) {
    EigenBlock b;
    b.value = complex_from_json(e);
    const Json& part = field(e, "partition");
    if (!part.is_array() || part.empty()) bad("\"partition\" must be a nonempty array");
    for (const auto& k : part) b.partition.push_back(as_int(k, "partition part"));
    spec.eigs.push_back(std::move(b));
  }
  return spec;
}

Json tuple_to_json(const TupleWitness& t) {
  Json mats = Json::array();
  for (const auto& m : t.matrices) mats.push_back(matrix_to_json(m));
  Json prov = Json::object();
  for (const auto& [k, v] : t.provenance) prov[k] = v;
  return Json{{"matrices", std::move(mats)}, {"provenance", std::move(prov)}};
}

TupleWitness tuple_from_json(const Json& j) {
  TupleWitness t;
  t.matrices = matrices_from_json(field(j, "matrices"));
  if (j.contains("provenance")) {
    const Json& prov = j.at("provenance");
    if (!prov.is_object()) bad("\"provenance\" must be an object");
    for (const auto& [k, v] : prov.items()) {
      if (!v.is_string()) bad("provenance values must be strings");
      t.provenance[k] = v.get<std::string>();
    }
  }
  return t;
}

Json tolerance_to_json(const Tolerance& tol) {
  return Json{{"rank_eps", tol.rank_eps}, {"match_eps", tol.match_eps}, {"unit_eps", tol.unit_eps}};
}

Tolerance tolerance_from_json(const Json& j, Tolerance base) {
  if (!j.is_object()) bad("tolerance must be an object");
  if (j.contains("rank_eps")) base.rank_eps = as_double(j.at("rank_eps"), "rank_eps");
  if (j.contains("match_eps")) base.match_eps = as_double(j.at("match_eps"), "match_eps");
  if (j.contains("unit_eps")) base.unit_eps = as_double(j.at("unit_eps"), "unit_eps");
  base.validate();
  return base;
}

Json report_to_json(const DimensionReport& r) {
  Json out{{"group", group_to_json(r.group)},
           {"p", r.p},
           {"dim_class", r.dim_class},
           {"dim_Z", r.dim_Z},
           {"dim_XC", r.dim_XC},
           {"dim_MC", r.dim_MC},
           {"h0", r.h0},
           {"h1", r.h1}};
  if (r.numeric_tangent_XC) out["numeric_tangent_XC"] = *r.numeric_tangent_XC;
  if (r.generic_point) out["generic_point"] = *r.generic_point;
  Json res = Json::object();
  for (const auto& [k, v] : r.residuals) res[k] = number(v);
  out["residuals"] = std::move(res);
  return out;
}

Json span_to_json(const SpanClosureResult& s) {
  return Json{{"dim", s.dim}, {"steps", s.steps}, {"irreducible", s.irreducible}};
}

Json catalog_to_json(const std::vector<CatalogEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    Json row{{"name", e.name},
             {"class", class_to_json(e.spec)},
             {"property_p", e.property_p},
             {"class_dim", e.class_dim},
             {"dim_Z", e.dim_Z},
             {"dim_XC", e.dim_XC},
             {"dim_MC", e.dim_MC}};
    if (e.stated_dim_MC) row["stated_dim_MC"] = *e.stated_dim_MC;
    out.push_back(std::move(row));
  }
  return out;
}

Json error_to_json(const Error& e) {
  Json body{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  if (e.detail() != 0.0) body["detail"] = number(e.detail());
  return Json{{"error", std::move(body)}};
}

Json error_to_json(std::string_view code, const std::string& message) {
  return Json{{"error", Json{{"code", std::string(code)}, {"message", message}}}};
}

}  // namespace flatmod::io
