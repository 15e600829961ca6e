#pragma once

#include <json.hpp>

#include "flatmod/commutator_lab.hpp"
#include "flatmod/conjugacy_classes.hpp"
#include "flatmod/generation_check.hpp"
#include "flatmod/moduli_dims.hpp"

namespace flatmod::io {

using Json = nlohmann::ordered_json;

// Parsers throw Error(InvalidInput) on missing keys or wrong shapes.

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"n": n, "re": [[...] rows], "im": [[...] rows]}; "im" may be omitted on
/// input.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
std::vector<ComplexMatrix> matrices_from_json(const Json& j);

Json group_to_json(const GroupKind& g);
GroupKind group_from_json(const Json& j);

/// {"group": {...}, "eigs": [{"re", "im", "partition"}]}.
Json class_to_json(const ClassSpec& spec);
ClassSpec class_from_json(const Json& j);

Json tuple_to_json(const TupleWitness& t);
TupleWitness tuple_from_json(const Json& j);

Json tolerance_to_json(const Tolerance& tol);
/// Missing keys keep the defaults of `base`.
Tolerance tolerance_from_json(const Json& j, Tolerance base = {});

Json report_to_json(const DimensionReport& r);
Json span_to_json(const SpanClosureResult& s);
Json catalog_to_json(const std::vector<CatalogEntry>& entries);

/// {"error": {"code": "...", "message": "...", "detail": x}}.
Json error_to_json(const Error& e);
Json error_to_json(std::string_view code, const std::string& message);

/// Finite doubles as numbers, infinities and NaN as null.
Json number(double x);

}  // namespace flatmod::io
