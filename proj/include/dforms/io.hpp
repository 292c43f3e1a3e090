#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dforms/intersection.hpp"

namespace dforms::io {

using Json = nlohmann::json;

/// Malformed or invalid input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rationals are strings "p/q" or "p"; plain integers are also accepted on input.
Rational rational_from(const Json& j);
Json to_json(const Rational& q);
RatVec vector_from(const Json& j);
Json to_json(const RatVec& v);
/// Comma-separated rationals, as given on the command line.
RatVec parse_vector(const std::string& s);

/// {"n", "ineqs": [{"a", "b"}], "eqs": [{"a", "b"}]}; "eqs" is optional.
Polyhedron polyhedron_from(const Json& j);
Json to_json(const Polyhedron& p);

/// {"n"?, "terms": [{"poly": [{"exps", "c"}], "dp": [...], "ds": [...]}]} with
/// 0-based differential indices. "n" may be omitted when the context fixes it.
SuperForm superform_from(const Json& j, std::optional<std::size_t> nvars = std::nullopt);
Json to_json(const SuperForm& a, bool with_n = true);

/// {"complex": {"cells": [...]}, "pieces": [{"cell", "linear", "const"}]}.
PLFunction pl_function_from(const Json& j);
Json to_json(const PLFunction& f);

/// {"n", "terms": [{"cell", "weight", "form", "chart"?}]}; forms are in the
/// chart coordinates of their cell. Charts on input must match the canonical one.
DeltaForm delta_form_from(const Json& j);
/// Canonical form with charts.
Json to_json(const DeltaForm& t);

/// {"matrix": [[...]], "offset": [...]}.
AffineMap affine_map_from(const Json& j);
Json to_json(const AffineMap& f);

Json to_json(const BalanceReport& r);
Json to_json(const GenericityReport& r);
Json to_json(const SuiteReport& r);
/// Error document for a failed precondition.
Json to_json(const PreconditionError& e);

/// Deterministic text form: two-space indentation, trailing newline.
std::string dump(const Json& j);
Json read_file(const std::string& path);

}  // namespace dforms::io
