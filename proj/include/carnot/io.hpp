#ifndef CARNOT_IO_HPP
#define CARNOT_IO_HPP

#include <json.hpp>

#include "carnot/forms.hpp"
#include "carnot/presentation.hpp"

namespace carnot {

using Json = nlohmann::ordered_json;

/// Document formats: one JSON document per object, with a "kind" field
/// ("algebra", "presentation", "map", "form"), a format "version", and the
/// field tag "d".  Rationals serialize as "p/q" text, Q(sqrt(d)) elements as
/// {"a": ..., "b": ...}; all indices are 0-based.

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json field_element_json(const FieldElement& x);
FieldElement field_element_from_json(const Json& j, int d);
Json matrix_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, int d);
Json vec_json(const Vec& v);
Vec vec_from_json(const Json& j, int d);

Json algebra_json(const GradedAlgebra& g, const std::string& name = "");
GradedAlgebra algebra_from_json(const Json& j);

Json presentation_json(const Presentation& p, const std::string& name = "");
Presentation presentation_from_json(const Json& j);

Json map_json(const Matrix& first_layer, int d, const std::string& name = "");
Json map_json(const GradedMap& map, int d, const std::string& name = "");
/// Accepts either a "first_layer" matrix or a "layers" list of per-layer
/// matrices (the first one is returned; higher layers of automorphisms are
/// induced through brackets and verified).
Matrix map_first_layer_from_json(const Json& j);
GradedMap map_from_json(const Json& j);

Json form_json(const Form& f);
Form form_from_json(const Json& j, int d);

/// Witness lists from an optional "witnesses" key.
std::vector<Vec> witnesses_from_json(const Json& j, int dim, int d);

/// Canonical serialization: fixed key order from the writers above, two-space
/// indent, newline-terminated; emit-parse-reemit is byte identical.
std::string canonical(const Json& j);

Json load_json_file(const std::string& path);

}  // namespace carnot

#endif
