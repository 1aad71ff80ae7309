#include "carnot/io.hpp"

#include <fstream>

namespace carnot {

Json rational_json(const Rational& q) { return Json(rational_str(q)); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error("expected a rational ('p/q' text or integer)");
}

Json field_element_json(const FieldElement& x) {
  if (x.is_rational()) return rational_json(x.rat_part());
  Json j = Json::object();
  j["a"] = rational_json(x.rat_part());
  j["b"] = rational_json(x.irr_part());
  return j;
}

FieldElement field_element_from_json(const Json& j, int d) {
  if (j.is_object()) {
    Rational a = j.contains("a") ? rational_from_json(j.at("a")) : Rational(0);
    Rational b = j.contains("b") ? rational_from_json(j.at("b")) : Rational(0);
    return FieldElement(a, b, d);
  }
  return FieldElement(rational_from_json(j), 0, d);
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(field_element_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, int d) {
  if (!j.is_array()) throw Error("matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
  Matrix m(rows, cols, d);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<size_t>(i));
    if (static_cast<int>(row.size()) != cols) throw Error("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m.at(i, c) = field_element_from_json(row.at(static_cast<size_t>(c)), d);
  }
  return m;
}

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(field_element_json(x));
  return out;
}

Vec vec_from_json(const Json& j, int d) {
  if (!j.is_array()) throw Error("vector must be an array");
  Vec v;
  for (const auto& e : j) v.push_back(field_element_from_json(e, d));
  return v;
}

Json algebra_json(const GradedAlgebra& g, const std::string& name) {
  Json j = Json::object();
  j["version"] = 1;
  j["kind"] = "algebra";
  if (!name.empty()) j["name"] = name;
  j["d"] = g.field_tag();
  j["layer_dims"] = g.layer_dims();
  Json structure = Json::array();
  for (const auto& t : g.canonical_triples()) {
    Json entry = Json::array();
    entry.push_back(t.i);
    entry.push_back(t.j);
    entry.push_back(t.k);
    entry.push_back(field_element_json(t.c));
    structure.push_back(std::move(entry));
  }
  j["structure"] = std::move(structure);
  if (g.complex_structure()) j["complex_structure"] = matrix_json(*g.complex_structure());
  return j;
}

GradedAlgebra algebra_from_json(const Json& j) {
  if (j.value("kind", "") != "algebra") throw Error("document kind is not 'algebra'");
  int d = j.at("d").get<int>();
  std::vector<int> dims = j.at("layer_dims").get<std::vector<int>>();
  std::vector<StructureTriple> triples;
  for (const auto& e : j.at("structure")) {
    if (!e.is_array() || e.size() != 4) throw Error("structure entries are [i, j, k, value]");
    triples.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                       field_element_from_json(e.at(3), d)});
  }
  GradedAlgebra g(dims, triples, d);
  if (j.contains("complex_structure")) {
    Matrix jm = matrix_from_json(j.at("complex_structure"), d);
    if (jm.rows() != g.dim() || jm.cols() != g.dim()) throw Error("complex_structure shape mismatch");
    g.set_complex_structure(std::move(jm));
  }
  return g;
}

Json presentation_json(const Presentation& p, const std::string& name) {
  Json j = Json::object();
  j["version"] = 1;
  j["kind"] = "presentation";
  if (!name.empty()) j["name"] = name;
  j["d"] = p.d;
  j["factor_field"] = p.F == FactorField::Real ? "real" : "complex";
  j["m"] = p.m;
  j["n"] = p.n;
  Json basis = Json::array();
  for (int r = 0; r < p.K.dim(); ++r) basis.push_back(vec_json(p.K.basis_vector(r)));
  j["K_basis"] = std::move(basis);
  return j;
}

Presentation presentation_from_json(const Json& j) {
  if (j.value("kind", "") != "presentation") throw Error("document kind is not 'presentation'");
  Presentation p{FactorField::Real, 0, 0, 0, Subspace::zero(0, 0)};
  p.d = j.at("d").get<int>();
  std::string f = j.at("factor_field").get<std::string>();
  if (f == "real")
    p.F = FactorField::Real;
  else if (f == "complex")
    p.F = FactorField::Complex;
  else
    throw Error("factor_field must be 'real' or 'complex'");
  p.m = j.at("m").get<int>();
  p.n = j.at("n").get<int>();
  if (p.m < 1 || p.n < 1) throw Error("m and n must be positive");
  std::vector<Vec> rows;
  for (const auto& r : j.at("K_basis")) {
    Vec v = vec_from_json(r, p.d);
    if (static_cast<int>(v.size()) != p.second_layer_dim())
      throw Error("K basis vectors need " + std::to_string(p.second_layer_dim()) + " coordinates");
    rows.push_back(std::move(v));
  }
  p.K = Subspace::span(rows, p.second_layer_dim(), p.d);
  return p;
}

Json map_json(const Matrix& first_layer, int d, const std::string& name) {
  Json j = Json::object();
  j["version"] = 1;
  j["kind"] = "map";
  if (!name.empty()) j["name"] = name;
  j["d"] = d;
  j["first_layer"] = matrix_json(first_layer);
  return j;
}

Json map_json(const GradedMap& map, int d, const std::string& name) {
  Json j = Json::object();
  j["version"] = 1;
  j["kind"] = "map";
  if (!name.empty()) j["name"] = name;
  j["d"] = d;
  Json layers = Json::array();
  for (int l = 1; l <= map.layer_count(); ++l) layers.push_back(matrix_json(map.layer(l)));
  j["layers"] = std::move(layers);
  return j;
}

Matrix map_first_layer_from_json(const Json& j) {
  if (j.value("kind", "") != "map") throw Error("document kind is not 'map'");
  int d = j.at("d").get<int>();
  if (j.contains("first_layer")) return matrix_from_json(j.at("first_layer"), d);
  if (j.contains("layers") && !j.at("layers").empty()) return matrix_from_json(j.at("layers").at(0), d);
  throw Error("map document needs 'first_layer' or 'layers'");
}

GradedMap map_from_json(const Json& j) {
  if (j.value("kind", "") != "map") throw Error("document kind is not 'map'");
  int d = j.at("d").get<int>();
  if (!j.contains("layers")) return GradedMap({map_first_layer_from_json(j)});
  std::vector<Matrix> layers;
  for (const auto& m : j.at("layers")) layers.push_back(matrix_from_json(m, d));
  if (layers.empty()) throw Error("map document has no layers");
  return GradedMap(std::move(layers));
}

Json form_json(const Form& f) {
  Json j = Json::object();
  j["version"] = 1;
  j["kind"] = "form";
  j["d"] = f.field_tag();
  j["degree"] = f.degree();
  Json terms = Json::array();
  for (const auto& [idx, c] : f.terms()) {
    Json term = Json::array();
    term.push_back(idx);
    if (c.is_pure()) {
      term.push_back(field_element_json(c.scalar));
    } else {
      Json sym = Json::object();
      sym["scalar"] = field_element_json(c.scalar);
      Json dphi = Json::array();
      for (const auto& [i, v] : c.dphi) {
        Json pair = Json::array();
        pair.push_back(i);
        pair.push_back(field_element_json(v));
        dphi.push_back(std::move(pair));
      }
      sym["dphi"] = std::move(dphi);
      term.push_back(std::move(sym));
    }
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

Form form_from_json(const Json& j, int d) {
  if (j.value("kind", "") != "form") throw Error("document kind is not 'form'");
  int dd = j.contains("d") ? j.at("d").get<int>() : d;
  Form f(j.at("degree").get<int>(), dd);
  for (const auto& term : j.at("terms")) {
    if (!term.is_array() || term.size() != 2) throw Error("form terms are [indices, coefficient]");
    std::vector<int> idx = term.at(0).get<std::vector<int>>();
    const Json& cj = term.at(1);
    SymCoeff c(FieldElement::zero(dd));
    if (cj.is_object() && cj.contains("dphi")) {
      c.scalar = field_element_from_json(cj.at("scalar"), dd);
      for (const auto& pair : cj.at("dphi"))
        c.dphi[pair.at(0).get<int>()] = field_element_from_json(pair.at(1), dd);
    } else {
      c = SymCoeff(field_element_from_json(cj, dd));
    }
    f.add_term(idx, c);
  }
  return f;
}

std::vector<Vec> witnesses_from_json(const Json& j, int dim, int d) {
  std::vector<Vec> out;
  if (!j.contains("witnesses")) return out;
  for (const auto& w : j.at("witnesses")) {
    Vec v = vec_from_json(w, d);
    if (static_cast<int>(v.size()) != dim) throw Error("witness dimension mismatch");
    out.push_back(std::move(v));
  }
  return out;
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace carnot
