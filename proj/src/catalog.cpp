#include "carnot/catalog.hpp"

namespace carnot {

namespace {

Json parts(std::initializer_list<std::vector<int>> blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back(b);
  return out;
}

Presentation pres(FactorField f, int m, int n, int d, const std::vector<Vec>& kbasis) {
  int dim = (f == FactorField::Real ? 1 : 2) * n;
  return Presentation{f, m, n, d, Subspace::span(kbasis, dim, d)};
}

Vec qvec(std::initializer_list<long> entries) {
  Vec v;
  for (long e : entries) v.push_back(FieldElement::from_int(e, 0));
  return v;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;

  auto algebra_entry = [&](const std::string& name, const std::string& desc, const GradedAlgebra& g,
                           Json expected) {
    out.push_back({name, desc, algebra_json(g, name), std::move(expected)});
  };
  auto pres_entry = [&](const std::string& name, const std::string& desc, const Presentation& p,
                        Json expected) {
    out.push_back({name, desc, presentation_json(p, name), std::move(expected)});
  };

  {
    Json e;
    e["validate"] = "valid";
    e["homogeneous_dimension"] = 4;
    e["classify"] = "heisenberg(R, 1)";
    e["forms_suite"] = "pass";
    algebra_entry("h1", "first real Heisenberg algebra", heisenberg(1, 0), e);
  }
  {
    Json e;
    e["validate"] = "valid";
    e["homogeneous_dimension"] = 6;
    e["classify"] = "heisenberg(R, 2)";
    e["summands"] = 1;
    e["forms_suite"] = "pass";
    algebra_entry("h2", "second real Heisenberg algebra", heisenberg(2, 0), e);
  }
  {
    Json e;
    e["validate"] = "valid";
    e["homogeneous_dimension"] = 8;
    e["classify"] = "heisenberg(R, 3)";
    algebra_entry("h3", "third real Heisenberg algebra", heisenberg(3, 0), e);
  }
  {
    Json e;
    e["validate"] = "valid";
    e["homogeneous_dimension"] = 8;
    e["classify"] = "heisenberg(C, 1)";
    e["forms_suite"] = "pass";
    algebra_entry("h1c", "first complex Heisenberg algebra", complex_heisenberg(1, 0), e);
  }
  {
    Json e;
    e["validate"] = "valid";
    e["classify"] = "abelian";
    algebra_entry("q2-abelian", "abelian plane", GradedAlgebra({2}, {}, 0), e);
  }
  {
    Json e;
    e["pq_verify"] = "pass";
    e["build"] = Json{{"dim", 8}, {"homogeneous_dimension", 10}};
    e["partition"] = parts({{0, 1, 2}});
    e["orbits"] = parts({{0, 1, 2}});
    e["classify_quotient"] = "product_quotient_candidate(R, n=3, m=1)";
    pres_entry("diag-n3", "three first-Heisenberg factors over the diagonal",
               pres(FactorField::Real, 1, 3, 0, {qvec({1, 1, 1})}), e);
  }
  {
    Json e;
    e["pq_verify"] = "fail";
    e["failing_axioms"] = Json::array({"(5)"});
    e["build"] = Json{{"dim", 5}, {"homogeneous_dimension", 6}};
    e["classify_quotient"] = "heisenberg(R, 2)";
    pres_entry("diag-n2", "two first-Heisenberg factors over the diagonal (second layers collapse)",
               pres(FactorField::Real, 1, 2, 0, {qvec({1, 1})}), e);
  }
  {
    FieldElement a(Rational(-1, 2), Rational(1, 2), 5);  // (sqrt(5) - 1) / 2
    FieldElement one = FieldElement::one(5), zero = FieldElement::zero(5);
    std::vector<Vec> k2 = {{-a, a, one, zero, -one}, {-a, -one, zero, one, a}};
    Json e;
    e["pq_verify"] = "pass";
    e["build"] = Json{{"dim", 13}, {"homogeneous_dimension", 16}};
    e["partition"] = parts({{0, 1, 2, 3, 4}});
    e["classify_quotient"] = "product_quotient_candidate(R, n=5, m=1)";
    pres_entry("z5-k2", "five factors, cyclically invariant two-dimensional K",
               pres(FactorField::Real, 1, 5, 5, k2), e);
  }
  {
    FieldElement a(Rational(-1, 2), Rational(1, 2), 5);
    FieldElement one = FieldElement::one(5), zero = FieldElement::zero(5);
    std::vector<Vec> k3 = {{one, -one, a, zero, -a}, {-a, one, -one, a, zero}};
    Json e;
    e["pq_verify"] = "pass";
    e["build"] = Json{{"dim", 13}, {"homogeneous_dimension", 16}};
    e["partition"] = parts({{0, 1, 2, 3, 4}});
    pres_entry("z5-k3", "five factors, the companion cyclic two-dimensional K",
               pres(FactorField::Real, 1, 5, 5, k3), e);
  }
  {
    Json e;
    e["pq_verify"] = "fail";
    e["failing_axioms"] = Json::array({"(5)"});
    e["witness_pair"] = Json::array({0, 2});
    pres_entry("z4-n4", "four factors, sign-pattern K failing distinctness",
               pres(FactorField::Real, 1, 4, 0, {qvec({1, 0, -1, 0}), qvec({0, 1, 0, -1})}), e);
  }
  {
    Json e;
    e["pq_verify"] = "pass";
    e["build"] = Json{{"dim", 16}, {"homogeneous_dimension", 20}};
    e["partition"] = parts({{0, 1, 2}, {3, 4, 5}});
    e["decomposes_into"] = 2;
    pres_entry("blocks-2x3", "two disjoint diagonal triples",
               pres(FactorField::Real, 1, 6, 0, {qvec({1, 1, 1, 0, 0, 0}), qvec({0, 0, 0, 1, 1, 1})}), e);
  }
  {
    Json e;
    e["pq_verify"] = "fail";
    e["failing_axioms"] = Json::array({"(5)"});
    e["partition"] = parts({{0, 1}, {2, 3}});
    e["orbits"] = parts({{0, 1}, {2, 3}});
    e["k_projection_dims"] = Json::array({1, 1});
    pres_entry("blocks-n4", "two disjoint diagonal pairs",
               pres(FactorField::Real, 1, 4, 0, {qvec({1, 1, 0, 0}), qvec({0, 0, 1, 1})}), e);
  }
  {
    Json e;
    e["pq_verify"] = "fail";
    e["failing_axioms"] = Json::array({"(5)"});
    e["orbits"] = parts({{0, 1}});
    pres_entry("asym-n2", "two factors over span(Y_1 + 2 Y_2)",
               pres(FactorField::Real, 1, 2, 0, {qvec({1, 2})}), e);
  }
  {
    Json e;
    e["pq_verify"] = "fail";  // any diagonal pair collapses the second layers
    e["failing_axioms"] = Json::array({"(5)"});
    e["build"] = Json{{"dim", 9}, {"homogeneous_dimension", 10}};
    e["kernel_dims"] = Json::array({5, 5});
    pres_entry("h2sq-diag", "two second-Heisenberg factors over the diagonal",
               pres(FactorField::Real, 2, 2, 0, {qvec({1, 1})}), e);
  }
  {
    Json e;
    e["pq_verify"] = "pass";
    e["build"] = Json{{"dim", 12}, {"homogeneous_dimension", 16}};
    e["classify_quotient"] = "product_quotient_candidate(C, n=2, m=1)";
    pres_entry("h1c-pair", "product of two complex Heisenberg factors",
               pres(FactorField::Complex, 1, 2, 0, {}), e);
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* catalog_find(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace carnot
