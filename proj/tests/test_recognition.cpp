#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carnot/recognition.hpp"
#include "carnot/presentation.hpp"

using namespace carnot;

namespace {

Vec qv(std::initializer_list<long> entries, int d = 0) {
  Vec v;
  for (long e : entries) v.push_back(FieldElement::from_int(e, d));
  return v;
}

BuiltQuotient diag_quotient(int n) {
  Vec diag(static_cast<size_t>(n), FieldElement::one(0));
  Presentation p{FactorField::Real, 1, n, 0, Subspace::span({diag}, n, 0)};
  return build(p);
}

BuiltQuotient z5_k2() {
  FieldElement a(Rational(-1, 2), Rational(1, 2), 5);
  FieldElement one = FieldElement::one(5), zero = FieldElement::zero(5);
  std::vector<Vec> k2 = {{-a, a, one, zero, -one}, {-a, -one, zero, one, a}};
  Presentation p{FactorField::Real, 1, 5, 5, Subspace::span(k2, 5, 5)};
  return build(p);
}

GradedMap random_block_symplectic(std::mt19937& rng, const BuiltQuotient& b) {
  // per-factor SL(2) on the first layer, identity on the second
  std::uniform_int_distribution<int> coeff(-2, 2);
  const int n1 = b.ambient.layer_dim(1);
  Matrix a1(n1, n1, 0);
  for (int f = 0; f < b.pres.n; ++f) {
    FieldElement p = FieldElement::from_int(coeff(rng), 0), q = FieldElement::from_int(coeff(rng), 0);
    FieldElement r = FieldElement::from_int(coeff(rng), 0);
    // [[1+pq, p], [q, 1]] has determinant 1; then shear by r
    int o = b.first_index(f, 0);
    a1.at(o, o) = FieldElement::one(0) + p * q;
    a1.at(o, o + 1) = p + r * (FieldElement::one(0) + p * q);
    a1.at(o + 1, o) = q;
    a1.at(o + 1, o + 1) = FieldElement::one(0) + r * q;
  }
  return GradedMap({a1, Matrix::identity(b.ambient.layer_dim(2), 0)});
}

}  // namespace

TEST_CASE("darboux rescales a single skewed pair") {
  // V1 = Q^2 with [e1, e2] = 2Y: X1 = e1, X2 = -e2/2
  std::vector<StructureTriple> t = {{0, 1, 2, FieldElement::from_int(2, 0)}};
  GradedAlgebra g({2, 1}, t, 0);
  Matrix a1 = darboux_basis(g);
  CHECK(a1.at(0, 0) == FieldElement::one(0));
  CHECK(a1.at(1, 1) == FieldElement(Rational(-1, 2), Rational(0), 0));
  CHECK(a1.at(0, 1).is_zero());
  CHECK(a1.at(1, 0).is_zero());
}

TEST_CASE("darboux fixes the standard basis of h2") {
  CHECK(darboux_basis(heisenberg(2, 0)) == Matrix::identity(4, 0));
}

TEST_CASE("darboux exhibits h2 inside the two-factor diagonal quotient") {
  BuiltQuotient b = diag_quotient(2);
  Matrix a1 = darboux_basis(b.algebra);
  GradedMap phi({a1, Matrix::identity(1, 0)});
  GradedAlgebra moved = change_basis(b.algebra, phi);
  CHECK(moved.bracket_basis(0, 1) == qv({0, 0, 0, 0, -1}));
  CHECK(moved.bracket_basis(2, 3) == qv({0, 0, 0, 0, -1}));
  CHECK(is_zero_vec(moved.bracket_basis(0, 2)));
  CHECK(is_zero_vec(moved.bracket_basis(0, 3)));
  CHECK(is_zero_vec(moved.bracket_basis(1, 2)));
  CHECK(is_zero_vec(moved.bracket_basis(1, 3)));
}

TEST_CASE("darboux error paths") {
  // center meets the first layer
  GradedAlgebra bad({3, 1}, {{0, 1, 3, -FieldElement::one(0)}}, 0);
  CHECK_THROWS_AS(darboux_basis(bad), Error);
  CHECK_THROWS_AS(darboux_basis(diag_quotient(3).algebra), Error);  // dim V2 != 1
}

TEST_CASE("rank-one sieve recovers the factor planes of the diagonal quotient") {
  BuiltQuotient b = diag_quotient(3);
  std::vector<Vec> elems = rank_one_sieve(b.algebra, {});
  Subspace span = Subspace::span(elems, 8, 0);
  CHECK(span == b.algebra.layer_subspace(1));
  // every reported element has rank at most one
  for (const Vec& x : elems) CHECK(ad_rank(b.algebra, x) <= 1);
}

TEST_CASE("rank-one sieve accepts abelian witnesses and spans h2") {
  GradedAlgebra a({3}, {}, 0);
  std::vector<Vec> ws = {qv({1, 0, 0}), qv({0, 1, 1})};
  CHECK(rank_one_sieve(a, ws).size() == 2);
  GradedAlgebra h2 = heisenberg(2, 0);
  std::vector<Vec> elems = rank_one_sieve(h2, {});
  CHECK(Subspace::span(elems, 5, 0) == h2.layer_subspace(1));
}

TEST_CASE("summand decomposition of the diagonal quotient") {
  BuiltQuotient b = diag_quotient(3);
  HeisenbergDecomposition dec = heisenberg_summands(b.algebra, {});
  REQUIRE(dec.recognized());
  CHECK(dec.summands.size() == 3);
  CHECK(dec.m == 1);
  // the summand first layers are exactly the factor planes
  std::set<Subspace> found, expected;
  for (const auto& [k, line] : dec.summands) found.insert(k);
  for (int f = 0; f < 3; ++f)
    expected.insert(Subspace::span({unit_vec(8, b.first_index(f, 0), 0), unit_vec(8, b.first_index(f, 1), 0)}, 8, 0));
  CHECK(found == expected);
}

TEST_CASE("h2 is its own single summand") {
  HeisenbergDecomposition dec = heisenberg_summands(heisenberg(2, 0), {});
  REQUIRE(dec.recognized());
  CHECK(dec.summands.size() == 1);
  CHECK(dec.m == 2);
}

TEST_CASE("a rank-zero first-layer vector refutes the decomposition") {
  // h1 plus a central line inside the first layer
  std::vector<StructureTriple> t = {{0, 1, 3, -FieldElement::one(0)}};
  GradedAlgebra g({3, 1}, t, 0);
  HeisenbergDecomposition dec = heisenberg_summands(g, {});
  CHECK(dec.verdict == DecompVerdict::Refuted);
  REQUIRE(!dec.witnesses.empty());
  CHECK(ad_rank(g, dec.witnesses.front()) == 0);
}

TEST_CASE("summands are canonical under verified automorphisms") {
  BuiltQuotient b = diag_quotient(3);
  HeisenbergDecomposition dec = heisenberg_summands(b.algebra, {});
  REQUIRE(dec.recognized());
  std::mt19937 rng(41);
  // compose a block-symplectic map, a realized transposition, and a dilation
  GradedMap bs = random_block_symplectic(rng, b);
  Perm tr = {1, 0, 2};
  auto w = stabilizer_second_layer_test(b.pres, tr, StabVariant::Stabilize);
  REQUIRE(w.has_value());
  GradedMap pm = realize_factor_map(b, tr, *w);
  GradedMap composite = pm.compose(bs).compose(GradedMap::dilation(b.ambient, FieldElement::from_int(2, 0)));
  VerifiedAut va = aut_verify(b, composite.layer(1));
  std::set<Subspace> before, after;
  for (const auto& [k, line] : dec.summands) {
    before.insert(k);
    after.insert(k.mapped(va.descended.full_matrix()));
  }
  CHECK(before == after);
}

TEST_CASE("classify catalog algebras") {
  CHECK(classify_trichotomy(GradedAlgebra({4}, {}, 0), {}).kind == TrichotomyVerdict::Kind::Abelian);
  TrichotomyVerdict h3 = classify_trichotomy(heisenberg(3, 0), {});
  CHECK(h3.kind == TrichotomyVerdict::Kind::Heisenberg);
  CHECK(h3.field == FactorField::Real);
  CHECK(h3.m == 3);
  TrichotomyVerdict d3 = classify_trichotomy(diag_quotient(3).algebra, {});
  CHECK(d3.kind == TrichotomyVerdict::Kind::ProductQuotientCandidate);
  CHECK(d3.n == 3);
  CHECK(d3.m == 1);
  TrichotomyVerdict z5 = classify_trichotomy(z5_k2().algebra, {});
  CHECK(z5.kind == TrichotomyVerdict::Kind::ProductQuotientCandidate);
  CHECK(z5.field == FactorField::Real);
  CHECK(z5.n == 5);
  CHECK(z5.m == 1);
}

TEST_CASE("classify complex Heisenberg algebras through the complex sieve") {
  TrichotomyVerdict v = classify_trichotomy(complex_heisenberg(1, 0), {});
  CHECK(v.kind == TrichotomyVerdict::Kind::Heisenberg);
  CHECK(v.field == FactorField::Complex);
  CHECK(v.m == 1);
  // a product of two complex factors
  Presentation p{FactorField::Complex, 1, 2, 0, Subspace::zero(4, 0)};
  BuiltQuotient b = build(p);
  TrichotomyVerdict pv = classify_trichotomy(b.algebra, {});
  CHECK(pv.kind == TrichotomyVerdict::Kind::ProductQuotientCandidate);
  CHECK(pv.field == FactorField::Complex);
  CHECK(pv.n == 2);
  CHECK(pv.m == 1);
}

TEST_CASE("classify reports invariant subspaces honestly") {
  // a central line inside the first layer
  std::vector<StructureTriple> t = {{0, 1, 3, -FieldElement::one(0)}};
  TrichotomyVerdict v = classify_trichotomy(GradedAlgebra({3, 1}, t, 0), {});
  CHECK(v.kind == TrichotomyVerdict::Kind::InvariantSubspace);
  REQUIRE(v.invariant_subspace.has_value());
  CHECK(v.invariant_subspace->dim() == 1);
  CHECK(v.invariant_subspace->contains(qv({0, 0, 1, 0})));
  // summands of unequal index: h1 + h2 gives the canonical small-factor span
  GradedAlgebra mixed = direct_sum({heisenberg(1, 0), heisenberg(2, 0)});
  TrichotomyVerdict mv = classify_trichotomy(mixed, {});
  CHECK(mv.kind == TrichotomyVerdict::Kind::InvariantSubspace);
  REQUIRE(mv.invariant_subspace.has_value());
  CHECK(mv.invariant_subspace->dim() == 2);
  // the span of the h1 factor's first layer
  CHECK(mv.invariant_subspace->contains(unit_vec(8, 0, 0)));
  CHECK(mv.invariant_subspace->contains(unit_vec(8, 1, 0)));
}

TEST_CASE("complexified sieve finds rank-one elements in both eigenspaces") {
  GradedAlgebra h1c = complex_heisenberg(1, 0);
  GradedAlgebra cc = complexify(h1c);
  EigenspaceSplit split = jc_eigenspace_split(cc);
  std::vector<Vec> elems = rank_one_sieve(cc, {}, true);
  CHECK(!elems.empty());
  bool in_plus = false, in_minus = false;
  for (const Vec& z : elems) {
    if (split.plus.contains(z)) in_plus = true;
    if (split.minus.contains(z)) in_minus = true;
    CHECK((split.plus.contains(z) || split.minus.contains(z)));
  }
  CHECK(in_plus);
  CHECK(in_minus);
}

TEST_CASE("factor-span subspaces are the invariant ones under block-symplectic maps") {
  BuiltQuotient b = diag_quotient(3);
  std::mt19937 rng(43);
  std::vector<GradedMap> generators;
  for (int t = 0; t < 6; ++t) generators.push_back(random_block_symplectic(rng, b));
  // every factor-subset span is invariant
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<Vec> rows;
    for (int f = 0; f < 3; ++f)
      if (mask & (1 << f)) {
        rows.push_back(unit_vec(9, b.first_index(f, 0), 0));
        rows.push_back(unit_vec(9, b.first_index(f, 1), 0));
      }
    Subspace w = Subspace::span(rows, 9, 0);
    for (const auto& g : generators) CHECK(w.mapped(g.full_matrix()) == w);
  }
  // cross-factor lines are moved by some explicit shear
  Matrix a1 = Matrix::identity(6, 0);
  a1.at(1, 0) = FieldElement::one(0);  // e0 -> e0 + e1 inside factor 1
  GradedMap shear({a1, Matrix::identity(3, 0)});
  CHECK(is_graded_automorphism(b.ambient, shear));
  Subspace cross = Subspace::span({add(unit_vec(9, 0, 0), unit_vec(9, 2, 0))}, 9, 0);
  CHECK(!(cross.mapped(shear.full_matrix()) == cross));
}

TEST_CASE("complex linearity classification") {
  GradedAlgebra h1c = complex_heisenberg(1, 0);
  LinearityVerdict id = complex_linearity_classify(h1c, GradedMap::identity(h1c));
  CHECK(id.kind == Linearity::Linear);
  CHECK(id.det_sign_second_layer > 0);
  // complex conjugation: negate the imaginary halves of both layers
  Matrix c1(4, 4, 0), c2(2, 2, 0);
  c1.at(0, 0) = c1.at(1, 1) = FieldElement::one(0);
  c1.at(2, 2) = c1.at(3, 3) = -FieldElement::one(0);
  c2.at(0, 0) = FieldElement::one(0);
  c2.at(1, 1) = -FieldElement::one(0);
  LinearityVerdict conj = complex_linearity_classify(h1c, GradedMap({c1, c2}));
  CHECK(conj.kind == Linearity::Antilinear);
  CHECK(conj.det_sign_second_layer < 0);
  // multiplication by i on the first layer, -1 on the second
  const Matrix& j = *h1c.complex_structure();
  Matrix j1(4, 4, 0);
  for (int a = 0; a < 4; ++a)
    for (int bcol = 0; bcol < 4; ++bcol) j1.at(a, bcol) = j.at(a, bcol);
  Matrix neg2 = Matrix::identity(2, 0).scaled(-FieldElement::one(0));
  LinearityVerdict jm = complex_linearity_classify(h1c, GradedMap({j1, neg2}));
  CHECK(jm.kind == Linearity::Linear);
  CHECK(jm.det_sign_second_layer > 0);
  // non-automorphisms are rejected before any linearity verdict
  Matrix zero1(4, 4, 0), zero2(2, 2, 0);
  CHECK_THROWS_AS(complex_linearity_classify(h1c, GradedMap({zero1, zero2})), Error);
  // scaling only the real half preserves no bracket and is rejected
  Matrix half = Matrix::identity(4, 0);
  half.at(0, 0) = FieldElement::from_int(2, 0);
  half.at(1, 1) = FieldElement::from_int(2, 0);
  CHECK_THROWS_AS(complex_linearity_classify(h1c, GradedMap({half, Matrix::identity(2, 0)})), Error);
}

TEST_CASE("complex darboux index certifies complex Heisenberg algebras") {
  CHECK(complex_darboux_index(complex_heisenberg(1, 0)) == 1);
  CHECK(complex_darboux_index(complex_heisenberg(2, 0)) == 2);
}
