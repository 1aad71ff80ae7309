#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carnot/subspace.hpp"

using namespace carnot;

namespace {

Matrix random_matrix(std::mt19937& rng, int rows, int cols, int d) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  Matrix m(rows, cols, d);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = FieldElement::from_int(coeff(rng), d);
  return m;
}

Vec qv(std::initializer_list<long> entries, int d = 0) {
  Vec v;
  for (long e : entries) v.push_back(FieldElement::from_int(e, d));
  return v;
}

}  // namespace

TEST_CASE("rref of proportional rows") {
  Matrix m = Matrix::from_rows({qv({1, 2}), qv({2, 4})}, 2, 0);
  RrefResult r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<int>{0});
  CHECK(r.echelon.at(0, 0) == FieldElement::one(0));
  CHECK(r.echelon.at(0, 1) == FieldElement::from_int(2, 0));
  CHECK(is_zero_vec(r.echelon.row(1)));
}

TEST_CASE("rref fixes the identity") {
  Matrix id = Matrix::identity(3, 0);
  RrefResult r = rref(id);
  CHECK(r.rank == 3);
  CHECK(r.echelon == id);
}

TEST_CASE("rref normalizes a golden-ratio row by conjugate rationalization") {
  FieldElement a(Rational(-1, 2), Rational(1, 2), 5);
  Matrix m(1, 2, 5);
  m.at(0, 0) = a;
  m.at(0, 1) = FieldElement::one(5);
  RrefResult r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.echelon.at(0, 0) == FieldElement::one(5));
  CHECK(r.echelon.at(0, 1) == FieldElement(Rational(1, 2), Rational(1, 2), 5));  // (sqrt 5 + 1)/2
}

TEST_CASE("rref is idempotent and nullspace annihilates, randomly") {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    int rows = 1 + static_cast<int>(rng() % 5), cols = 1 + static_cast<int>(rng() % 6);
    Matrix m = random_matrix(rng, rows, cols, t % 2 ? 0 : 5);
    RrefResult r1 = rref(m);
    RrefResult r2 = rref(r1.echelon);
    CHECK(r1.echelon == r2.echelon);
    Subspace ns = nullspace(m);
    CHECK(ns.dim() == cols - r1.rank);
    for (int i = 0; i < ns.dim(); ++i) CHECK(is_zero_vec(m.apply(ns.basis_vector(i))));
  }
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace(Matrix::identity(4, 0)).dim() == 0);
  Matrix m = Matrix::from_rows({qv({1, 1, 1})}, 3, 0);
  Subspace ns = nullspace(m);
  CHECK(ns.dim() == 2);
  CHECK(ns.contains(qv({1, -1, 0})));
}

TEST_CASE("subspace lattice basics") {
  Subspace e1 = Subspace::span({qv({1, 0, 0})}, 3, 0);
  Subspace e2 = Subspace::span({qv({0, 1, 0})}, 3, 0);
  CHECK(subspace_intersect(e1, e2).dim() == 0);
  Subspace s = subspace_sum(Subspace::span({qv({1, 1, 0})}, 3, 0), Subspace::span({qv({1, -1, 0})}, 3, 0));
  CHECK(s == Subspace::span({qv({1, 0, 0}), qv({0, 1, 0})}, 3, 0));
  CHECK_THROWS_AS(subspace_sum(e1, Subspace::zero(2, 0)), Error);
}

TEST_CASE("subspace equality is basis equality and dimension formula holds") {
  std::mt19937 rng(17);
  for (int t = 0; t < 40; ++t) {
    int n = 4 + static_cast<int>(rng() % 3);
    int d = t % 3 == 0 ? 5 : 0;
    Subspace a = Subspace::row_space(random_matrix(rng, 1 + static_cast<int>(rng() % n), n, d));
    Subspace b = Subspace::row_space(random_matrix(rng, 1 + static_cast<int>(rng() % n), n, d));
    Subspace sum = subspace_sum(a, b);
    Subspace meet = subspace_intersect(a, b);
    CHECK(a.dim() + b.dim() == sum.dim() + meet.dim());
    CHECK(sum.contains(a));
    CHECK(sum.contains(b));
    CHECK(a.contains(meet));
    CHECK(b.contains(meet));
    // re-spanning by random row operations yields the identical stored basis
    Matrix doubled = vstack(a.basis(), a.basis());
    CHECK(Subspace::row_space(doubled) == a);
  }
}

TEST_CASE("orthogonal projection onto span(e1+e2) in Q^2") {
  Subspace s = Subspace::span({qv({1, 1})}, 2, 0);
  Matrix p = orthogonal_projection(s);
  FieldElement half = FieldElement(Rational(1, 2), Rational(0), 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(p.at(i, j) == half);
}

TEST_CASE("orthogonal projection properties") {
  CHECK(orthogonal_projection(Subspace::full(3, 0)) == Matrix::identity(3, 0));
  Subspace k = Subspace::span({qv({1, 1, 0})}, 3, 0);
  Matrix p = orthogonal_projection(k);
  // couples only the first two coordinates
  CHECK(p.at(0, 2).is_zero());
  CHECK(p.at(2, 0).is_zero());
  CHECK(p.at(2, 2).is_zero());
  CHECK(!p.at(0, 1).is_zero());
  std::mt19937 rng(23);
  for (int t = 0; t < 25; ++t) {
    int n = 3 + static_cast<int>(rng() % 3);
    Matrix m = random_matrix(rng, 1 + static_cast<int>(rng() % n), n, 0);
    Subspace s = Subspace::row_space(m);
    if (s.dim() == 0) continue;
    Matrix proj = orthogonal_projection(s);
    CHECK(proj * proj == proj);
    CHECK(proj.transpose() == proj);
    std::vector<Vec> image;
    for (int j = 0; j < n; ++j) image.push_back(proj.col(j));
    CHECK(Subspace::span(image, n, 0) == s);
  }
  // degenerate Gram matrix over Q(i): (1, i) is isotropic
  Vec iso;
  iso.push_back(FieldElement::one(-1));
  iso.push_back(FieldElement(Rational(0), Rational(1), -1));
  CHECK_THROWS_AS(orthogonal_projection(Subspace::span({iso}, 2, -1)), Error);
}

TEST_CASE("points with nonzero coordinates") {
  auto all_nonzero = [](const Vec& v) {
    for (const auto& x : v)
      if (x.is_zero()) return false;
    return true;
  };
  auto p1 = point_with_nonzero_coordinates(Subspace::span({qv({1, 1, 1})}, 3, 0));
  REQUIRE(p1.has_value());
  CHECK(all_nonzero(*p1));
  CHECK(!point_with_nonzero_coordinates(Subspace::span({qv({1, 0, 0})}, 3, 0)).has_value());
  Subspace s = Subspace::span({qv({1, 1, 0}), qv({0, 1, 1})}, 3, 0);
  auto p2 = point_with_nonzero_coordinates(s);
  REQUIRE(p2.has_value());
  CHECK(all_nonzero(*p2));
  CHECK(s.contains(*p2));
  CHECK(!point_with_nonzero_coordinates(Subspace::zero(3, 0)).has_value());
}

TEST_CASE("solve and inverse") {
  std::mt19937 rng(29);
  for (int t = 0; t < 20; ++t) {
    Matrix m = random_matrix(rng, 4, 4, 0);
    auto inv = inverse(m);
    if (determinant(m).is_zero()) {
      CHECK(!inv.has_value());
      continue;
    }
    REQUIRE(inv.has_value());
    CHECK((m * *inv) == Matrix::identity(4, 0));
    Vec b = random_matrix(rng, 4, 1, 0).col(0);
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
  }
  // inconsistent system
  Matrix m = Matrix::from_rows({qv({1, 1}), qv({1, 1})}, 2, 0);
  CHECK(!solve(m, qv({0, 1})).has_value());
  CHECK(determinant(m).is_zero());
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937 rng(31);
  for (int t = 0; t < 15; ++t) {
    Matrix a = random_matrix(rng, 3, 3, 5), b = random_matrix(rng, 3, 3, 5);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}
