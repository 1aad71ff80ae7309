#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carnot/pullback.hpp"

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

VerifiedAut realized(const BuiltQuotient& b, const Perm& sigma) {
  auto w = stabilizer_second_layer_test(b.pres, sigma, StabVariant::Stabilize);
  REQUIRE(w.has_value());
  return aut_verify(b, realize_factor_map(b, sigma, *w).layer(1));
}

}  // namespace

TEST_CASE("constructed omega_ij is closed of degree 3 and weight -4") {
  BuiltQuotient b = diag_quotient(3);
  Form w12 = make_omega_ij(b, 0, 1);
  CHECK(w12.degree() == 3);
  CHECK(weight(b.algebra, w12) == -4);
  CHECK(differential(b.algebra, w12).is_zero());
  CHECK(make_omega_ij(b, 1, 1).is_zero());
}

TEST_CASE("admissibility bookkeeping on the diagonal quotient") {
  BuiltQuotient b = diag_quotient(3);
  Form alpha = make_omega_ij(b, 0, 1);
  Form beta = make_beta_codegree3(b, 0);
  Form ixbeta = interior(MultiVector::basis(1, {b.first_index(1, 0)}, 0), beta);
  Admissibility a = admissible_pair(b.algebra, alpha, ixbeta);
  CHECK(a.deg_alpha == 3);
  CHECK(a.deg_beta == 4);
  CHECK(a.wt_alpha == -4);
  CHECK(a.wt_beta == -5);
  CHECK(a.closed_alpha);
  CHECK(a.closed_beta);
  CHECK(a.admissible);
  // the volume form against anything over-shoots the degree budget
  Admissibility bad = admissible_pair(b.algebra, volume_form(b.algebra), make_gamma(b, 0));
  CHECK(!bad.degree_ok);
  CHECK(!bad.admissible);
}

TEST_CASE("the weight threshold flips under a wrong-layer index") {
  BuiltQuotient b = diag_quotient(3);
  Form beta = make_beta_codegree3(b, 0);
  Form ixbeta = interior(MultiVector::basis(1, {b.first_index(1, 0)}, 0), beta);
  // replace the second-layer leg by a first-layer index: the weight rises
  // from -4 to -3 and the sum misses the threshold
  Form alpha = wedge(make_gamma(b, 0) + make_gamma(b, 1), Form::monomial({4}, FieldElement::one(0)));
  Admissibility a = admissible_pair(b.algebra, alpha, ixbeta);
  CHECK(a.degree_ok);
  CHECK(a.closed_alpha);
  CHECK(a.wt_alpha == -3);
  CHECK(!a.weight_ok);
  CHECK(!a.admissible);
}

TEST_CASE("the cyclic example admits the degree-2 pairs of the conformal case") {
  BuiltQuotient b = z5_k2();
  // alpha = gamma_1 (deg 2, wt -2); beta = i_X i_Z omega (codegree 3, wt -nu+3)
  Form alpha = make_gamma(b, 0);
  Matrix row(1, 5, 5);
  row.at(0, 0) = FieldElement::one(5);
  Subspace kperp = subspace_intersect(b.pres.K, nullspace(row));
  REQUIRE(kperp.dim() >= 1);
  MultiVector z = area_two_vector(b, kperp.basis_vector(0));
  Form beta = interior(MultiVector::basis(1, {b.first_index(0, 0)}, 5), interior(z, volume_form(b.algebra)));
  Admissibility a = admissible_pair(b.algebra, alpha, beta);
  CHECK(a.deg_alpha + a.deg_beta == b.algebra.dim() - 1);
  CHECK(a.wt_alpha == -2);
  CHECK(a.wt_beta == -b.algebra.homogeneous_dimension() + 3);
  CHECK(a.admissible);
}

TEST_CASE("pullbacks of omega_ij follow the squared-eigenvalue pattern") {
  BuiltQuotient b = diag_quotient(3);
  std::vector<Perm> perms = {{1, 2, 0}, {1, 0, 2}, {0, 1, 2}};
  for (const Perm& sigma : perms) {
    VerifiedAut va = realized(b, sigma);
    LambdaSP f = factor_lambda_s_p(va.second_layer);
    FieldElement lam2 = f.lambda * f.lambda;
    Perm inv(3);
    for (int i = 0; i < 3; ++i) inv[static_cast<size_t>(f.sigma[static_cast<size_t>(i)])] = i;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        Form lhs = pullback(va.descended, make_omega_ij(b, i, j));
        Form rhs = make_omega_ij(b, inv[static_cast<size_t>(i)], inv[static_cast<size_t>(j)]).scaled(lam2);
        CHECK(lhs == rhs);
      }
  }
  // dilation: lambda^2 = r^4
  VerifiedAut dil = aut_verify(b, Matrix::identity(6, 0).scaled(FieldElement::from_int(2, 0)));
  Form lhs = pullback(dil.descended, make_omega_ij(b, 0, 1));
  CHECK(lhs == make_omega_ij(b, 0, 1).scaled(FieldElement::from_int(16, 0)));
}

TEST_CASE("diagonal wedge table on three factors") {
  BuiltQuotient b = diag_quotient(3);
  SuiteReport rep = verify_key_wedge_diagonal(b);
  CHECK(rep.all_pass());
  // 3 closedness lines + 27 table cells
  CHECK(rep.items.size() == 3 + 27);
}

TEST_CASE("degree-2 suite on the cyclic example") {
  BuiltQuotient b = z5_k2();
  Perm cyc = {1, 2, 3, 4, 0};
  VerifiedAut shift = realized(b, cyc);
  LambdaSP f = factor_lambda_s_p(shift.second_layer);
  CHECK(f.lambda == FieldElement::one(5));
  SuiteReport rep = verify_degree2_suite(b, shift);
  CHECK(rep.all_pass());
  // identity map and a dilation
  SuiteReport rep_id = verify_degree2_suite(b, aut_verify(b, Matrix::identity(10, 5)));
  CHECK(rep_id.all_pass());
  SuiteReport rep_dil = verify_degree2_suite(
      b, aut_verify(b, Matrix::identity(10, 5).scaled(FieldElement::from_int(3, 5))));
  CHECK(rep_dil.all_pass());
}

TEST_CASE("adjugate identities for dilations and transpositions on the diagonal quotient") {
  BuiltQuotient b = diag_quotient(3);
  // delta_r: det = r^10, lambda = r^2, 2n - dim K = 5
  VerifiedAut dil = aut_verify(b, Matrix::identity(6, 0).scaled(FieldElement::from_int(2, 0)));
  CHECK(dil.descended.det() == FieldElement::from_int(1024, 0));
  SuiteReport rep = verify_adjugate(b, dil);
  CHECK(rep.all_pass());
  VerifiedAut swp = realized(b, {1, 0, 2});
  SuiteReport rep2 = verify_adjugate(b, swp);
  CHECK(rep2.all_pass());
  // composite: transposition then dilation by 2: |det| = 2^10 = (lambda = 4)^5
  VerifiedAut comp = aut_verify(b, swp.ambient.compose(GradedMap::dilation(b.ambient, FieldElement::from_int(2, 0))).layer(1));
  LambdaSP f = factor_lambda_s_p(comp.second_layer);
  CHECK(f.lambda == FieldElement::from_int(4, 0));
  CHECK(comp.descended.det().abs() == FieldElement::from_int(1024, 0));
  CHECK(verify_adjugate(b, comp).all_pass());
}

TEST_CASE("adjugate identities on the cyclic example") {
  BuiltQuotient b = z5_k2();
  VerifiedAut shift = realized(b, {1, 2, 3, 4, 0});
  CHECK(verify_adjugate(b, shift).all_pass());
  VerifiedAut dil = aut_verify(b, Matrix::identity(10, 5).scaled(FieldElement::from_int(2, 5)));
  CHECK(verify_adjugate(b, dil).all_pass());
}

TEST_CASE("kernel two-vectors of higher factors") {
  Presentation p{FactorField::Real, 2, 2, 0, Subspace::span({qv({1, 1})}, 2, 0)};
  BuiltQuotient b = build(p);
  for (int k = 0; k < 2; ++k) {
    KernelTwoVectors ker = kernel_two_vectors(b, k);
    CHECK(ker.pair_index.size() == 6);  // C(4, 2)
    CHECK(ker.coords.dim() == 5);       // rank-nullity against the 1-dim image
    std::vector<Form> duals = dual_two_forms(b, k);
    CHECK(duals.size() == 5);
    // normalization delta_{mm'}
    for (size_t m = 0; m < duals.size(); ++m)
      for (size_t mp = 0; mp < ker.basis.size(); ++mp) {
        SymCoeff v = evaluate(duals[m], ker.basis[mp]);
        CHECK(v == SymCoeff(m == mp ? FieldElement::one(0) : FieldElement::zero(0)));
      }
  }
  // first real Heisenberg factors are rejected
  BuiltQuotient b1 = diag_quotient(3);
  CHECK_THROWS_AS(kernel_two_vectors(b1, 0), Error);
}

TEST_CASE("higher suite on the pair of second Heisenberg factors") {
  Presentation p{FactorField::Real, 2, 2, 0, Subspace::span({qv({1, 1})}, 2, 0)};
  BuiltQuotient b = build(p);
  SuiteReport rep = verify_higher_suite(b);
  CHECK(rep.all_pass());
}

TEST_CASE("higher suite on a complex pair") {
  Presentation p{FactorField::Complex, 1, 2, 0, Subspace::zero(4, 0)};
  BuiltQuotient b = build(p);
  SuiteReport rep = verify_higher_suite(b);
  CHECK(rep.all_pass());
}

TEST_CASE("pullbacks keep dual two-forms factor-local") {
  Presentation p{FactorField::Real, 2, 2, 0, Subspace::span({qv({1, 1})}, 2, 0)};
  BuiltQuotient b = build(p);
  Perm swap = {1, 0};
  VerifiedAut va = realized(b, swap);
  std::vector<Form> duals = dual_two_forms(b, 0);
  for (const Form& alpha : duals) {
    Form pulled = pullback(va.descended, alpha);
    // support lies inside factor 2's first-layer block
    for (const auto& [idx, c] : pulled.terms())
      for (int i : idx) {
        CHECK(i >= b.first_index(1, 0));
        CHECK(i < b.first_index(1, 0) + b.first_layer_per_factor());
      }
  }
}
