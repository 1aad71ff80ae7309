#include "carnot/pullback.hpp"

#include <sstream>

namespace carnot {

namespace {

std::string tuple_str(std::initializer_list<int> t) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int x : t) {
    os << (first ? "" : ",") << x;
    first = false;
  }
  os << ")";
  return os.str();
}

MultiVector unit_mv(const GradedAlgebra& g, int index) {
  return MultiVector::basis(1, {index}, g.field_tag());
}

void require_real_m1(const BuiltQuotient& b, const char* what) {
  if (b.pres.F != FactorField::Real || b.pres.m != 1)
    throw Error(std::string(what) + " applies to real first-Heisenberg factors");
}

FieldElement power(FieldElement base, int e) {
  FieldElement out = FieldElement::one(base.field_tag());
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

std::string Admissibility::str() const {
  std::ostringstream os;
  os << "deg " << deg_alpha << "+" << deg_beta << (degree_ok ? " ok" : " bad") << ", wt " << wt_alpha
     << "+" << wt_beta << (weight_ok ? " ok" : " bad") << ", closed " << closed_alpha << "/"
     << closed_beta << " -> " << (admissible ? "admissible" : "not admissible");
  return os.str();
}

Admissibility admissible_pair(const GradedAlgebra& g, const Form& alpha, const Form& beta) {
  Admissibility a;
  a.deg_alpha = alpha.degree();
  a.deg_beta = beta.degree();
  a.wt_alpha = weight(g, alpha);
  a.wt_beta = weight(g, beta);
  a.closed_alpha = differential(g, alpha).is_zero();
  a.closed_beta = differential(g, beta).is_zero();
  a.degree_ok = a.deg_alpha + a.deg_beta == g.dim() - 1;
  // the weight sum threshold; -infinity weights only arise from zero forms
  a.weight_ok = a.wt_alpha != kWeightNegInfinity && a.wt_beta != kWeightNegInfinity &&
                a.wt_alpha + a.wt_beta <= -g.homogeneous_dimension() + 1;
  a.admissible = a.closed_alpha && a.closed_beta && a.degree_ok && a.weight_ok;
  return a;
}

Form make_gamma(const BuiltQuotient& b, int factor) {
  require_real_m1(b, "the factor area form");
  return Form::monomial({b.first_index(factor, 0), b.first_index(factor, 1)},
                        FieldElement::one(b.pres.d));
}

Form make_tau_diff(const BuiltQuotient& b, int i, int j) {
  Form up(1, b.pres.d);
  up.add_term({b.second_index(i)}, SymCoeff(FieldElement::one(b.pres.d)));
  up.add_term({b.second_index(j)}, SymCoeff(-FieldElement::one(b.pres.d)));
  return descend(b.ambient, b.K_full, b.kept, up);
}

Form make_omega_ij(const BuiltQuotient& b, int i, int j) {
  Form out = wedge(make_gamma(b, i) + make_gamma(b, j), make_tau_diff(b, i, j));
  if (i != j) {
    if (!differential(b.algebra, out).is_zero()) throw Error("omega_ij failed to close");
    if (out.degree() != 3 || weight(b.algebra, out) != -4)
      throw Error("omega_ij has unexpected degree or weight");
  }
  return out;
}

Form make_beta_codegree3(const BuiltQuotient& b, int factor) {
  require_real_m1(b, "the codegree-3 companion");
  Form omega = volume_form(b.algebra);
  Vec ym = b.projection.apply(unit_vec(b.ambient.dim(), b.second_index(factor), b.pres.d));
  Form step = interior(unit_mv(b.algebra, b.first_index(factor, 1)), omega);
  step = interior(unit_mv(b.algebra, b.first_index(factor, 0)), step);
  return interior(MultiVector::from_vec(ym), step);
}

MultiVector area_two_vector(const BuiltQuotient& b, const Vec& coeffs) {
  require_real_m1(b, "the area two-vector");
  if (static_cast<int>(coeffs.size()) != b.pres.n) throw Error("area two-vector needs one coefficient per factor");
  MultiVector z(2, b.pres.d);
  for (int i = 0; i < b.pres.n; ++i)
    z.add_term({b.first_index(i, 0), b.first_index(i, 1)}, coeffs[static_cast<size_t>(i)]);
  return z;
}

SuiteReport verify_key_wedge_diagonal(const BuiltQuotient& b) {
  require_real_m1(b, "the diagonal wedge table");
  const Presentation& p = b.pres;
  Vec diag(static_cast<size_t>(p.n), FieldElement::one(p.d));
  if (!(p.K == Subspace::span({diag}, p.n, p.d)))
    throw Error("the wedge table needs the diagonal one-dimensional K");
  SuiteReport rep;
  const GradedAlgebra& q = b.algebra;
  Form omega = volume_form(q);
  Form dphi = dphi_formal(q);
  std::vector<std::vector<Form>> omega_kl(static_cast<size_t>(p.n));
  for (int k = 0; k < p.n; ++k)
    for (int l = 0; l < p.n; ++l) omega_kl[static_cast<size_t>(k)].push_back(make_omega_ij(b, k, l));
  for (int m = 0; m < p.n; ++m) {
    Form beta = make_beta_codegree3(b, m);
    bool closed_ok = true;
    std::string closed_witness;
    std::vector<std::pair<int, Form>> contractions;  // (X index, i_X beta)
    for (int jf = 0; jf < p.n; ++jf) {
      if (jf == m) continue;
      for (int qpos = 0; qpos < 2; ++qpos) {
        int x = b.first_index(jf, qpos);
        Form ixb = interior(unit_mv(q, x), beta);
        if (!differential(q, ixb).is_zero()) {
          closed_ok = false;
          closed_witness = "X index " + std::to_string(x);
        }
        contractions.emplace_back(x, std::move(ixb));
      }
    }
    rep.items.push_back({"d(i_X beta_" + std::to_string(m + 1) + ") = 0", closed_ok, closed_witness});
    for (int k = 0; k < p.n; ++k)
      for (int l = 0; l < p.n; ++l) {
        bool pass = true;
        std::string witness;
        int expected = -((k == m ? 1 : 0) - (l == m ? 1 : 0));
        for (const auto& [x, ixb] : contractions) {
          Form lhs = wedge(omega_kl[static_cast<size_t>(k)][static_cast<size_t>(l)], wedge(dphi, ixb));
          SymCoeff want = SymCoeff::symbol(x, p.d) * SymCoeff(FieldElement::from_int(expected, p.d));
          Form rhs = omega.scaled(want);
          if (lhs != rhs) {
            pass = false;
            witness = "X index " + std::to_string(x);
            break;
          }
        }
        rep.items.push_back({"wedge coefficient (k,l,m) = " + tuple_str({k + 1, l + 1, m + 1}), pass, witness});
      }
  }
  return rep;
}

SuiteReport verify_degree2_suite(const BuiltQuotient& b, const VerifiedAut& aut) {
  require_real_m1(b, "the conformal degree-2 suite");
  const Presentation& p = b.pres;
  SuiteReport rep;
  const GradedAlgebra& q = b.algebra;
  Form omega = volume_form(q);
  Form dphi = dphi_formal(q);
  const Matrix& m2 = aut.second_layer;
  // closedness of i_Z omega over K
  {
    bool pass = true;
    std::string witness;
    for (int r = 0; r < p.K.dim(); ++r) {
      MultiVector z = area_two_vector(b, p.K.basis_vector(r));
      if (!differential(q, interior(z, omega)).is_zero()) {
        pass = false;
        witness = "K basis " + std::to_string(r);
      }
    }
    rep.items.push_back({"d(i_Z omega) = 0 over K", pass, witness});
  }
  // per-factor hyperplane pieces
  for (int k = 0; k < p.n; ++k) {
    Matrix row(1, p.n, p.d);
    row.at(0, k) = FieldElement::one(p.d);
    Subspace kperp = subspace_intersect(p.K, nullspace(row));
    bool closed_ok = true, coeff_ok = true;
    std::string cw, kw;
    for (int r = 0; r < kperp.dim(); ++r) {
      Vec mv = kperp.basis_vector(r);
      MultiVector z = area_two_vector(b, mv);
      for (int qpos = 0; qpos < 2; ++qpos) {
        int x = b.first_index(k, qpos);
        Form ixz = interior(unit_mv(q, x), interior(z, omega));
        if (!differential(q, ixz).is_zero()) {
          closed_ok = false;
          cw = "m basis " + std::to_string(r) + ", X index " + std::to_string(x);
        }
        Vec image = m2.apply(mv);  // lambda S P m
        for (int i = 0; i < p.n; ++i) {
          Form lhs = wedge(pullback(aut.descended, make_gamma(b, i)), wedge(dphi, ixz));
          SymCoeff want = SymCoeff::symbol(x, p.d) * SymCoeff(image[static_cast<size_t>(i)]);
          if (lhs != omega.scaled(want)) {
            coeff_ok = false;
            kw = "i=" + std::to_string(i + 1) + ", k=" + std::to_string(k + 1) + ", X index " + std::to_string(x);
          }
        }
      }
    }
    rep.items.push_back({"d(i_X i_Z omega) = 0 on K cap e_" + std::to_string(k + 1) + "^perp", closed_ok, cw});
    rep.items.push_back({"pullback coefficient on factor " + std::to_string(k + 1), coeff_ok, kw});
  }
  // the second-layer action factors as lambda S P exactly
  {
    bool pass = true;
    std::string witness;
    try {
      LambdaSP f = factor_lambda_s_p(m2);
      if (f.reconstruct(p.d) != m2) {
        pass = false;
        witness = "reconstruction mismatch";
      }
    } catch (const Error& e) {
      pass = false;
      witness = e.what();
    }
    rep.items.push_back({"second layer factors as lambda S P", pass, witness});
  }
  return rep;
}

SuiteReport verify_adjugate(const BuiltQuotient& b, const VerifiedAut& aut) {
  require_real_m1(b, "the adjugate suite");
  const Presentation& p = b.pres;
  SuiteReport rep;
  const GradedAlgebra& q = b.algebra;
  Form omega = volume_form(q);
  LambdaSP f = factor_lambda_s_p(aut.second_layer);
  FieldElement detq = aut.descended.det();
  {
    bool pass = detq.abs() == power(f.lambda, 2 * p.n - p.K.dim());
    rep.items.push_back({"|det Phi| = lambda^(2n - dim K)", pass,
                         pass ? "" : "det " + detq.str() + " vs lambda " + f.lambda.str()});
  }
  {
    bool pass = true;
    std::string witness;
    auto inv = aut.descended.inverted();
    if (!inv) throw Error("verified automorphism is singular");
    Matrix invfull = inv->full_matrix();
    for (int r = 0; r < p.K.dim() && pass; ++r) {
      MultiVector z = area_two_vector(b, p.K.basis_vector(r));
      Form izo = interior(z, omega);
      Form pulled = pullback(aut.descended, izo);
      MultiVector zback = pushforward(invfull, z);
      for (int a = 0; a < q.dim() && pass; ++a)
        for (int c = a + 1; c < q.dim() && pass; ++c) {
          Form alpha = Form::monomial({a, c}, FieldElement::one(p.d));
          Form lhs = wedge(pulled, alpha);
          SymCoeff val = evaluate(alpha, zback);
          Form rhs = omega.scaled(SymCoeff(detq) * val);
          if (lhs != rhs) {
            pass = false;
            witness = "alpha = theta" + tuple_str({a, c}) + ", K basis " + std::to_string(r);
          }
        }
    }
    rep.items.push_back({"Phi*(i_Z omega) ^ alpha = det Phi alpha(inv(Phi) Z) omega", pass, witness});
  }
  return rep;
}

KernelTwoVectors kernel_two_vectors(const BuiltQuotient& b, int factor) {
  const Presentation& p = b.pres;
  const GradedAlgebra& q = b.algebra;
  KernelTwoVectors out{{}, Subspace::zero(0, p.d), {}};
  const int flpf = b.first_layer_per_factor();
  for (int a = 0; a < flpf; ++a)
    for (int c = a + 1; c < flpf; ++c)
      out.pair_index.emplace_back(b.first_index(factor, a), b.first_index(factor, c));
  const int pairs = static_cast<int>(out.pair_index.size());
  const int n2 = q.layer_dim(2), off2 = q.layer_offset(2);
  Matrix map(n2, pairs, p.d);
  for (int c = 0; c < pairs; ++c) {
    Vec br = q.bracket_basis(out.pair_index[static_cast<size_t>(c)].first,
                             out.pair_index[static_cast<size_t>(c)].second);
    for (int r = 0; r < n2; ++r) map.at(r, c) = br[static_cast<size_t>(off2 + r)];
  }
  out.coords = nullspace(map);
  if (out.coords.dim() == 0)
    throw Error("the bracket is injective on this factor's two-vectors (first real Heisenberg factor)");
  for (int r = 0; r < out.coords.dim(); ++r) {
    MultiVector x(2, p.d);
    for (int c = 0; c < pairs; ++c) {
      const FieldElement& v = out.coords.basis().at(r, c);
      if (!v.is_zero())
        x.add_term({out.pair_index[static_cast<size_t>(c)].first, out.pair_index[static_cast<size_t>(c)].second}, v);
    }
    out.basis.push_back(std::move(x));
  }
  return out;
}

std::vector<Form> dual_two_forms(const BuiltQuotient& b, int factor) {
  KernelTwoVectors ker = kernel_two_vectors(b, factor);
  const int pairs = static_cast<int>(ker.pair_index.size());
  std::vector<Form> out;
  for (int m = 0; m < ker.coords.dim(); ++m) {
    Vec rhs = zero_vec(ker.coords.dim(), b.pres.d);
    rhs[static_cast<size_t>(m)] = FieldElement::one(b.pres.d);
    auto y = solve(ker.coords.basis(), rhs);
    if (!y) throw Error("dual-basis system unsolvable");
    Form alpha(2, b.pres.d);
    for (int c = 0; c < pairs; ++c)
      if (!(*y)[static_cast<size_t>(c)].is_zero())
        alpha.add_term({ker.pair_index[static_cast<size_t>(c)].first, ker.pair_index[static_cast<size_t>(c)].second},
                       SymCoeff((*y)[static_cast<size_t>(c)]));
    // normalization check
    for (int mm = 0; mm < ker.coords.dim(); ++mm) {
      SymCoeff v = evaluate(alpha, ker.basis[static_cast<size_t>(mm)]);
      FieldElement want = mm == m ? FieldElement::one(b.pres.d) : FieldElement::zero(b.pres.d);
      if (v != SymCoeff(want)) throw Error("dual-basis normalization failed");
    }
    out.push_back(std::move(alpha));
  }
  return out;
}

SuiteReport verify_higher_suite(const BuiltQuotient& b) {
  const Presentation& p = b.pres;
  if (p.F == FactorField::Real && p.m < 2)
    throw Error("the higher suite needs higher real or complex Heisenberg factors");
  SuiteReport rep;
  const GradedAlgebra& q = b.algebra;
  Form omega = volume_form(q);
  Form dphi = dphi_formal(q);
  const int flpf = b.first_layer_per_factor();
  // factor-local two-forms
  std::vector<Form> gammas;
  for (int jf = 0; jf < p.n; ++jf)
    for (int a = 0; a < flpf; ++a)
      for (int c = a + 1; c < flpf; ++c)
        gammas.push_back(Form::monomial({b.first_index(jf, a), b.first_index(jf, c)},
                                        FieldElement::one(p.d)));
  for (int k = 0; k < p.n; ++k) {
    bool pass82 = true, pass84 = true, pass85 = true;
    std::string w82, w84, w85;
    for (int kp = 0; kp < p.n; ++kp) {
      if (kp == k) continue;
      for (int a = 0; a < flpf; ++a)
        for (int c = a + 1; c < flpf; ++c) {
          MultiVector y = unit_mv(q, b.first_index(k, a));
          MultiVector yp = unit_mv(q, b.first_index(k, c));
          Vec brv = q.bracket_basis(b.first_index(k, a), b.first_index(k, c));
          for (int zq = 0; zq < flpf; ++zq) {
            MultiVector z = unit_mv(q, b.first_index(kp, zq));
            Form iyz = interior(y, interior(yp, interior(z, omega)));
            Form lhs = differential(q, iyz);
            Form rhs(lhs.degree(), p.d);
            if (!is_zero_vec(brv)) rhs = -interior(z, interior(MultiVector::from_vec(brv), omega));
            if (lhs != rhs) {
              pass82 = false;
              w82 = tuple_str({b.first_index(k, a), b.first_index(k, c), b.first_index(kp, zq)});
            }
            // Leibniz expansion of the formal part
            Form left = wedge(dphi, iyz);
            Form right = interior(yp, interior(z, omega)).scaled(SymCoeff::symbol(b.first_index(k, a), p.d)) -
                         interior(y, interior(z, omega)).scaled(SymCoeff::symbol(b.first_index(k, c), p.d)) +
                         interior(y, interior(yp, omega)).scaled(SymCoeff::symbol(b.first_index(kp, zq), p.d));
            if (left != right) {
              pass84 = false;
              w84 = tuple_str({b.first_index(k, a), b.first_index(k, c), b.first_index(kp, zq)});
            }
            // wedge against factor-local two-forms
            for (const Form& gamma : gammas) {
              SymCoeff gv = evaluate(gamma, wedge(y, yp));
              Form glhs = wedge(gamma, left);
              Form grhs = omega.scaled(SymCoeff::symbol(b.first_index(kp, zq), p.d) * (-gv));
              if (glhs != grhs) {
                pass85 = false;
                w85 = tuple_str({b.first_index(k, a), b.first_index(k, c), b.first_index(kp, zq)});
              }
            }
          }
        }
    }
    rep.items.push_back({"d(i_Y i_Y' i_Z omega) = -i_Z i_[Y,Y'] omega, factor " + std::to_string(k + 1), pass82, w82});
    rep.items.push_back({"Leibniz expansion, factor " + std::to_string(k + 1), pass84, w84});
    rep.items.push_back({"two-form coefficient -gamma(Y,Y') c_Z, factor " + std::to_string(k + 1), pass85, w85});
  }
  // kernel two-vectors: closedness and the dual-form coefficient rule
  for (int k = 0; k < p.n; ++k) {
    KernelTwoVectors ker = kernel_two_vectors(b, k);
    std::vector<Form> duals = dual_two_forms(b, k);
    bool closed_ok = true, coeff_ok = true;
    std::string cw, kw;
    for (size_t xi = 0; xi < ker.basis.size(); ++xi) {
      for (int kp = 0; kp < p.n; ++kp) {
        if (kp == k) continue;
        for (int zq = 0; zq < flpf; ++zq) {
          MultiVector z = unit_mv(q, b.first_index(kp, zq));
          Form ixz = interior(ker.basis[xi], interior(z, omega));
          if (!differential(q, ixz).is_zero()) {
            closed_ok = false;
            cw = "kernel vector " + std::to_string(xi);
          }
          Form left = wedge(dphi, ixz);
          for (size_t gi = 0; gi < duals.size(); ++gi) {
            SymCoeff gv = evaluate(duals[gi], ker.basis[xi]);
            Form glhs = wedge(duals[gi], left);
            Form grhs = omega.scaled(SymCoeff::symbol(b.first_index(kp, zq), p.d) * gv);
            if (glhs != grhs) {
              coeff_ok = false;
              kw = "kernel vector " + std::to_string(xi) + ", dual " + std::to_string(gi);
            }
          }
          for (const Form& gamma : gammas) {
            SymCoeff gv = evaluate(gamma, ker.basis[xi]);
            Form glhs = wedge(gamma, left);
            Form grhs = omega.scaled(SymCoeff::symbol(b.first_index(kp, zq), p.d) * gv);
            if (glhs != grhs) {
              coeff_ok = false;
              kw = "kernel vector " + std::to_string(xi) + " against a factor two-form";
            }
          }
        }
      }
    }
    rep.items.push_back({"d(i_X i_Z omega) = 0 on ker, factor " + std::to_string(k + 1), closed_ok, cw});
    rep.items.push_back({"gamma(X) c_Z coefficient, factor " + std::to_string(k + 1), coeff_ok, kw});
  }
  return rep;
}

}  // namespace carnot
