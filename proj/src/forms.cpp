#include "carnot/forms.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace carnot {

std::optional<std::pair<IndexSet, int>> sort_sign(const std::vector<int>& indices) {
  IndexSet s = indices;
  int sign = 1;
  // insertion sort, counting transpositions
  for (size_t i = 1; i < s.size(); ++i) {
    size_t j = i;
    while (j > 0 && s[j - 1] > s[j]) {
      std::swap(s[j - 1], s[j]);
      sign = -sign;
      --j;
    }
  }
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] == s[i]) return std::nullopt;
  return std::make_pair(std::move(s), sign);
}

SymCoeff SymCoeff::symbol(int index, int d) {
  SymCoeff c(FieldElement::zero(d));
  c.dphi[index] = FieldElement::one(d);
  return c;
}

bool SymCoeff::is_zero() const {
  if (!scalar.is_zero()) return false;
  for (const auto& [i, c] : dphi)
    if (!c.is_zero()) return false;
  return true;
}

SymCoeff SymCoeff::operator-() const {
  SymCoeff r(-scalar);
  for (const auto& [i, c] : dphi) r.dphi[i] = -c;
  return r;
}

SymCoeff& SymCoeff::operator+=(const SymCoeff& o) {
  scalar += o.scalar;
  for (const auto& [i, c] : o.dphi) {
    auto it = dphi.find(i);
    if (it == dphi.end())
      dphi[i] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) dphi.erase(it);
    }
  }
  return *this;
}

SymCoeff& SymCoeff::operator-=(const SymCoeff& o) { return *this += -o; }

SymCoeff operator*(const SymCoeff& l, const SymCoeff& r) {
  if (!l.dphi.empty() && !r.dphi.empty())
    throw Error("product of two symbolic coefficients is never needed and not defined");
  const SymCoeff& sym = l.dphi.empty() ? r : l;
  const FieldElement& s = l.dphi.empty() ? l.scalar : r.scalar;
  SymCoeff out(s * sym.scalar);
  for (const auto& [i, c] : sym.dphi) {
    FieldElement v = s * c;
    if (!v.is_zero()) out.dphi[i] = v;
  }
  return out;
}

bool operator==(const SymCoeff& l, const SymCoeff& r) {
  return (l - r).is_zero();
}

std::string SymCoeff::str() const {
  std::ostringstream os;
  os << scalar.str();
  for (const auto& [i, c] : dphi) os << " + (" << c.str() << ")*c" << i;
  return os.str();
}

MultiVector MultiVector::from_vec(const Vec& v) {
  if (v.empty()) throw Error("empty vector");
  MultiVector m(1, v.front().field_tag());
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) m.add_term({static_cast<int>(i)}, v[i]);
  return m;
}

MultiVector MultiVector::basis(int degree, const IndexSet& indices, int d) {
  MultiVector m(degree, d);
  m.add_term(indices, FieldElement::one(d));
  return m;
}

void MultiVector::add_term(const std::vector<int>& indices, const FieldElement& c) {
  if (static_cast<int>(indices.size()) != degree_) throw Error("multivector degree mismatch");
  if (c.is_zero()) return;
  auto ss = sort_sign(indices);
  if (!ss) return;
  FieldElement v = ss->second > 0 ? c : -c;
  auto it = terms_.find(ss->first);
  if (it == terms_.end())
    terms_[ss->first] = v;
  else {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiVector MultiVector::operator-() const {
  MultiVector r(degree_, d_);
  for (const auto& [i, c] : terms_) r.terms_[i] = -c;
  return r;
}

MultiVector operator+(const MultiVector& l, const MultiVector& r) {
  if (l.degree_ != r.degree_) throw Error("multivector sum: degree mismatch");
  MultiVector s = l;
  for (const auto& [i, c] : r.terms_) s.add_term(i, c);
  return s;
}

MultiVector MultiVector::scaled(const FieldElement& c) const {
  MultiVector r(degree_, d_);
  if (c.is_zero()) return r;
  for (const auto& [i, v] : terms_) r.terms_[i] = v * c;
  return r;
}

bool operator==(const MultiVector& l, const MultiVector& r) {
  return l.degree_ == r.degree_ && l.terms_ == r.terms_;
}

std::string MultiVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c.str() << ")*e[";
    for (size_t k = 0; k < i.size(); ++k) os << (k ? "," : "") << i[k];
    os << "]";
    first = false;
  }
  return os.str();
}

MultiVector wedge(const MultiVector& x, const MultiVector& y) {
  if (x.field_tag() != y.field_tag()) throw Error("wedge: field mismatch");
  MultiVector r(x.degree() + y.degree(), x.field_tag());
  for (const auto& [ix, cx] : x.terms())
    for (const auto& [iy, cy] : y.terms()) {
      std::vector<int> cat = ix;
      cat.insert(cat.end(), iy.begin(), iy.end());
      r.add_term(cat, cx * cy);
    }
  return r;
}

MultiVector pushforward(const Matrix& full, const MultiVector& x) {
  MultiVector r(x.degree(), full.field_tag());
  for (const auto& [idx, c] : x.terms()) {
    // wedge the image columns
    MultiVector acc(0, full.field_tag());
    acc.add_term({}, c);
    for (int i : idx) {
      MultiVector img = MultiVector::from_vec(full.col(i));
      acc = wedge(acc, img);
    }
    for (const auto& [i2, c2] : acc.terms()) r.add_term(i2, c2);
  }
  return r;
}

Form Form::monomial(const IndexSet& indices, SymCoeff c, int d) {
  Form f(static_cast<int>(indices.size()), d);
  f.add_term(indices, c);
  return f;
}

Form Form::monomial(const IndexSet& indices, FieldElement c) {
  int d = c.field_tag();
  return monomial(indices, SymCoeff(std::move(c)), d);
}

bool Form::is_symbolic() const {
  for (const auto& [i, c] : terms_)
    if (!c.is_pure()) return true;
  return false;
}

void Form::add_term(const std::vector<int>& indices, const SymCoeff& c) {
  if (static_cast<int>(indices.size()) != degree_) throw Error("form degree mismatch");
  if (c.is_zero()) return;
  auto ss = sort_sign(indices);
  if (!ss) return;
  SymCoeff v = ss->second > 0 ? c : -c;
  auto it = terms_.find(ss->first);
  if (it == terms_.end())
    terms_[ss->first] = v;
  else {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form Form::operator-() const {
  Form r(degree_, d_);
  for (const auto& [i, c] : terms_) r.terms_[i] = -c;
  return r;
}

Form operator+(const Form& l, const Form& r) {
  // the zero form is degree-agnostic
  if (l.degree_ != r.degree_) {
    if (l.is_zero()) return r;
    if (r.is_zero()) return l;
    throw Error("form sum: degree mismatch");
  }
  Form s = l;
  for (const auto& [i, c] : r.terms_) s.add_term(i, c);
  return s;
}

Form operator-(const Form& l, const Form& r) { return l + (-r); }

Form Form::scaled(const SymCoeff& c) const {
  Form r(degree_, d_);
  if (c.is_zero()) return r;
  for (const auto& [i, v] : terms_) {
    SymCoeff p = v * c;
    if (!p.is_zero()) r.terms_[i] = p;
  }
  return r;
}

bool operator==(const Form& l, const Form& r) {
  if (l.degree_ != r.degree_) return l.is_zero() && r.is_zero();
  Form diff = l - r;
  return diff.is_zero();
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c.str() << ")*theta[";
    for (size_t k = 0; k < i.size(); ++k) os << (k ? "," : "") << i[k];
    os << "]";
    first = false;
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (a.field_tag() != b.field_tag()) throw Error("wedge: field mismatch");
  Form r(a.degree() + b.degree(), a.field_tag());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      std::vector<int> cat = ia;
      cat.insert(cat.end(), ib.begin(), ib.end());
      r.add_term(cat, ca * cb);
    }
  return r;
}

namespace {

// sign of theta_I(e_S wedge e_T) where S + T = I as sets
int merge_sign(const IndexSet& s, const IndexSet& t) {
  int inv = 0;
  for (int b : t)
    for (int a : s)
      if (a > b) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

Form interior(const MultiVector& x, const Form& a) {
  // contraction past degree zero vanishes
  if (x.degree() > a.degree()) return Form(0, a.field_tag());
  Form r(a.degree() - x.degree(), a.field_tag());
  for (const auto& [ix, cx] : x.terms())
    for (const auto& [ia, ca] : a.terms()) {
      if (!std::includes(ia.begin(), ia.end(), ix.begin(), ix.end())) continue;
      IndexSet rest;
      std::set_difference(ia.begin(), ia.end(), ix.begin(), ix.end(), std::back_inserter(rest));
      int sg = merge_sign(ix, rest);
      SymCoeff v = ca * SymCoeff(cx);
      r.add_term(rest, sg > 0 ? v : -v);
    }
  return r;
}

SymCoeff evaluate(const Form& a, const MultiVector& x) {
  if (a.degree() != x.degree()) throw Error("evaluate: degree mismatch");
  SymCoeff s(FieldElement::zero(a.field_tag()));
  for (const auto& [ia, ca] : a.terms()) {
    auto it = x.terms().find(ia);
    if (it != x.terms().end()) s += ca * SymCoeff(it->second);
  }
  return s;
}

Form differential(const GradedAlgebra& g, const Form& a) {
  if (a.is_symbolic())
    throw Error("differential of a symbolic form; establish closedness of the scalar part separately");
  const int d = g.field_tag();
  // d theta_k = - sum_{i<j} c_{ij}^k theta_i theta_j, extended by the Leibniz
  // rule; the position sign is absorbed by splicing the pair in place
  std::vector<std::vector<StructureTriple>> dtheta(static_cast<size_t>(g.dim()));
  for (const auto& t : g.canonical_triples()) dtheta[static_cast<size_t>(t.k)].push_back(t);
  Form r(a.degree() + 1, d);
  for (const auto& [idx, coeff] : a.terms()) {
    for (size_t pos = 0; pos < idx.size(); ++pos) {
      // Leibniz sign for moving d past the preceding one-forms
      FieldElement sgn = pos % 2 == 0 ? FieldElement::one(d) : -FieldElement::one(d);
      for (const auto& t : dtheta[static_cast<size_t>(idx[pos])]) {
        std::vector<int> monomial;
        monomial.reserve(idx.size() + 1);
        for (size_t q = 0; q < pos; ++q) monomial.push_back(idx[q]);
        monomial.push_back(t.i);
        monomial.push_back(t.j);
        for (size_t q = pos + 1; q < idx.size(); ++q) monomial.push_back(idx[q]);
        r.add_term(monomial, coeff * SymCoeff(-t.c * sgn));
      }
    }
  }
  return r;
}

int weight_of_index_set(const GradedAlgebra& g, const IndexSet& indices) {
  int w = 0;
  for (int i : indices) w -= g.layer_of(i);
  return w;
}

int weight(const GradedAlgebra& g, const Form& a) {
  if (a.is_zero()) return kWeightNegInfinity;
  int w = kWeightNegInfinity;
  for (const auto& [i, c] : a.terms()) w = std::max(w, weight_of_index_set(g, i));
  return w;
}

Form pullback(const Matrix& full, int domain_dim, const Form& a) {
  Form r(a.degree(), full.field_tag());
  for (const auto& [idx, c] : a.terms()) {
    // product over i in idx of the 1-form sum_j full[i][j] theta_j
    std::map<IndexSet, SymCoeff> acc;
    acc[{}] = c;
    for (int i : idx) {
      std::map<IndexSet, SymCoeff> next;
      for (const auto& [mono, mc] : acc)
        for (int j = 0; j < domain_dim; ++j) {
          const FieldElement& m = full.at(i, j);
          if (m.is_zero()) continue;
          std::vector<int> cat = mono;
          cat.push_back(j);
          auto ss = sort_sign(cat);
          if (!ss) continue;
          SymCoeff v = mc * SymCoeff(ss->second > 0 ? m : -m);
          auto it = next.find(ss->first);
          if (it == next.end())
            next[ss->first] = v;
          else
            it->second += v;
        }
      acc = std::move(next);
    }
    for (const auto& [mono, mc] : acc) r.add_term(mono, mc);
  }
  return r;
}

Form pullback(const GradedMap& phi, const Form& a) {
  return pullback(phi.full_matrix(), phi.domain_dim(), a);
}

Form lie_derivative(const GradedAlgebra& g, const Vec& x, const Form& a) {
  MultiVector mx = MultiVector::from_vec(x);
  return differential(g, interior(mx, a)) + interior(mx, differential(g, a));
}

Form volume_form(const GradedAlgebra& g) {
  IndexSet all(static_cast<size_t>(g.dim()));
  for (int i = 0; i < g.dim(); ++i) all[static_cast<size_t>(i)] = i;
  return Form::monomial(all, FieldElement::one(g.field_tag()));
}

Form dphi_formal(const GradedAlgebra& g) {
  Form f(1, g.field_tag());
  for (int i = 0; i < g.dim(); ++i) f.add_term({i}, SymCoeff::symbol(i, g.field_tag()));
  return f;
}

Form descend(const GradedAlgebra& ambient, const Subspace& k, const std::vector<int>& kept, const Form& a) {
  for (int r = 0; r < k.dim(); ++r) {
    MultiVector kappa = MultiVector::from_vec(k.basis_vector(r));
    if (!interior(kappa, a).is_zero())
      throw Error("form does not annihilate K (witness basis vector " + std::to_string(r) + ")");
  }
  (void)ambient;
  std::vector<int> pos(static_cast<size_t>(ambient.dim()), -1);
  for (size_t q = 0; q < kept.size(); ++q) pos[static_cast<size_t>(kept[q])] = static_cast<int>(q);
  Form r(a.degree(), a.field_tag());
  for (const auto& [idx, c] : a.terms()) {
    std::vector<int> mapped;
    bool ok = true;
    for (int i : idx) {
      if (pos[static_cast<size_t>(i)] < 0) {
        ok = false;
        break;
      }
      mapped.push_back(pos[static_cast<size_t>(i)]);
    }
    if (ok) r.add_term(mapped, c);
  }
  return r;
}

Form lift(const GradedMap& projection, const Form& a) { return pullback(projection, a); }

bool SuiteReport::all_pass() const {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

std::string SuiteReport::str() const {
  std::ostringstream os;
  for (const auto& it : items)
    os << (it.pass ? "pass" : "FAIL") << "  " << it.identity
       << (it.witness.empty() ? "" : "  [" + it.witness + "]") << "\n";
  return os.str();
}

namespace {

std::string tuple_str(const std::vector<int>& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

}  // namespace

SuiteReport identity_suite(const GradedAlgebra& g, unsigned seed) {
  SuiteReport rep;
  const int n = g.dim(), d = g.field_tag();
  if (n > 16) throw Error("identity suite enumerates all monomials; dimension too large");
  Form omega = volume_form(g);
  auto unit = [&](int i) { return unit_vec(n, i, d); };
  auto mv1 = [&](int i) { return MultiVector::basis(1, {i}, d); };

  // d540: d(d theta_I) = 0 for every monomial up to top degree
  {
    bool pass = true;
    std::string witness;
    for (unsigned long mask = 1; mask < (1ul << n) && pass; ++mask) {
      IndexSet idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1ul << i)) idx.push_back(i);
      Form f = Form::monomial(idx, FieldElement::one(d));
      if (!differential(g, differential(g, f)).is_zero()) {
        pass = false;
        witness = tuple_str(idx);
      }
    }
    rep.items.push_back({"d(d theta_I) = 0", pass, witness});
  }

  // codegree 1: d(i_X omega) = L_X omega = 0
  {
    bool pass = true;
    std::string witness;
    for (int i = 0; i < n && pass; ++i) {
      if (!differential(g, interior(mv1(i), omega)).is_zero() ||
          !lie_derivative(g, unit(i), omega).is_zero()) {
        pass = false;
        witness = tuple_str({i});
      }
    }
    rep.items.push_back({"d(i_X omega) = L_X omega = 0", pass, witness});
  }

  // codegree 2: d(i_X i_Y omega) = i_[X,Y] omega
  {
    bool pass = true;
    std::string witness;
    for (int i = 0; i < n && pass; ++i)
      for (int j = 0; j < n && pass; ++j) {
        Form lhs = differential(g, interior(mv1(i), interior(mv1(j), omega)));
        Form rhs = interior(MultiVector::from_vec(g.bracket_basis(i, j)), omega);
        if (lhs != rhs) {
          pass = false;
          witness = tuple_str({i, j});
        }
      }
    rep.items.push_back({"d(i_X i_Y omega) = i_[X,Y] omega", pass, witness});
  }

  // codegree 3: d(i_X i_Y i_Z omega) = i_A omega with
  // A = X ^ [Y,Z] + Y ^ [Z,X] + Z ^ [X,Y]
  {
    bool pass = true;
    std::string witness;
    for (int i = 0; i < n && pass; ++i)
      for (int j = 0; j < n && pass; ++j)
        for (int k = 0; k < n && pass; ++k) {
          Form lhs = differential(g, interior(mv1(i), interior(mv1(j), interior(mv1(k), omega))));
          MultiVector a2 = wedge(mv1(i), MultiVector::from_vec(g.bracket_basis(j, k))) +
                           wedge(mv1(j), MultiVector::from_vec(g.bracket_basis(k, i))) +
                           wedge(mv1(k), MultiVector::from_vec(g.bracket_basis(i, j)));
          Form rhs = interior(a2, omega);
          if (lhs != rhs) {
            pass = false;
            witness = tuple_str({i, j, k});
          }
        }
    rep.items.push_back({"d(i_X i_Y i_Z omega) = i_{X^[Y,Z]+Y^[Z,X]+Z^[X,Y]} omega", pass, witness});
  }

  // codegree 4 under the commutation hypothesis:
  // d(i_Z i_X'' i_X' i_X omega) = - i_Z d(i_X'' i_X' i_X omega)
  {
    bool pass = true;
    std::string witness;
    std::vector<std::vector<bool>> commutes(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) commutes[static_cast<size_t>(i)][static_cast<size_t>(j)] = is_zero_vec(g.bracket_basis(i, j));
    for (int x = 0; x < n && pass; ++x)
      for (int x1 = 0; x1 < n && pass; ++x1)
        for (int x2 = 0; x2 < n && pass; ++x2) {
          Form inner3 = interior(mv1(x2), interior(mv1(x1), interior(mv1(x), omega)));
          Form dinner = differential(g, inner3);
          for (int z = 0; z < n && pass; ++z) {
            if (!commutes[static_cast<size_t>(x)][static_cast<size_t>(z)] ||
                !commutes[static_cast<size_t>(x1)][static_cast<size_t>(z)] ||
                !commutes[static_cast<size_t>(x2)][static_cast<size_t>(z)])
              continue;
            Form lhs = differential(g, interior(mv1(z), inner3));
            Form rhs = -interior(mv1(z), dinner);
            if (lhs != rhs) {
              pass = false;
              witness = tuple_str({x, x1, x2, z});
            }
          }
        }
    rep.items.push_back({"d(i_Z i_X'' i_X' i_X omega) = -i_Z d(i_X'' i_X' i_X omega)", pass, witness});
  }

  // Cartan commutator rule i_[X,Y] = [L_X, i_Y] on a spread of forms
  {
    bool pass = true;
    std::string witness;
    std::vector<Form> testers;
    for (int i = 0; i < n; ++i) testers.push_back(Form::monomial({i}, FieldElement::one(d)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) testers.push_back(Form::monomial({i, j}, FieldElement::one(d)));
    testers.push_back(omega);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1), coeff(-3, 3);
    for (int s = 0; s < 8; ++s) {
      Form f(3, d);
      for (int t = 0; t < 3; ++t) {
        std::vector<int> idx = {pick(rng), pick(rng), pick(rng)};
        f.add_term(idx, SymCoeff(FieldElement::from_int(coeff(rng), d)));
      }
      if (!f.is_zero()) testers.push_back(f);
    }
    for (int i = 0; i < n && pass; ++i)
      for (int j = 0; j < n && pass; ++j) {
        MultiVector br = MultiVector::from_vec(g.bracket_basis(i, j));
        for (size_t t = 0; t < testers.size() && pass; ++t) {
          const Form& f = testers[t];
          Form lhs = interior(br, f);
          Form rhs = lie_derivative(g, unit(i), interior(mv1(j), f)) -
                     interior(mv1(j), lie_derivative(g, unit(i), f));
          if (lhs != rhs) {
            pass = false;
            witness = tuple_str({i, j}) + " on form #" + std::to_string(t);
          }
        }
      }
    rep.items.push_back({"i_[X,Y] = [L_X, i_Y]", pass, witness});
  }

  // random non-basis tuples for the codegree 2/3 identities
  {
    bool pass = true;
    std::string witness;
    std::mt19937 rng(seed + 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto rand_vec = [&]() {
      Vec v = zero_vec(n, d);
      for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = FieldElement::from_int(coeff(rng), d);
      return v;
    };
    for (int s = 0; s < 10 && pass; ++s) {
      Vec x = rand_vec(), y = rand_vec(), z = rand_vec();
      MultiVector mx = MultiVector::from_vec(x), my = MultiVector::from_vec(y), mz = MultiVector::from_vec(z);
      Form lhs2 = differential(g, interior(mx, interior(my, omega)));
      Form rhs2 = interior(MultiVector::from_vec(g.bracket(x, y)), omega);
      MultiVector a2 = wedge(mx, MultiVector::from_vec(g.bracket(y, z))) +
                       wedge(my, MultiVector::from_vec(g.bracket(z, x))) +
                       wedge(mz, MultiVector::from_vec(g.bracket(x, y)));
      Form lhs3 = differential(g, interior(mx, interior(my, interior(mz, omega))));
      Form rhs3 = interior(a2, omega);
      if (lhs2 != rhs2 || lhs3 != rhs3) {
        pass = false;
        witness = "random sample " + std::to_string(s);
      }
    }
    rep.items.push_back({"codegree 2/3 identities on random elements", pass, witness});
  }

  return rep;
}

}  // namespace carnot
