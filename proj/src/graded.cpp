#include "carnot/graded.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace carnot {

std::string ValidationReport::str() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (const auto& it : issues) os << it.invariant << " at " << it.witness << "\n";
  return os.str();
}

GradedAlgebra::GradedAlgebra(std::vector<int> layer_dims, std::vector<StructureTriple> triples, int d)
    : d_(d), layer_dims_(std::move(layer_dims)), raw_(std::move(triples)) {
  if (layer_dims_.empty()) throw Error("algebra needs at least one layer");
  offsets_.resize(layer_dims_.size());
  int off = 0;
  for (size_t l = 0; l < layer_dims_.size(); ++l) {
    if (layer_dims_[l] < 0) throw Error("negative layer dimension");
    offsets_[l] = off;
    off += layer_dims_[l];
  }
  n_ = off;
  for (const auto& t : raw_) {
    if (t.i < 0 || t.i >= n_ || t.j < 0 || t.j >= n_ || t.k < 0 || t.k >= n_)
      throw Error("structure constant index out of range");
    if (t.c.field_tag() != d_) throw Error("structure constant field tag mismatch");
    if (t.i == t.j) continue;  // flagged by validate
    // canonical key i < j; entries given as (j, i) fold in negated, but only
    // when the (i, j) order is absent, so redundant consistent input is safe
  }
  std::map<std::pair<int, int>, std::map<int, FieldElement>> low, high;
  for (const auto& t : raw_) {
    if (t.i == t.j) continue;
    if (t.i < t.j) {
      auto& m = low[{t.i, t.j}][t.k];
      m = (m.field_tag() == d_ ? m : FieldElement::zero(d_)) + t.c;
    } else {
      auto& m = high[{t.j, t.i}][t.k];
      m = (m.field_tag() == d_ ? m : FieldElement::zero(d_)) + t.c;
    }
  }
  for (auto& [key, terms] : low) table_[key] = terms;
  for (auto& [key, terms] : high) {
    if (table_.count(key)) continue;  // (i,j) order wins; validate compares
    auto& dst = table_[key];
    for (auto& [k, c] : terms) dst[k] = -c;
  }
  for (auto it = table_.begin(); it != table_.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
    it = it->second.empty() ? table_.erase(it) : std::next(it);
  }
}

std::vector<StructureTriple> GradedAlgebra::canonical_triples() const {
  std::vector<StructureTriple> out;
  for (const auto& [key, terms] : table_)
    for (const auto& [k, c] : terms) out.push_back({key.first, key.second, k, c});
  return out;
}

int GradedAlgebra::layer_of(int index) const {
  for (int l = step(); l >= 1; --l)
    if (index >= layer_offset(l)) return l;
  throw Error("index out of range");
}

int GradedAlgebra::homogeneous_dimension() const {
  int nu = 0;
  for (int l = 1; l <= step(); ++l) nu += l * layer_dim(l);
  return nu;
}

Vec GradedAlgebra::bracket_basis(int i, int j) const {
  Vec r = zero_vec(n_, d_);
  if (i == j) return r;
  bool flip = i > j;
  auto it = table_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == table_.end()) return r;
  for (const auto& [k, c] : it->second) r[static_cast<size_t>(k)] = flip ? -c : c;
  return r;
}

Vec GradedAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw Error("bracket: element dimension mismatch");
  Vec r = zero_vec(n_, d_);
  for (const auto& [key, terms] : table_) {
    auto [i, j] = key;
    FieldElement coef = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)] -
                        x[static_cast<size_t>(j)] * y[static_cast<size_t>(i)];
    if (coef.is_zero()) continue;
    for (const auto& [k, c] : terms) r[static_cast<size_t>(k)] += coef * c;
  }
  return r;
}

Matrix GradedAlgebra::ad_matrix(const Vec& x) const {
  Matrix m(n_, n_, d_);
  for (int j = 0; j < n_; ++j) {
    Vec col = bracket(x, unit_vec(n_, j, d_));
    for (int i = 0; i < n_; ++i) m.at(i, j) = col[static_cast<size_t>(i)];
  }
  return m;
}

Vec GradedAlgebra::layer_component(const Vec& x, int l) const {
  Vec r = zero_vec(n_, d_);
  for (int q = 0; q < layer_dim(l); ++q) {
    int idx = layer_offset(l) + q;
    r[static_cast<size_t>(idx)] = x[static_cast<size_t>(idx)];
  }
  return r;
}

Subspace GradedAlgebra::layer_subspace(int l) const {
  std::vector<Vec> rows;
  for (int q = 0; q < layer_dim(l); ++q) rows.push_back(unit_vec(n_, layer_offset(l) + q, d_));
  return Subspace::span(rows, n_, d_);
}

bool GradedAlgebra::is_abelian() const { return table_.empty(); }

namespace {

std::string pair_str(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

ValidationReport validate(const GradedAlgebra& g) {
  ValidationReport rep;
  const int d = g.field_tag();
  // antisymmetry on the raw tensor: both orders present must negate
  std::map<std::pair<int, int>, std::map<int, FieldElement>> low, high;
  for (const auto& t : g.raw_) {
    if (t.i == t.j) {
      if (!t.c.is_zero())
        rep.issues.push_back({"antisymmetry (diagonal)", pair_str(t.i, t.j)});
      continue;
    }
    auto& m = (t.i < t.j ? low : high)[{std::min(t.i, t.j), std::max(t.i, t.j)}][t.k];
    m = (m.field_tag() == d ? m : FieldElement::zero(d)) + t.c;
  }
  for (const auto& [key, terms] : low) {
    auto it = high.find(key);
    if (it == high.end()) continue;
    std::map<int, FieldElement> keys = terms;
    for (const auto& [k, c] : it->second)
      if (!keys.count(k)) keys[k] = FieldElement::zero(d);
    for (const auto& [k, unused] : keys) {
      (void)unused;
      FieldElement lo = terms.count(k) ? terms.at(k) : FieldElement::zero(d);
      FieldElement hi = it->second.count(k) ? it->second.at(k) : FieldElement::zero(d);
      if (lo != -hi) {
        rep.issues.push_back({"antisymmetry", pair_str(key.first, key.second)});
        break;
      }
    }
  }
  // grading
  for (const auto& [key, terms] : g.table_) {
    int li = g.layer_of(key.first), lj = g.layer_of(key.second);
    for (const auto& [k, c] : terms) {
      if (c.is_zero()) continue;
      if (li + lj > g.step() || g.layer_of(k) != li + lj) {
        rep.issues.push_back({"grading", pair_str(key.first, key.second) + "->" + std::to_string(k)});
        break;
      }
    }
  }
  // Jacobi on basis triples
  const int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec s = g.bracket(g.bracket_basis(i, j), unit_vec(n, k, d));
        s = add(s, g.bracket(g.bracket_basis(j, k), unit_vec(n, i, d)));
        s = add(s, g.bracket(g.bracket_basis(k, i), unit_vec(n, j, d)));
        if (!is_zero_vec(s)) {
          rep.issues.push_back({"jacobi", "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                              std::to_string(k) + ")"});
        }
      }
  // stratification: [V1, Vj] = V_{j+1}
  for (int l = 1; l < g.step(); ++l) {
    std::vector<Vec> gens;
    for (int a = 0; a < g.layer_dim(1); ++a)
      for (int b = 0; b < g.layer_dim(l); ++b)
        gens.push_back(g.bracket_basis(g.layer_offset(1) + a, g.layer_offset(l) + b));
    if (!(Subspace::span(gens, n, d) == g.layer_subspace(l + 1)))
      rep.issues.push_back({"stratification", "[V1,V" + std::to_string(l) + "] != V" + std::to_string(l + 1)});
  }
  // complex structure
  if (g.complex_structure()) {
    const Matrix& j = *g.complex_structure();
    if (j.rows() != n || j.cols() != n) {
      rep.issues.push_back({"complex structure", "shape"});
    } else {
      Matrix sq = j * j;
      Matrix neg = Matrix::identity(n, d).scaled(-FieldElement::one(d));
      if (sq != neg) rep.issues.push_back({"complex structure", "J^2 != -id"});
      if (!is_graded_matrix(g, j)) rep.issues.push_back({"complex structure", "not layer-preserving"});
      for (int a = 0; a < n && rep.ok(); ++a)
        for (int b = 0; b < n; ++b) {
          Vec lhs = g.bracket(j.apply(unit_vec(n, a, d)), unit_vec(n, b, d));
          Vec rhs = j.apply(g.bracket_basis(a, b));
          if (lhs != rhs) {
            rep.issues.push_back({"complex structure", "bracket not J-bilinear at " + pair_str(a, b)});
            a = n;
            break;
          }
        }
    }
  }
  return rep;
}

int ad_rank(const GradedAlgebra& g, const Vec& x) { return rref(g.ad_matrix(x)).rank; }

int ad_rank_complex(const GradedAlgebra& g, const Vec& x) {
  if (!g.complex_structure()) throw Error("complex rank needs a complex structure");
  int r = ad_rank(g, x);
  if (r % 2 != 0) throw Error("J-invariant image has odd dimension");
  return r / 2;
}

int rank_I(const GradedAlgebra& g, const Vec& x, const std::vector<int>& layers, bool over_c) {
  std::vector<Vec> cols;
  for (int l : layers) {
    if (l < 1 || l > g.step()) throw Error("rank_I: bad layer");
    for (int q = 0; q < g.layer_dim(l); ++q)
      cols.push_back(g.bracket(x, unit_vec(g.dim(), g.layer_offset(l) + q, g.field_tag())));
  }
  int r = rref(Matrix::from_rows(cols, g.dim(), g.field_tag())).rank;
  if (!over_c) return r;
  if (!g.complex_structure()) throw Error("rank_I over C needs a complex structure");
  if (r % 2 != 0) throw Error("J-invariant image has odd dimension");
  return r / 2;
}

int max_rank_I_lower_bound(const GradedAlgebra& g, const std::vector<int>& layers, bool over_c,
                           int samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5);
  int best = 0;
  for (int q = 0; q < g.layer_dim(1); ++q)
    best = std::max(best, rank_I(g, unit_vec(g.dim(), g.layer_offset(1) + q, g.field_tag()), layers, over_c));
  for (int t = 0; t < samples; ++t) {
    Vec x = zero_vec(g.dim(), g.field_tag());
    for (int q = 0; q < g.layer_dim(1); ++q)
      x[static_cast<size_t>(g.layer_offset(1) + q)] = FieldElement::from_int(coeff(rng), g.field_tag());
    best = std::max(best, rank_I(g, x, layers, over_c));
  }
  return best;
}

Subspace center(const GradedAlgebra& g) {
  const int n = g.dim();
  // X central iff for every j, k the coefficient of e_k in [X, e_j] vanishes
  std::vector<Vec> rows;
  for (int j = 0; j < n; ++j) {
    Matrix cols(n, n, g.field_tag());
    for (int i = 0; i < n; ++i) {
      Vec br = g.bracket_basis(i, j);
      for (int k = 0; k < n; ++k) cols.at(k, i) = br[static_cast<size_t>(k)];
    }
    for (int k = 0; k < n; ++k) {
      Vec row = cols.row(k);
      if (!is_zero_vec(row)) rows.push_back(row);
    }
  }
  if (rows.empty()) return Subspace::full(n, g.field_tag());
  return nullspace(Matrix::from_rows(rows, n, g.field_tag()));
}

Subspace centralizer(const GradedAlgebra& g, const Vec& x) { return nullspace(g.ad_matrix(x)); }

GradedAlgebra direct_sum(const std::vector<GradedAlgebra>& parts) {
  if (parts.empty()) throw Error("direct sum of nothing");
  const int d = parts.front().field_tag();
  int steps = 0;
  for (const auto& p : parts) {
    if (p.field_tag() != d) throw Error("direct sum: field tag mismatch");
    steps = std::max(steps, p.step());
  }
  std::vector<int> dims(static_cast<size_t>(steps), 0);
  for (const auto& p : parts)
    for (int l = 1; l <= p.step(); ++l) dims[static_cast<size_t>(l - 1)] += p.layer_dim(l);
  std::vector<int> offsets(static_cast<size_t>(steps), 0);
  for (int l = 1; l < steps; ++l)
    offsets[static_cast<size_t>(l)] = offsets[static_cast<size_t>(l - 1)] + dims[static_cast<size_t>(l - 1)];
  // global index of local index p of part t
  std::vector<std::vector<int>> remap;
  std::vector<int> used(static_cast<size_t>(steps), 0);
  for (const auto& p : parts) {
    std::vector<int> m(static_cast<size_t>(p.dim()));
    for (int idx = 0; idx < p.dim(); ++idx) {
      int l = p.layer_of(idx);
      int q = idx - p.layer_offset(l);
      m[static_cast<size_t>(idx)] = offsets[static_cast<size_t>(l - 1)] + used[static_cast<size_t>(l - 1)] + q;
    }
    remap.push_back(std::move(m));
    for (int l = 1; l <= p.step(); ++l) used[static_cast<size_t>(l - 1)] += p.layer_dim(l);
  }
  std::vector<StructureTriple> triples;
  for (size_t t = 0; t < parts.size(); ++t)
    for (const auto& tr : parts[t].canonical_triples())
      triples.push_back({remap[t][static_cast<size_t>(tr.i)], remap[t][static_cast<size_t>(tr.j)],
                         remap[t][static_cast<size_t>(tr.k)], tr.c});
  GradedAlgebra sum(dims, triples, d);
  bool all_j = std::all_of(parts.begin(), parts.end(),
                           [](const GradedAlgebra& p) { return p.complex_structure().has_value(); });
  if (all_j) {
    Matrix j(sum.dim(), sum.dim(), d);
    for (size_t t = 0; t < parts.size(); ++t) {
      const Matrix& jp = *parts[t].complex_structure();
      for (int a = 0; a < parts[t].dim(); ++a)
        for (int b = 0; b < parts[t].dim(); ++b)
          j.at(remap[t][static_cast<size_t>(a)], remap[t][static_cast<size_t>(b)]) = jp.at(a, b);
    }
    sum.set_complex_structure(std::move(j));
  }
  return sum;
}

GradedMap::GradedMap(std::vector<Matrix> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw Error("graded map needs layers");
}

GradedMap GradedMap::identity(const GradedAlgebra& g) {
  std::vector<Matrix> ls;
  for (int l = 1; l <= g.step(); ++l) ls.push_back(Matrix::identity(g.layer_dim(l), g.field_tag()));
  return GradedMap(std::move(ls));
}

GradedMap GradedMap::dilation(const GradedAlgebra& g, const FieldElement& r) {
  std::vector<Matrix> ls;
  FieldElement p = FieldElement::one(g.field_tag());
  for (int l = 1; l <= g.step(); ++l) {
    p *= r;
    ls.push_back(Matrix::identity(g.layer_dim(l), g.field_tag()).scaled(p));
  }
  return GradedMap(std::move(ls));
}

int GradedMap::domain_dim() const {
  int s = 0;
  for (const auto& m : layers_) s += m.cols();
  return s;
}

int GradedMap::codomain_dim() const {
  int s = 0;
  for (const auto& m : layers_) s += m.rows();
  return s;
}

Vec GradedMap::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != domain_dim()) throw Error("graded map apply: dimension mismatch");
  Vec r;
  r.reserve(static_cast<size_t>(codomain_dim()));
  size_t off = 0;
  for (const auto& m : layers_) {
    Vec part(x.begin() + static_cast<long>(off), x.begin() + static_cast<long>(off) + m.cols());
    Vec out = m.apply(part);
    r.insert(r.end(), out.begin(), out.end());
    off += static_cast<size_t>(m.cols());
  }
  return r;
}

Matrix GradedMap::full_matrix() const {
  Matrix f(codomain_dim(), domain_dim(), field_tag());
  int ro = 0, co = 0;
  for (const auto& m : layers_) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) f.at(ro + i, co + j) = m.at(i, j);
    ro += m.rows();
    co += m.cols();
  }
  return f;
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
  if (layer_count() != inner.layer_count()) throw Error("compose: layer count mismatch");
  std::vector<Matrix> ls;
  for (int l = 1; l <= layer_count(); ++l) ls.push_back(layer(l) * inner.layer(l));
  return GradedMap(std::move(ls));
}

std::optional<GradedMap> GradedMap::inverted() const {
  std::vector<Matrix> ls;
  for (const auto& m : layers_) {
    auto inv = inverse(m);
    if (!inv) return std::nullopt;
    ls.push_back(*inv);
  }
  return GradedMap(std::move(ls));
}

FieldElement GradedMap::det() const {
  FieldElement p = FieldElement::one(field_tag());
  for (const auto& m : layers_) p *= determinant(m);
  return p;
}

QuotientResult quotient(const GradedAlgebra& g, const Subspace& k) {
  const int n = g.dim(), d = g.field_tag();
  if (k.ambient_dim() != n) throw Error("quotient: K ambient mismatch");
  if (k.field_tag() != d) throw Error("quotient: K field tag mismatch");
  int layer = -1;
  for (int r = 0; r < k.dim(); ++r) {
    Vec v = k.basis_vector(r);
    for (int idx = 0; idx < n; ++idx) {
      if (v[static_cast<size_t>(idx)].is_zero()) continue;
      int l = g.layer_of(idx);
      if (layer < 0) layer = l;
      if (l != layer) throw Error("quotient: K not contained in a single layer");
    }
  }
  if (k.dim() == 0) layer = g.step();  // trivial K: nothing removed
  for (int r = 0; r < k.dim(); ++r)
    for (int i = 0; i < n; ++i)
      if (!k.contains(g.bracket(unit_vec(n, i, d), k.basis_vector(r))))
        throw Error("quotient: K is not an ideal (witness basis index " + std::to_string(i) + ")");

  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  std::vector<int> pivot_cols;
  for (int r = 0; r < k.dim(); ++r) {
    int p = -1;
    for (int j = 0; j < n; ++j)
      if (!k.basis().at(r, j).is_zero()) {
        p = j;
        break;
      }
    is_pivot[static_cast<size_t>(p)] = true;
    pivot_cols.push_back(p);
  }
  std::vector<int> kept;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) kept.push_back(j);

  std::vector<int> new_dims;
  for (int l = 1; l <= g.step(); ++l)
    new_dims.push_back(l == layer ? g.layer_dim(l) - k.dim() : g.layer_dim(l));
  while (!new_dims.empty() && new_dims.back() == 0) new_dims.pop_back();
  if (new_dims.empty()) throw Error("quotient collapses the whole algebra");

  // position of an ambient kept index in the quotient coordinates
  std::vector<int> pos(static_cast<size_t>(n), -1);
  for (size_t q = 0; q < kept.size(); ++q) pos[static_cast<size_t>(kept[q])] = static_cast<int>(q);

  int nq = static_cast<int>(kept.size());
  Matrix proj(nq, n, d);
  for (int j = 0; j < n; ++j) {
    if (!is_pivot[static_cast<size_t>(j)]) {
      proj.at(pos[static_cast<size_t>(j)], j) = FieldElement::one(d);
    } else {
      // e_j + sum_c B[r][c] e_c lies in K, so pi(e_j) = -sum B[r][c] pi(e_c);
      // in reduced echelon form every other support column of row r is kept
      int r = 0;
      while (pivot_cols[static_cast<size_t>(r)] != j) ++r;
      for (int c = 0; c < n; ++c) {
        if (c == j || k.basis().at(r, c).is_zero()) continue;
        proj.at(pos[static_cast<size_t>(c)], j) = -k.basis().at(r, c);
      }
    }
  }

  std::vector<StructureTriple> triples;
  for (size_t a = 0; a < kept.size(); ++a)
    for (size_t b = a + 1; b < kept.size(); ++b) {
      Vec w = proj.apply(g.bracket_basis(kept[a], kept[b]));
      for (int kk = 0; kk < nq; ++kk)
        if (!w[static_cast<size_t>(kk)].is_zero())
          triples.push_back({static_cast<int>(a), static_cast<int>(b), kk, w[static_cast<size_t>(kk)]});
    }
  GradedAlgebra q(new_dims, triples, d);

  // projection as per-layer blocks
  std::vector<Matrix> plays;
  for (int l = 1; l <= static_cast<int>(new_dims.size()); ++l) {
    Matrix blk(q.layer_dim(l), g.layer_dim(l), d);
    for (int i = 0; i < q.layer_dim(l); ++i)
      for (int j = 0; j < g.layer_dim(l); ++j)
        blk.at(i, j) = proj.at(q.layer_offset(l) + i, g.layer_offset(l) + j);
    plays.push_back(std::move(blk));
  }
  GradedMap pmap(std::move(plays));

  if (g.complex_structure()) {
    const Matrix& j = *g.complex_structure();
    if (k.mapped(j) == k) {
      // J descends through the section on kept coordinates
      Matrix jq(nq, nq, d);
      for (size_t a = 0; a < kept.size(); ++a) {
        Vec img = proj.apply(j.apply(unit_vec(n, kept[a], d)));
        for (int i = 0; i < nq; ++i) jq.at(i, static_cast<int>(a)) = img[static_cast<size_t>(i)];
      }
      q.set_complex_structure(std::move(jq));
    }
  }

  ValidationReport rep = validate(q);
  if (!rep.ok()) throw Error("quotient produced an invalid algebra: " + rep.str());
  return QuotientResult{std::move(q), std::move(pmap), std::move(kept)};
}

GradedAlgebra complexify(const GradedAlgebra& g) {
  const int d = g.field_tag();
  std::vector<int> dims;
  for (int l = 1; l <= g.step(); ++l) dims.push_back(2 * g.layer_dim(l));
  // real / imaginary coordinate of a base index
  auto re = [&](int idx) {
    int l = g.layer_of(idx);
    return 2 * g.layer_offset(l) + (idx - g.layer_offset(l));
  };
  auto im = [&](int idx) {
    int l = g.layer_of(idx);
    return 2 * g.layer_offset(l) + g.layer_dim(l) + (idx - g.layer_offset(l));
  };
  std::vector<StructureTriple> triples;
  for (const auto& t : g.canonical_triples()) {
    triples.push_back({re(t.i), re(t.j), re(t.k), t.c});
    triples.push_back({im(t.i), im(t.j), re(t.k), -t.c});
    triples.push_back({re(t.i), im(t.j), im(t.k), t.c});
    triples.push_back({im(t.i), re(t.j), im(t.k), t.c});
  }
  GradedAlgebra gc(dims, triples, d);
  Matrix j(gc.dim(), gc.dim(), d);
  for (int idx = 0; idx < g.dim(); ++idx) {
    j.at(im(idx), re(idx)) = FieldElement::one(d);
    j.at(re(idx), im(idx)) = -FieldElement::one(d);
  }
  gc.set_complex_structure(std::move(j));
  if (g.complex_structure()) {
    const Matrix& jb = *g.complex_structure();
    Matrix inh(gc.dim(), gc.dim(), d);
    for (int a = 0; a < g.dim(); ++a)
      for (int b = 0; b < g.dim(); ++b) {
        if (jb.at(a, b).is_zero()) continue;
        inh.at(re(a), re(b)) = jb.at(a, b);
        inh.at(im(a), im(b)) = jb.at(a, b);
      }
    gc.set_inherited_structure(std::move(inh));
  }
  gc.set_base_layer_dims(g.layer_dims());
  return gc;
}

Matrix conjugation_matrix(const GradedAlgebra& gc) {
  if (!gc.base_layer_dims()) throw Error("conjugation needs a complexification");
  const auto& base = *gc.base_layer_dims();
  Matrix c(gc.dim(), gc.dim(), gc.field_tag());
  int off = 0;
  for (int bl : base) {
    for (int q = 0; q < bl; ++q) c.at(off + q, off + q) = FieldElement::one(gc.field_tag());
    for (int q = 0; q < bl; ++q) c.at(off + bl + q, off + bl + q) = -FieldElement::one(gc.field_tag());
    off += 2 * bl;
  }
  return c;
}

EigenspaceSplit jc_eigenspace_split(const GradedAlgebra& gc) {
  if (!gc.complex_structure() || !gc.inherited_structure())
    throw Error("eigenspace split needs both the complexification i and an inherited J");
  const Matrix& ji = *gc.complex_structure();
  const Matrix& jc = *gc.inherited_structure();
  Subspace plus = nullspace(jc - ji);
  Subspace minus = nullspace(jc + ji);
  if (plus.dim() + minus.dim() != gc.dim()) throw Error("eigenspace split is not a direct sum");
  auto check_subalgebra = [&](const Subspace& s) {
    for (int a = 0; a < s.dim(); ++a)
      for (int b = a + 1; b < s.dim(); ++b)
        if (!s.contains(gc.bracket(s.basis_vector(a), s.basis_vector(b)))) return false;
    return true;
  };
  if (!check_subalgebra(plus) || !check_subalgebra(minus))
    throw Error("eigenspace is not a subalgebra");
  for (int a = 0; a < plus.dim(); ++a)
    for (int b = 0; b < minus.dim(); ++b)
      if (!is_zero_vec(gc.bracket(plus.basis_vector(a), minus.basis_vector(b))))
        throw Error("eigenspaces do not commute");
  if (!(plus.mapped(conjugation_matrix(gc)) == minus))
    throw Error("conjugation does not swap the eigenspaces");
  return EigenspaceSplit{std::move(plus), std::move(minus)};
}

static void require_step2(const GradedAlgebra& g) {
  if (g.step() > 2) throw Error("BCH group law supported only for step <= 2");
}

Vec bch_multiply(const GradedAlgebra& g, const Vec& a, const Vec& b) {
  require_step2(g);
  FieldElement half(Rational(1, 2), 0, 0);
  return add(add(a, b), scale(half.embedded_in(g.field_tag()), g.bracket(a, b)));
}

Vec bch_defect(const GradedAlgebra& g, const Vec& a, const Vec& b) {
  require_step2(g);
  FieldElement half(Rational(1, 2), 0, 0);
  return scale(half.embedded_in(g.field_tag()), g.bracket(a, b));
}

Vec bch_conjugate(const GradedAlgebra& g, const Vec& a, const Vec& b) {
  require_step2(g);
  bool hypothesis = true;
  for (int l = 2; l <= g.step(); ++l)
    for (int q = 0; q < g.layer_dim(l); ++q)
      if (!is_zero_vec(g.bracket(a, unit_vec(g.dim(), g.layer_offset(l) + q, g.field_tag()))))
        hypothesis = false;
  Vec neg = scale(-FieldElement::one(g.field_tag()), a);
  Vec result = bch_multiply(g, bch_multiply(g, neg, b), a);
  if (hypothesis) {
    Vec expect = sub(b, g.bracket(g.layer_component(a, 1), g.layer_component(b, 1)));
    if (result != expect) throw Error("BCH conjugation identity failed under its hypothesis");
  }
  return result;
}

bool is_graded_matrix(const GradedAlgebra& g, const Matrix& m) {
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      if (!m.at(i, j).is_zero() && g.layer_of(i) != g.layer_of(j)) return false;
  return true;
}

bool is_bracket_homomorphism(const GradedAlgebra& dom, const GradedAlgebra& cod, const GradedMap& phi,
                             std::string* witness) {
  for (int i = 0; i < dom.dim(); ++i)
    for (int j = i + 1; j < dom.dim(); ++j) {
      Vec lhs = phi.apply(dom.bracket_basis(i, j));
      Vec rhs = cod.bracket(phi.apply(unit_vec(dom.dim(), i, dom.field_tag())),
                            phi.apply(unit_vec(dom.dim(), j, dom.field_tag())));
      if (lhs != rhs) {
        if (witness) *witness = pair_str(i, j);
        return false;
      }
    }
  return true;
}

bool is_graded_automorphism(const GradedAlgebra& g, const GradedMap& phi, std::string* witness) {
  if (phi.domain_dim() != g.dim() || phi.codomain_dim() != g.dim()) {
    if (witness) *witness = "shape";
    return false;
  }
  if (phi.det().is_zero()) {
    if (witness) *witness = "singular";
    return false;
  }
  return is_bracket_homomorphism(g, g, phi, witness);
}

GradedAlgebra change_basis(const GradedAlgebra& g, const GradedMap& phi) {
  if (phi.domain_dim() != g.dim() || phi.codomain_dim() != g.dim())
    throw Error("change of basis must be square");
  auto inv = phi.inverted();
  if (!inv) throw Error("change of basis must be invertible");
  const int n = g.dim(), d = g.field_tag();
  std::vector<StructureTriple> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec br = inv->apply(g.bracket(phi.apply(unit_vec(n, i, d)), phi.apply(unit_vec(n, j, d))));
      for (int k = 0; k < n; ++k)
        if (!br[static_cast<size_t>(k)].is_zero()) triples.push_back({i, j, k, br[static_cast<size_t>(k)]});
    }
  GradedAlgebra out(g.layer_dims(), triples, d);
  if (g.complex_structure())
    out.set_complex_structure(inv->full_matrix() * (*g.complex_structure()) * phi.full_matrix());
  return out;
}

std::optional<Matrix> induced_second_layer(const GradedAlgebra& g, const Matrix& a1, std::string* witness) {
  if (g.step() != 2) throw Error("second-layer induction needs a step-2 algebra");
  const int d = g.field_tag();
  const int n1 = g.layer_dim(1), n2 = g.layer_dim(2), off2 = g.layer_offset(2);
  if (a1.rows() != n1 || a1.cols() != n1) throw Error("first-layer matrix has the wrong shape");
  auto lift1 = [&](const Vec& v1) {
    Vec full = zero_vec(g.dim(), d);
    for (int q = 0; q < n1; ++q) full[static_cast<size_t>(q)] = v1[static_cast<size_t>(q)];
    return full;
  };
  std::vector<Vec> sources, targets;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n1; ++i)
    for (int j = i + 1; j < n1; ++j) {
      Vec br = g.bracket_basis(i, j);
      Vec tg = g.bracket(lift1(a1.col(i)), lift1(a1.col(j)));
      Vec s(static_cast<size_t>(n2), FieldElement::zero(d)), t = s;
      for (int q = 0; q < n2; ++q) {
        s[static_cast<size_t>(q)] = br[static_cast<size_t>(off2 + q)];
        t[static_cast<size_t>(q)] = tg[static_cast<size_t>(off2 + q)];
      }
      sources.push_back(std::move(s));
      targets.push_back(std::move(t));
      pairs.emplace_back(i, j);
    }
  // solve M * source = target for all pairs; sources span V2 when stratified
  Matrix st = Matrix::from_rows(sources, n2, d);          // P x n2
  Matrix tt = Matrix::from_rows(targets, n2, d);          // P x n2
  Matrix m(n2, n2, d);
  for (int col = 0; col < n2; ++col) {
    auto x = solve(st, tt.col(col));                       // st * m_row(col)^T? careful below
    if (!x) {
      if (witness) *witness = "inconsistent second layer";
      return std::nullopt;
    }
    for (int q = 0; q < n2; ++q) m.at(col, q) = (*x)[static_cast<size_t>(q)];
  }
  // verify every pair exactly and attribute a witness on failure
  for (size_t p = 0; p < sources.size(); ++p) {
    if (m.apply(sources[p]) != targets[p]) {
      if (witness) *witness = pair_str(pairs[p].first, pairs[p].second);
      return std::nullopt;
    }
  }
  return m;
}

}  // namespace carnot
