#include "carnot/recognition.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace carnot {

namespace {

// bracket form with values in the (one or two dimensional) second layer
Vec second_layer_value(const GradedAlgebra& g, const Vec& u, const Vec& v) {
  Vec w = g.bracket(u, v);
  const int off2 = g.layer_offset(2), n2 = g.layer_dim(2);
  Vec out;
  for (int q = 0; q < n2; ++q) out.push_back(w[static_cast<size_t>(off2 + q)]);
  return out;
}

Vec embed_first_layer(const GradedAlgebra& g, const Vec& v1) {
  Vec full = zero_vec(g.dim(), g.field_tag());
  for (int q = 0; q < g.layer_dim(1); ++q) full[static_cast<size_t>(q)] = v1[static_cast<size_t>(q)];
  return full;
}

// {X in V1 : [X, V1] inside L}, in full coordinates
Subspace line_solutions(const GradedAlgebra& g, const Subspace& line) {
  const int d = g.field_tag(), n1 = g.layer_dim(1);
  Matrix ann = annihilator(line);
  std::vector<Vec> rows;
  for (int b = 0; b < n1; ++b) {
    // condition rows: ann * [X, e_b] = 0, X = sum x_a e_a over the first layer
    Matrix cols(g.dim(), n1, d);
    for (int a = 0; a < n1; ++a) {
      Vec br = g.bracket_basis(a, b);
      for (int i = 0; i < g.dim(); ++i) cols.at(i, a) = br[static_cast<size_t>(i)];
    }
    Matrix cond = ann * cols;
    for (int r = 0; r < cond.rows(); ++r) {
      Vec row = cond.row(r);
      if (!is_zero_vec(row)) rows.push_back(row);
    }
  }
  Subspace sol = rows.empty() ? Subspace::full(n1, d) : nullspace(Matrix::from_rows(rows, n1, d));
  std::vector<Vec> full;
  for (int r = 0; r < sol.dim(); ++r) full.push_back(embed_first_layer(g, sol.basis_vector(r)));
  return Subspace::span(full, g.dim(), d);
}

Subspace bracket_span(const GradedAlgebra& g, const Subspace& w) {
  std::vector<Vec> gens;
  for (int a = 0; a < w.dim(); ++a)
    for (int b = a + 1; b < w.dim(); ++b) gens.push_back(g.bracket(w.basis_vector(a), w.basis_vector(b)));
  return Subspace::span(gens, g.dim(), g.field_tag());
}

Subspace image_line(const GradedAlgebra& g, const Vec& x) {
  Matrix ad = g.ad_matrix(x);
  std::vector<Vec> cols;
  for (int j = 0; j < g.dim(); ++j) cols.push_back(ad.col(j));
  return Subspace::span(cols, g.dim(), g.field_tag());
}

struct SubAlgebra {
  GradedAlgebra algebra;
  // rows of the stacked (first-layer, then second-layer) basis in g coords
  Matrix basis;
};

// structure constants of the subalgebra spanned by a first-layer block and a
// second-layer block, expressed on their own basis
std::optional<SubAlgebra> restrict_summand(const GradedAlgebra& g, const Subspace& first,
                                           const Subspace& line, const Matrix* jmat) {
  const int d = g.field_tag();
  const int k = first.dim(), l = line.dim();
  Matrix basis = vstack(first.basis(), line.basis());
  Matrix bt = basis.transpose();
  std::vector<StructureTriple> triples;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      Vec br = g.bracket(first.basis_vector(a), first.basis_vector(b));
      auto coords = solve(bt, br);
      if (!coords) return std::nullopt;
      for (int q = 0; q < k + l; ++q)
        if (!(*coords)[static_cast<size_t>(q)].is_zero())
          triples.push_back({a, b, q, (*coords)[static_cast<size_t>(q)]});
    }
  GradedAlgebra sub({k, l}, triples, d);
  if (jmat) {
    Matrix jsub(k + l, k + l, d);
    for (int q = 0; q < k + l; ++q) {
      Vec img = jmat->apply(basis.row(q));
      auto coords = solve(bt, img);
      if (!coords) return std::nullopt;
      for (int i = 0; i < k + l; ++i) jsub.at(i, q) = (*coords)[static_cast<size_t>(i)];
    }
    sub.set_complex_structure(std::move(jsub));
  }
  return SubAlgebra{std::move(sub), std::move(basis)};
}

}  // namespace

Matrix darboux_basis(const GradedAlgebra& g) {
  if (g.step() != 2 || g.layer_dim(2) != 1)
    throw Error("symplectic reduction needs a step-2 algebra with one-dimensional center");
  const int d = g.field_tag(), n1 = g.layer_dim(1);
  Subspace degenerate = subspace_intersect(center(g), g.layer_subspace(1));
  if (degenerate.dim() > 0) throw Error("center meets the first layer: the bracket form is degenerate");
  if (n1 % 2 != 0) throw Error("odd first-layer dimension contradicts nondegeneracy");
  auto bform = [&](const Vec& u, const Vec& v) { return second_layer_value(g, u, v)[0]; };
  std::vector<Vec> remaining;
  for (int a = 0; a < n1; ++a) remaining.push_back(unit_vec(g.dim(), a, d));
  std::vector<Vec> columns;
  while (!remaining.empty()) {
    Vec u = remaining.front();
    size_t vi = 0;
    for (size_t t = 1; t < remaining.size(); ++t)
      if (!bform(u, remaining[t]).is_zero()) {
        vi = t;
        break;
      }
    if (vi == 0) throw Error("degenerate symplectic form despite trivial radical");
    Vec v = scale((-bform(u, remaining[vi])).inverse(), remaining[vi]);
    std::vector<Vec> next;
    for (size_t t = 1; t < remaining.size(); ++t) {
      if (t == vi) continue;
      const Vec& w = remaining[t];
      Vec adj = add(w, sub(scale(bform(u, w), v), scale(bform(v, w), u)));
      next.push_back(std::move(adj));
    }
    columns.push_back(u);
    columns.push_back(v);
    remaining = std::move(next);
  }
  Matrix a1(n1, n1, d);
  for (int c = 0; c < n1; ++c)
    for (int r = 0; r < n1; ++r) a1.at(r, c) = columns[static_cast<size_t>(c)][static_cast<size_t>(r)];
  // post: standard pairs, everything else orthogonal
  for (int i = 0; i < n1; ++i)
    for (int j = i + 1; j < n1; ++j) {
      FieldElement b = bform(columns[static_cast<size_t>(i)], columns[static_cast<size_t>(j)]);
      bool is_pair = (j == i + 1) && (i % 2 == 0);
      if (is_pair ? b != -FieldElement::one(d) : !b.is_zero())
        throw Error("symplectic reduction postcondition failed");
    }
  return a1;
}

std::optional<int> complex_darboux_index(const GradedAlgebra& g) {
  if (!g.complex_structure()) throw Error("complex reduction needs a complex structure");
  if (g.step() != 2 || g.layer_dim(2) != 2) return std::nullopt;
  const int d = g.field_tag();
  const Matrix& j = *g.complex_structure();
  Vec ell = unit_vec(g.dim(), g.layer_offset(2), d);
  Vec jell = j.apply(ell);
  Matrix lbasis = Matrix::from_rows({ell, jell}, g.dim(), d).transpose();
  // complex value alpha + beta i of the bracket against (ell, J ell)
  auto bform = [&](const Vec& u, const Vec& v) -> std::optional<std::pair<FieldElement, FieldElement>> {
    auto coords = solve(lbasis, g.bracket(u, v));
    if (!coords) return std::nullopt;
    return std::make_pair((*coords)[0], (*coords)[1]);
  };
  Subspace r = g.layer_subspace(1);
  int m = 0;
  while (r.dim() > 0) {
    Vec u = r.basis_vector(0);
    std::optional<Vec> v;
    for (int t = 0; t < r.dim(); ++t) {
      auto b = bform(u, r.basis_vector(t));
      if (!b) return std::nullopt;
      if (!b->first.is_zero() || !b->second.is_zero()) {
        // scale by the complex inverse of -B(u, v)
        FieldElement a = -b->first, bb = -b->second;
        FieldElement nrm = a * a + bb * bb;
        FieldElement ia = a / nrm, ib = -bb / nrm;
        Vec cand = r.basis_vector(t);
        v = add(scale(ia, cand), scale(ib, j.apply(cand)));
        break;
      }
    }
    if (!v) return std::nullopt;
    ++m;
    std::vector<Vec> rows;
    for (const Vec& probe : {u, *v}) {
      Matrix cols(2, g.dim(), d);
      for (int a = 0; a < g.dim(); ++a) {
        auto b = bform(probe, unit_vec(g.dim(), a, d));
        if (!b) return std::nullopt;
        cols.at(0, a) = b->first;
        cols.at(1, a) = b->second;
      }
      rows.push_back(cols.row(0));
      rows.push_back(cols.row(1));
    }
    Subspace next = subspace_intersect(r, nullspace(Matrix::from_rows(rows, g.dim(), d)));
    if (next.dim() >= r.dim()) return std::nullopt;
    r = next;
  }
  if (4 * m != g.layer_dim(1)) return std::nullopt;
  return m;
}

std::vector<Vec> rank_one_sieve(const GradedAlgebra& g, const std::vector<Vec>& witnesses, bool over_c) {
  if (g.step() > 2) throw Error("the rank-one sieve needs a step <= 2 algebra");
  const int d = g.field_tag();
  const Matrix* j = nullptr;
  if (over_c) {
    if (!g.complex_structure()) throw Error("sieve over C needs a complex structure");
    j = &*g.complex_structure();
  }
  std::vector<Vec> found;
  std::set<Subspace> lines;
  auto add_line = [&](const Vec& v) {
    if (is_zero_vec(v)) return;
    std::vector<Vec> gens = {v};
    if (j) gens.push_back(j->apply(v));
    lines.insert(Subspace::span(gens, g.dim(), d));
  };
  if (g.step() == 2) {
    const int n1 = g.layer_dim(1);
    for (int a = 0; a < n1; ++a)
      for (int b = a + 1; b < n1; ++b) add_line(g.bracket_basis(a, b));
  }
  if (over_c && g.inherited_structure()) {
    EigenspaceSplit split = jc_eigenspace_split(g);
    for (const Subspace* part : {&split.plus, &split.minus})
      for (int a = 0; a < part->dim(); ++a)
        for (int b = a + 1; b < part->dim(); ++b)
          add_line(g.bracket(part->basis_vector(a), part->basis_vector(b)));
  }
  Subspace v2 = g.step() == 2 ? g.layer_subspace(2) : Subspace::zero(g.dim(), d);
  for (const Vec& w : witnesses) {
    if (static_cast<int>(w.size()) != g.dim()) throw Error("witness dimension mismatch");
    if (is_zero_vec(w)) continue;
    if (g.step() == 2 && v2.contains(w)) {
      add_line(w);
      continue;
    }
    int rank = over_c ? ad_rank_complex(g, w) : ad_rank(g, w);
    if (rank <= 1) found.push_back(w);
    if (rank == 1)
      for (int b = 0; b < g.dim(); ++b) add_line(g.bracket(w, unit_vec(g.dim(), b, d)));
  }
  const int threshold = over_c ? 4 : 2;
  for (const Subspace& line : lines) {
    Subspace sol = line_solutions(g, line);
    if (sol.dim() < threshold) continue;
    if (!(bracket_span(g, sol) == line)) continue;
    for (int r = 0; r < sol.dim(); ++r) found.push_back(sol.basis_vector(r));
  }
  return found;
}

HeisenbergDecomposition heisenberg_summands(const GradedAlgebra& g, const std::vector<Vec>& witnesses,
                                            bool over_c) {
  HeisenbergDecomposition out;
  if (g.step() > 2) throw Error("summand decomposition needs a step <= 2 algebra");
  Subspace rank0 = subspace_intersect(center(g), g.layer_subspace(1));
  if (rank0.dim() > 0) {
    out.verdict = DecompVerdict::Refuted;
    Vec w = rank0.basis_vector(0);
    std::ostringstream os;
    os << "rank-zero first-layer element found";
    out.detail = os.str();
    out.witnesses.push_back(w);
    return out;
  }
  out.witnesses = rank_one_sieve(g, witnesses, over_c);
  Subspace span = Subspace::span(out.witnesses, g.dim(), g.field_tag());
  if (!(span == g.layer_subspace(1))) {
    out.verdict = DecompVerdict::Inconclusive;
    out.detail = "rank-one elements found span only a " + std::to_string(span.dim()) +
                 "-dimensional part of the first layer";
    return out;
  }
  std::set<Subspace> lines;
  for (const Vec& x : out.witnesses) lines.insert(image_line(g, x));
  const Matrix* jmat = g.complex_structure() ? &*g.complex_structure() : nullptr;
  std::vector<std::pair<Subspace, Subspace>> summands;
  int total = 0;
  std::vector<Vec> stacked;
  for (const Subspace& line : lines) {
    Subspace k = line_solutions(g, line);
    summands.emplace_back(k, line);
    total += k.dim();
    for (int r = 0; r < k.dim(); ++r) stacked.push_back(k.basis_vector(r));
  }
  std::sort(summands.begin(), summands.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (total != g.layer_dim(1) ||
      Subspace::span(stacked, g.dim(), g.field_tag()).dim() != total) {
    out.verdict = DecompVerdict::Inconclusive;
    out.detail = "candidate first layers do not form a direct sum";
    return out;
  }
  for (size_t a = 0; a < summands.size(); ++a)
    for (size_t b = a + 1; b < summands.size(); ++b)
      for (int i = 0; i < summands[a].first.dim(); ++i)
        for (int l = 0; l < summands[b].first.dim(); ++l)
          if (!is_zero_vec(g.bracket(summands[a].first.basis_vector(i), summands[b].first.basis_vector(l)))) {
            out.verdict = DecompVerdict::Inconclusive;
            out.detail = "candidate summands do not commute";
            return out;
          }
  std::vector<int> ms;
  for (const auto& [k, line] : summands) {
    if (!(bracket_span(g, k) == line)) {
      out.verdict = DecompVerdict::Inconclusive;
      out.detail = "a summand does not bracket onto its line";
      return out;
    }
    auto sub = restrict_summand(g, k, line, over_c ? jmat : nullptr);
    if (!sub) {
      out.verdict = DecompVerdict::Inconclusive;
      out.detail = "summand restriction failed";
      return out;
    }
    if (over_c) {
      auto m = complex_darboux_index(sub->algebra);
      if (!m) {
        out.verdict = DecompVerdict::Inconclusive;
        out.detail = "summand is not a complex Heisenberg algebra";
        return out;
      }
      ms.push_back(*m);
    } else {
      try {
        darboux_basis(sub->algebra);
      } catch (const Error&) {
        out.verdict = DecompVerdict::Inconclusive;
        out.detail = "summand is not a Heisenberg algebra";
        return out;
      }
      ms.push_back(k.dim() / 2);
    }
  }
  out.summands = std::move(summands);
  out.verdict = DecompVerdict::Recognized;
  bool equal = std::all_of(ms.begin(), ms.end(), [&](int m) { return m == ms.front(); });
  out.m = equal ? ms.front() : 0;
  return out;
}

std::string TrichotomyVerdict::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Abelian:
      os << "abelian";
      break;
    case Kind::Heisenberg:
      os << "heisenberg(" << (field == FactorField::Real ? "R" : "C") << ", " << m << ")";
      break;
    case Kind::ProductQuotientCandidate:
      os << "product_quotient_candidate(" << (field == FactorField::Real ? "R" : "C") << ", n=" << n
         << ", m=" << m << ")";
      break;
    case Kind::InvariantSubspace:
      os << "invariant_subspace(dim " << (invariant_subspace ? invariant_subspace->dim() : 0) << ")";
      break;
    case Kind::Inconclusive:
      os << "inconclusive";
      break;
  }
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

namespace {

bool commutes_with_higher_layers(const GradedAlgebra& g, const Subspace& w) {
  for (int r = 0; r < w.dim(); ++r)
    for (int l = 2; l <= g.step(); ++l)
      for (int q = 0; q < g.layer_dim(l); ++q)
        if (!is_zero_vec(g.bracket(w.basis_vector(r),
                                   unit_vec(g.dim(), g.layer_offset(l) + q, g.field_tag()))))
          return false;
  return true;
}

TrichotomyVerdict from_decomposition(const GradedAlgebra& g, HeisenbergDecomposition dec, FactorField field) {
  TrichotomyVerdict v;
  if (!dec.recognized()) {
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = dec.detail;
    return v;
  }
  if (dec.m == 0) {
    // summands of unequal size: their minimal-size span is a canonical proper
    // invariant subspace commuting with everything above the first layer
    int best = g.dim() + 1;
    for (const auto& [k, line] : dec.summands) best = std::min(best, k.dim());
    std::vector<Vec> rows;
    for (const auto& [k, line] : dec.summands)
      if (k.dim() == best)
        for (int r = 0; r < k.dim(); ++r) rows.push_back(k.basis_vector(r));
    v.kind = TrichotomyVerdict::Kind::InvariantSubspace;
    v.invariant_subspace = Subspace::span(rows, g.dim(), g.field_tag());
    v.detail = "summands of unequal Heisenberg index";
    return v;
  }
  v.field = field;
  v.m = dec.m;
  v.n = static_cast<int>(dec.summands.size());
  v.summands = std::move(dec.summands);
  v.kind = v.n == 1 ? TrichotomyVerdict::Kind::Heisenberg
                    : TrichotomyVerdict::Kind::ProductQuotientCandidate;
  return v;
}

}  // namespace

TrichotomyVerdict classify_trichotomy(const GradedAlgebra& g, const std::vector<Vec>& witnesses) {
  TrichotomyVerdict v;
  if (g.is_abelian()) {
    v.kind = TrichotomyVerdict::Kind::Abelian;
    return v;
  }
  Subspace rank0 = subspace_intersect(center(g), g.layer_subspace(1));
  if (rank0.dim() > 0) {
    v.kind = TrichotomyVerdict::Kind::InvariantSubspace;
    v.invariant_subspace = rank0;
    v.detail = "rank-zero span";
    return v;
  }
  if (g.step() > 2) {
    std::vector<Vec> low;
    for (const Vec& w : witnesses)
      if (!is_zero_vec(w) && ad_rank(g, w) <= 1) low.push_back(w);
    Subspace w = Subspace::span(low, g.dim(), g.field_tag());
    if (w.dim() > 0 && w.dim() < g.layer_dim(1) && commutes_with_higher_layers(g, w)) {
      v.kind = TrichotomyVerdict::Kind::InvariantSubspace;
      v.invariant_subspace = w;
      v.detail = "witness rank-one span";
      return v;
    }
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = "step exceeds 2 and no spanning rank-one certificate was found";
    return v;
  }
  // real rank-one span
  std::vector<Vec> elems = rank_one_sieve(g, witnesses, false);
  Subspace w = Subspace::span(elems, g.dim(), g.field_tag());
  if (w == g.layer_subspace(1))
    return from_decomposition(g, heisenberg_summands(g, witnesses, false), FactorField::Real);
  if (w.dim() > 0) {
    if (commutes_with_higher_layers(g, w)) {
      v.kind = TrichotomyVerdict::Kind::InvariantSubspace;
      v.invariant_subspace = w;
      v.detail = "real rank-one span";
      return v;
    }
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = "rank-one span fails to commute with higher layers";
    return v;
  }
  // complex route
  if (g.complex_structure()) {
    std::vector<Vec> celems = rank_one_sieve(g, witnesses, true);
    Subspace wc = Subspace::span(celems, g.dim(), g.field_tag());
    if (wc == g.layer_subspace(1))
      return from_decomposition(g, heisenberg_summands(g, witnesses, true), FactorField::Complex);
    if (wc.dim() > 0 && commutes_with_higher_layers(g, wc)) {
      v.kind = TrichotomyVerdict::Kind::InvariantSubspace;
      v.invariant_subspace = wc;
      v.detail = "complex rank-one span";
      return v;
    }
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = "no rank-one elements found over R or C";
    return v;
  }
  // no complex structure given: complexify and look for conjugate pairs
  GradedAlgebra gc = complexify(g);
  std::vector<Vec> celems = rank_one_sieve(gc, {}, true);
  Subspace wc = Subspace::span(celems, gc.dim(), gc.field_tag());
  auto re_part = [&](const Vec& vc) {
    Vec out = zero_vec(g.dim(), g.field_tag());
    for (int idx = 0; idx < g.dim(); ++idx) {
      int l = g.layer_of(idx);
      int re = 2 * g.layer_offset(l) + (idx - g.layer_offset(l));
      out[static_cast<size_t>(idx)] = vc[static_cast<size_t>(re)];
    }
    return out;
  };
  if (!(wc == gc.layer_subspace(1))) {
    std::vector<Vec> reals;
    for (const Vec& z : celems) reals.push_back(re_part(z));
    for (const Vec& z : celems) reals.push_back(re_part(gc.complex_structure()->apply(z)));
    Subspace wr = Subspace::span(reals, g.dim(), g.field_tag());
    if (wr.dim() > 0 && wr.dim() < g.layer_dim(1) && commutes_with_higher_layers(g, wr)) {
      v.kind = TrichotomyVerdict::Kind::InvariantSubspace;
      v.invariant_subspace = wr;
      v.detail = "real span of complex rank-one elements";
      return v;
    }
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = "complexified sieve does not span the first layer";
    return v;
  }
  HeisenbergDecomposition dec = heisenberg_summands(gc, {}, true);
  if (!dec.recognized()) {
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = dec.detail;
    return v;
  }
  // pair complex summands by conjugation, keep one representative per pair
  Matrix conj = conjugation_matrix(gc);
  std::vector<bool> taken(dec.summands.size(), false);
  std::vector<std::pair<Subspace, Subspace>> reps;
  for (size_t a = 0; a < dec.summands.size(); ++a) {
    if (taken[a]) continue;
    Subspace partner = dec.summands[a].first.mapped(conj);
    if (partner == dec.summands[a].first) {
      v.kind = TrichotomyVerdict::Kind::Inconclusive;
      v.detail = "conjugation-invariant complex summand despite empty real rank-one set";
      return v;
    }
    bool found = false;
    for (size_t b = a + 1; b < dec.summands.size(); ++b)
      if (!taken[b] && dec.summands[b].first == partner) {
        taken[a] = taken[b] = true;
        reps.push_back(dec.summands[a]);
        found = true;
        break;
      }
    if (!found) {
      v.kind = TrichotomyVerdict::Kind::Inconclusive;
      v.detail = "conjugation does not pair the complex summands";
      return v;
    }
  }
  // real forms of the representatives
  std::vector<std::pair<Subspace, Subspace>> real_summands;
  int total = 0;
  for (const auto& [kc, lc] : reps) {
    std::vector<Vec> kv, lv;
    for (int r = 0; r < kc.dim(); ++r) kv.push_back(re_part(kc.basis_vector(r)));
    for (int r = 0; r < lc.dim(); ++r) lv.push_back(re_part(lc.basis_vector(r)));
    Subspace kreal = Subspace::span(kv, g.dim(), g.field_tag());
    Subspace lreal = Subspace::span(lv, g.dim(), g.field_tag());
    if (kreal.dim() != kc.dim() || !(bracket_span(g, kreal) == lreal)) {
      v.kind = TrichotomyVerdict::Kind::Inconclusive;
      v.detail = "real parts of a conjugate pair degenerate";
      return v;
    }
    total += kreal.dim();
    real_summands.emplace_back(kreal, lreal);
  }
  if (total != g.layer_dim(1)) {
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = "real summands do not fill the first layer";
    return v;
  }
  std::sort(real_summands.begin(), real_summands.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (dec.m == 0) {
    v.kind = TrichotomyVerdict::Kind::Inconclusive;
    v.detail = "complex summands of unequal index";
    return v;
  }
  v.kind = reps.size() == 1 ? TrichotomyVerdict::Kind::Heisenberg
                            : TrichotomyVerdict::Kind::ProductQuotientCandidate;
  v.field = FactorField::Complex;
  v.n = static_cast<int>(reps.size());
  v.m = dec.m;
  v.summands = std::move(real_summands);
  return v;
}

LinearityVerdict complex_linearity_classify(const GradedAlgebra& g, const GradedMap& phi) {
  if (!g.complex_structure()) throw Error("linearity classification needs a complex structure");
  std::string witness;
  if (!is_graded_automorphism(g, phi, &witness))
    throw Error("map is not a graded automorphism: " + witness);
  const Matrix& j = *g.complex_structure();
  Matrix full = phi.full_matrix();
  Matrix commuted = full * j - j * full;
  Matrix anticommuted = full * j + j * full;
  bool linear = commuted.is_zero(), antilinear = anticommuted.is_zero();
  if (!linear && !antilinear) {
    int wcol = 0;
    for (int c = 0; c < g.dim(); ++c)
      if (!is_zero_vec(commuted.col(c)) && !is_zero_vec(anticommuted.col(c))) {
        wcol = c;
        break;
      }
    throw Error("map neither commutes nor anticommutes with J; witness basis index " + std::to_string(wcol));
  }
  int sign = determinant(phi.layer(2)).sign();
  if (linear && sign <= 0) throw Error("C-linear map with nonpositive second-layer determinant");
  if (antilinear && sign >= 0) throw Error("C-antilinear map with nonnegative second-layer determinant");
  return LinearityVerdict{linear ? Linearity::Linear : Linearity::Antilinear, sign};
}

}  // namespace carnot
