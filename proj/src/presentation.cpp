#include "carnot/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace carnot {

GradedAlgebra heisenberg(int m, int d) {
  if (m < 1) throw Error("heisenberg index must be >= 1");
  std::vector<StructureTriple> triples;
  for (int l = 0; l < m; ++l) triples.push_back({2 * l, 2 * l + 1, 2 * m, -FieldElement::one(d)});
  return GradedAlgebra({2 * m, 1}, triples, d);
}

GradedAlgebra complex_heisenberg(int m, int d) { return complexify(heisenberg(m, d)); }

int BuiltQuotient::first_layer_per_factor() const {
  return (pres.F == FactorField::Real ? 2 : 4) * pres.m;
}

int BuiltQuotient::first_index(int factor, int q) const {
  return factor * first_layer_per_factor() + q;
}

int BuiltQuotient::second_index(int factor, int q) const {
  return ambient.layer_offset(2) + factor * pres.factor_block_size() + q;
}

BuiltQuotient build(const Presentation& p) {
  if (p.n < 1) throw Error("presentation needs at least one factor");
  if (p.K.ambient_dim() != p.second_layer_dim())
    throw Error("K must live in the joint second layer (expected ambient dim " +
                std::to_string(p.second_layer_dim()) + ")");
  if (p.K.field_tag() != p.d) throw Error("K field tag mismatch");
  GradedAlgebra factor = p.F == FactorField::Real ? heisenberg(p.m, p.d) : complex_heisenberg(p.m, p.d);
  GradedAlgebra ambient = direct_sum(std::vector<GradedAlgebra>(static_cast<size_t>(p.n), factor));
  const int off2 = ambient.layer_offset(2);
  std::vector<Vec> rows;
  for (int r = 0; r < p.K.dim(); ++r) {
    Vec full = zero_vec(ambient.dim(), p.d);
    for (int j = 0; j < p.K.ambient_dim(); ++j) full[static_cast<size_t>(off2 + j)] = p.K.basis().at(r, j);
    rows.push_back(std::move(full));
  }
  Subspace k_full = Subspace::span(rows, ambient.dim(), p.d);
  QuotientResult q = quotient(ambient, k_full);
  return BuiltQuotient{p, std::move(ambient), std::move(q.algebra), std::move(q.projection),
                       std::move(q.kept), std::move(k_full)};
}

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string AxiomReport::str() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.pass ? "pass" : "FAIL") << "  axiom " << c.axiom
       << (c.witness.empty() ? "" : "  [" + c.witness + "]") << "\n";
  return os.str();
}

namespace {

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << ")";
  return os.str();
}

Subspace factor_block_span(const Presentation& p, int factor) {
  std::vector<Vec> rows;
  for (int q = 0; q < p.factor_block_size(); ++q)
    rows.push_back(unit_vec(p.second_layer_dim(), factor * p.factor_block_size() + q, p.d));
  return Subspace::span(rows, p.second_layer_dim(), p.d);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

Partition orbits_of(UnionFind& uf, int n) {
  std::map<int, std::vector<int>> comp;
  for (int i = 0; i < n; ++i) comp[uf.find(i)].push_back(i);
  Partition part;
  for (auto& [root, blk] : comp) part.blocks.push_back(blk);
  std::sort(part.blocks.begin(), part.blocks.end());
  return part;
}

}  // namespace

std::vector<Perm> all_permutations(int n) {
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::optional<DiagonalWitness> stabilizer_second_layer_test(const Presentation& p, const Perm& sigma,
                                                            StabVariant variant) {
  auto attempt = [&](ScalarVariant scalars) -> std::optional<DiagonalWitness> {
    const int bs = p.factor_block_size();
    const int unknowns = p.n * bs;  // d_i, or (a_i, b_i) per factor
    const int d = p.d;
    Perm inv(static_cast<size_t>(p.n));
    for (int j = 0; j < p.n; ++j) inv[static_cast<size_t>(sigma[static_cast<size_t>(j)])] = j;
    // v(D) = D P_sigma kappa as linear expressions in the unknowns
    auto image_rows = [&](const Vec& kappa) {
      // row t of the result: coefficient of unknown u in coordinate t
      Matrix coeffs(p.second_layer_dim(), unknowns, d);
      for (int i = 0; i < p.n; ++i) {
        int src = inv[static_cast<size_t>(i)];
        if (bs == 1) {
          coeffs.at(i, i) = kappa[static_cast<size_t>(src)];
        } else {
          FieldElement x = kappa[static_cast<size_t>(2 * src)], y = kappa[static_cast<size_t>(2 * src + 1)];
          if (scalars == ScalarVariant::Antilinear) y = -y;
          // (a + bJ)(x, y) = (a x - b y, b x + a y)
          coeffs.at(2 * i, 2 * i) = x;
          coeffs.at(2 * i, 2 * i + 1) = -y;
          coeffs.at(2 * i + 1, 2 * i) = y;
          coeffs.at(2 * i + 1, 2 * i + 1) = x;
        }
      }
      return coeffs;
    };
    std::vector<Vec> rows;
    Vec rhs;
    Matrix ann = annihilator(p.K);
    for (int r = 0; r < p.K.dim(); ++r) {
      Vec kappa = p.K.basis_vector(r);
      Matrix img = image_rows(kappa);
      if (variant == StabVariant::Stabilize) {
        // annihilator rows applied to the image must vanish
        Matrix cond = ann * img;
        for (int i = 0; i < cond.rows(); ++i) {
          rows.push_back(cond.row(i));
          rhs.push_back(FieldElement::zero(d));
        }
      } else {
        for (int t = 0; t < p.second_layer_dim(); ++t) {
          rows.push_back(img.row(t));
          rhs.push_back(kappa[static_cast<size_t>(t)]);
        }
      }
    }
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < p.n; ++i) {
      std::vector<int> blk;
      for (int q = 0; q < bs; ++q) blk.push_back(bs * i + q);
      blocks.push_back(blk);
    }
    if (rows.empty()) {
      // trivial K: any nonzero diagonal works
      Vec ones(static_cast<size_t>(unknowns), FieldElement::zero(d));
      for (int i = 0; i < p.n; ++i) ones[static_cast<size_t>(bs * i)] = FieldElement::one(d);
      return DiagonalWitness{ones, scalars};
    }
    Matrix system = Matrix::from_rows(rows, unknowns, d);
    std::optional<Vec> x0;
    if (variant == StabVariant::Stabilize) {
      x0 = zero_vec(unknowns, d);
    } else {
      x0 = solve(system, rhs);
      if (!x0) return std::nullopt;
    }
    Matrix dirs = nullspace_rows(system);
    auto point = point_with_nonzero_blocks(*x0, dirs, blocks);
    if (!point) return std::nullopt;
    return DiagonalWitness{*point, scalars};
  };
  auto lin = attempt(ScalarVariant::Linear);
  if (lin || p.F == FactorField::Real) return lin;
  return attempt(ScalarVariant::Antilinear);
}

Matrix witness_second_layer_matrix(const Presentation& p, const Perm& sigma, const DiagonalWitness& w) {
  const int bs = p.factor_block_size();
  Matrix m(p.second_layer_dim(), p.second_layer_dim(), p.d);
  for (int j = 0; j < p.n; ++j) {
    int i = sigma[static_cast<size_t>(j)];
    if (bs == 1) {
      m.at(i, j) = w.entries[static_cast<size_t>(i)];
    } else {
      FieldElement a = w.entries[static_cast<size_t>(2 * i)], b = w.entries[static_cast<size_t>(2 * i + 1)];
      // (a + bJ), composed with conjugation for the antilinear variant
      FieldElement s = w.scalars == ScalarVariant::Antilinear ? -FieldElement::one(p.d) : FieldElement::one(p.d);
      m.at(2 * i, 2 * j) = a;
      m.at(2 * i, 2 * j + 1) = -b * s;
      m.at(2 * i + 1, 2 * j) = b;
      m.at(2 * i + 1, 2 * j + 1) = a * s;
    }
  }
  return m;
}

GradedMap realize_factor_map(const BuiltQuotient& b, const Perm& sigma, const DiagonalWitness& w) {
  const Presentation& p = b.pres;
  const int d = p.d;
  Matrix first(b.ambient.layer_dim(1), b.ambient.layer_dim(1), d);
  const int flpf = b.first_layer_per_factor();
  for (int j = 0; j < p.n; ++j) {
    int i = sigma[static_cast<size_t>(j)];
    if (p.F == FactorField::Real) {
      FieldElement dj = w.entries[static_cast<size_t>(i)];
      for (int l = 0; l < p.m; ++l) {
        first.at(i * flpf + 2 * l, j * flpf + 2 * l) = dj;
        first.at(i * flpf + 2 * l + 1, j * flpf + 2 * l + 1) = FieldElement::one(d);
      }
    } else {
      FieldElement a = w.entries[static_cast<size_t>(2 * i)], bb = w.entries[static_cast<size_t>(2 * i + 1)];
      // real coordinates (re 2m | im 2m) per factor; the complex scalar acts
      // on the odd symplectic positions, conjugation negates the imaginary
      // half first
      FieldElement cs = w.scalars == ScalarVariant::Antilinear ? -FieldElement::one(d) : FieldElement::one(d);
      for (int q = 0; q < 2 * p.m; ++q) {
        bool odd_position = (q % 2) == 0;  // 0-based: positions 0,2,... carry the scalar
        int re_src = j * flpf + q, im_src = j * flpf + 2 * p.m + q;
        int re_dst = i * flpf + q, im_dst = i * flpf + 2 * p.m + q;
        if (odd_position) {
          first.at(re_dst, re_src) = a;
          first.at(im_dst, re_src) = bb;
          first.at(re_dst, im_src) = -bb * cs;
          first.at(im_dst, im_src) = a * cs;
        } else {
          first.at(re_dst, re_src) = FieldElement::one(d);
          first.at(im_dst, im_src) = cs;
        }
      }
    }
  }
  Matrix second = witness_second_layer_matrix(p, sigma, w);
  return GradedMap({first, second});
}

AxiomReport verify_axioms(const Presentation& p) {
  AxiomReport rep;
  // (4): K meets every factor's second layer trivially
  {
    bool pass = true;
    std::string witness;
    for (int k = 0; k < p.n && pass; ++k) {
      Subspace meet = subspace_intersect(p.K, factor_block_span(p, k));
      if (meet.dim() > 0) {
        pass = false;
        witness = "factor " + std::to_string(k + 1) + " contains " + vec_str(meet.basis_vector(0));
      }
    }
    rep.checks.push_back({"(4) K meets each factor trivially", pass, witness});
  }
  // (5): distinct second layers modulo K
  if (p.F == FactorField::Real) {
    bool pass = true;
    std::string witness;
    for (int j = 0; j < p.n && pass; ++j)
      for (int k = j + 1; k < p.n && pass; ++k) {
        Subspace sj = subspace_sum(p.K, factor_block_span(p, j));
        Subspace sk = subspace_sum(p.K, factor_block_span(p, k));
        if (sj == sk) {
          pass = false;
          witness = "pair (" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
          Subspace cross = subspace_intersect(
              p.K, subspace_sum(factor_block_span(p, j), factor_block_span(p, k)));
          if (cross.dim() > 0) witness += ", witness " + vec_str(cross.basis_vector(0)) + " in K";
        }
      }
    rep.checks.push_back({"(5) second layers distinct modulo K", pass, witness});
  } else {
    bool pass = true;
    std::string witness;
    // complexify the ambient and split by the inherited structure
    GradedAlgebra factor = complex_heisenberg(p.m, p.d);
    GradedAlgebra ambient = direct_sum(std::vector<GradedAlgebra>(static_cast<size_t>(p.n), factor));
    GradedAlgebra ac = complexify(ambient);
    EigenspaceSplit split = jc_eigenspace_split(ac);
    auto re_of = [&](int idx) {
      int l = ambient.layer_of(idx);
      return 2 * ambient.layer_offset(l) + (idx - ambient.layer_offset(l));
    };
    auto im_of = [&](int idx) {
      int l = ambient.layer_of(idx);
      return 2 * ambient.layer_offset(l) + ambient.layer_dim(l) + (idx - ambient.layer_offset(l));
    };
    const int off2 = ambient.layer_offset(2);
    // complexified K inside the complexified ambient
    std::vector<Vec> krows;
    for (int r = 0; r < p.K.dim(); ++r) {
      Vec kre = zero_vec(ac.dim(), p.d), kim = kre;
      for (int j = 0; j < p.K.ambient_dim(); ++j) {
        kre[static_cast<size_t>(re_of(off2 + j))] = p.K.basis().at(r, j);
        kim[static_cast<size_t>(im_of(off2 + j))] = p.K.basis().at(r, j);
      }
      krows.push_back(std::move(kre));
      krows.push_back(std::move(kim));
    }
    Subspace kc = Subspace::span(krows, ac.dim(), p.d);
    Matrix conj = conjugation_matrix(ac);
    std::vector<Subspace> proj_plus, proj_minus;
    for (int j = 0; j < p.n; ++j) {
      std::vector<Vec> crows;
      for (int q = 0; q < 2; ++q) {
        int idx = off2 + 2 * j + q;
        crows.push_back(unit_vec(ac.dim(), re_of(idx), p.d));
        crows.push_back(unit_vec(ac.dim(), im_of(idx), p.d));
      }
      Subspace cj = Subspace::span(crows, ac.dim(), p.d);
      Subspace aj = subspace_intersect(split.plus, cj);
      Subspace bj = subspace_intersect(split.minus, cj);
      if (aj.dim() != 2 || bj.dim() != 2) {
        pass = false;
        witness = "factor " + std::to_string(j + 1) + " eigenspace dims";
        break;
      }
      if (!(aj.mapped(conj) == bj)) {
        pass = false;
        witness = "factor " + std::to_string(j + 1) + " conjugation pairing";
        break;
      }
      proj_plus.push_back(subspace_sum(aj, kc));
      proj_minus.push_back(subspace_sum(bj, kc));
    }
    if (pass)
      for (int j = 0; j < p.n && pass; ++j) {
        if (proj_plus[static_cast<size_t>(j)] == proj_minus[static_cast<size_t>(j)]) {
          pass = false;
          witness = "factor " + std::to_string(j + 1) + " projections coincide";
        }
        for (int k = j + 1; k < p.n && pass; ++k) {
          bool same_pair = (proj_plus[static_cast<size_t>(j)] == proj_plus[static_cast<size_t>(k)] &&
                            proj_minus[static_cast<size_t>(j)] == proj_minus[static_cast<size_t>(k)]) ||
                           (proj_plus[static_cast<size_t>(j)] == proj_minus[static_cast<size_t>(k)] &&
                            proj_minus[static_cast<size_t>(j)] == proj_plus[static_cast<size_t>(k)]);
          if (same_pair) {
            pass = false;
            witness = "pair (" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
          }
        }
      }
    rep.checks.push_back({"(5) eigenspace projections distinct", pass, witness});
  }
  // (6): realizable permutations act transitively
  {
    if (p.n > 8) throw Error("transitivity check enumerates S_n; n > 8 unsupported");
    bool pass = true;
    std::string witness;
    UnionFind uf(p.n);
    for (const Perm& sigma : all_permutations(p.n)) {
      if (stabilizer_second_layer_test(p, sigma, StabVariant::Stabilize))
        for (int i = 0; i < p.n; ++i) uf.unite(i, sigma[static_cast<size_t>(i)]);
    }
    Partition orbs = orbits_of(uf, p.n);
    if (orbs.blocks.size() != 1) {
      pass = false;
      witness = "orbits " + orbs.str();
    }
    rep.checks.push_back({"(6) realizable permutations transitive", pass, witness});
  }
  return rep;
}

NormalizeResult normalize_dim1(const Presentation& p) {
  if (p.K.dim() != 1) throw Error("normalization applies to one-dimensional K");
  BuiltQuotient b = build(p);
  const int bs = p.factor_block_size();
  Vec mu = p.K.basis_vector(0);
  Vec entries;
  for (int j = 0; j < p.n; ++j) {
    bool zero = true;
    for (int q = 0; q < bs; ++q)
      if (!mu[static_cast<size_t>(bs * j + q)].is_zero()) zero = false;
    if (zero)
      throw Error("K has a zero coefficient on factor " + std::to_string(j + 1) +
                  "; transitivity would fail");
    for (int q = 0; q < bs; ++q) entries.push_back(mu[static_cast<size_t>(bs * j + q)]);
  }
  DiagonalWitness w{entries, ScalarVariant::Linear};
  Perm id(static_cast<size_t>(p.n));
  std::iota(id.begin(), id.end(), 0);
  GradedMap psi = realize_factor_map(b, id, w);
  // diagonal vector: 1 on each factor's leading second-layer coordinate
  Vec diag = zero_vec(p.second_layer_dim(), p.d);
  for (int j = 0; j < p.n; ++j) diag[static_cast<size_t>(bs * j)] = FieldElement::one(p.d);
  Subspace k_diag = Subspace::span({diag}, p.second_layer_dim(), p.d);
  if (!(k_diag.mapped(psi.layer(2)) == p.K))
    throw Error("normalization map does not send the diagonal to K");
  Presentation diagonal = p;
  diagonal.K = k_diag;
  return NormalizeResult{std::move(psi), std::move(diagonal)};
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "{";
  for (size_t b = 0; b < blocks.size(); ++b) {
    os << (b ? "," : "") << "{";
    for (size_t i = 0; i < blocks[b].size(); ++i) os << (i ? "," : "") << blocks[b][i] + 1;
    os << "}";
  }
  os << "}";
  return os.str();
}

Partition components_partition(int n, const std::vector<std::pair<int, int>>& edges) {
  UnionFind uf(n);
  for (auto [a, b] : edges) uf.unite(a, b);
  return orbits_of(uf, n);
}

Partition finest_partition(const Presentation& p) {
  if (p.K.dim() == 0) {
    Partition singletons;
    for (int i = 0; i < p.n; ++i) singletons.blocks.push_back({i});
    return singletons;
  }
  Matrix pk = orthogonal_projection(p.K);
  const int bs = p.factor_block_size();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j) {
      bool coupled = false;
      for (int qi = 0; qi < bs && !coupled; ++qi)
        for (int qj = 0; qj < bs && !coupled; ++qj)
          if (!pk.at(bs * i + qi, bs * j + qj).is_zero()) coupled = true;
      if (coupled) edges.emplace_back(i, j);
    }
  Partition part = components_partition(p.n, edges);
  if (!partition_compatible(p, part)) throw Error("projection pattern produced an incompatible partition");
  return part;
}

bool partition_compatible(const Presentation& p, const Partition& part) {
  const int bs = p.factor_block_size();
  int total = 0;
  for (const auto& blk : part.blocks) {
    std::vector<Vec> rows;
    for (int f : blk)
      for (int q = 0; q < bs; ++q) rows.push_back(unit_vec(p.second_layer_dim(), bs * f + q, p.d));
    total += subspace_intersect(p.K, Subspace::span(rows, p.second_layer_dim(), p.d)).dim();
  }
  return total == p.K.dim();
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> assign(static_cast<size_t>(n), 0);
  auto emit = [&]() {
    int blocks = *std::max_element(assign.begin(), assign.end()) + 1;
    Partition part;
    part.blocks.resize(static_cast<size_t>(blocks));
    for (int i = 0; i < n; ++i) part.blocks[static_cast<size_t>(assign[static_cast<size_t>(i)])].push_back(i);
    std::sort(part.blocks.begin(), part.blocks.end());
    out.push_back(std::move(part));
  };
  // restricted growth strings
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == n) {
      emit();
      return;
    }
    for (int b = 0; b <= maxb + 1 && b <= i; ++b) {
      assign[static_cast<size_t>(i)] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  rec(0, -1);
  return out;
}

std::vector<Presentation> conformal_decompose(const Presentation& p) {
  Partition part = finest_partition(p);
  const int bs = p.factor_block_size();
  std::vector<Presentation> out;
  int total = 0;
  for (const auto& blk : part.blocks) {
    std::vector<Vec> rows;
    for (int f : blk)
      for (int q = 0; q < bs; ++q) rows.push_back(unit_vec(p.second_layer_dim(), bs * f + q, p.d));
    Subspace meet = subspace_intersect(p.K, Subspace::span(rows, p.second_layer_dim(), p.d));
    total += meet.dim();
    // restrict coordinates to the block, in block order
    std::vector<Vec> local;
    for (int r = 0; r < meet.dim(); ++r) {
      Vec v = meet.basis_vector(r);
      Vec w;
      for (int f : blk)
        for (int q = 0; q < bs; ++q) w.push_back(v[static_cast<size_t>(bs * f + q)]);
      local.push_back(std::move(w));
    }
    Presentation sub = p;
    sub.n = static_cast<int>(blk.size());
    sub.K = Subspace::span(local, bs * sub.n, p.d);
    out.push_back(std::move(sub));
  }
  if (total != p.K.dim()) throw Error("block intersections do not exhaust K");
  return out;
}

VerifiedAut aut_verify(const BuiltQuotient& b, const Matrix& a1) {
  std::string witness;
  auto second = induced_second_layer(b.ambient, a1, &witness);
  if (!second) throw Error("bracket not preserved at pair " + witness);
  GradedMap ambient_map({a1, *second});
  if (!is_graded_automorphism(b.ambient, ambient_map, &witness))
    throw Error("not a graded automorphism: " + witness);
  // K stabilization in second-layer coordinates
  if (!(b.pres.K.mapped(*second) == b.pres.K)) {
    std::string w;
    for (int r = 0; r < b.pres.K.dim(); ++r)
      if (!b.pres.K.contains(second->apply(b.pres.K.basis_vector(r)))) {
        w = vec_str(b.pres.K.basis_vector(r));
        break;
      }
    throw Error("K not stabilized; witness " + w);
  }
  // descend: first layer unchanged, second layer through projection + section
  const int d = b.pres.d;
  const int n2q = b.algebra.layer_dim(2), n2a = b.ambient.layer_dim(2);
  Matrix section(n2a, n2q, d);
  int col = 0;
  const int off2 = b.ambient.layer_offset(2);
  for (int idx : b.kept) {
    if (idx < off2) continue;
    section.at(idx - off2, col) = FieldElement::one(d);
    ++col;
  }
  Matrix proj2 = b.projection.layer(2);
  Matrix descended2 = proj2 * (*second) * section;
  GradedMap descended({a1, descended2});
  std::string w2;
  if (!is_graded_automorphism(b.algebra, descended, &w2))
    throw Error("descent is not an automorphism of the quotient: " + w2);
  return VerifiedAut{std::move(ambient_map), std::move(descended), std::move(*second)};
}

Matrix LambdaSP::reconstruct(int d) const {
  const int n = static_cast<int>(sigma.size());
  Matrix m(n, n, d);
  for (int j = 0; j < n; ++j) {
    int i = sigma[static_cast<size_t>(j)];
    m.at(i, j) = lambda * FieldElement::from_int(signs[static_cast<size_t>(i)], d);
  }
  return m;
}

LambdaSP factor_lambda_s_p(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("factorization needs a square matrix");
  const int n = m.rows(), d = m.field_tag();
  Perm sigma(static_cast<size_t>(n), -1);
  std::vector<int> used(static_cast<size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    int hit = -1;
    for (int i = 0; i < n; ++i) {
      if (m.at(i, j).is_zero()) continue;
      if (hit >= 0) throw Error("matrix is not monomial: column " + std::to_string(j) + " has two entries");
      hit = i;
    }
    if (hit < 0) throw Error("matrix is not monomial: column " + std::to_string(j) + " is zero");
    if (used[static_cast<size_t>(hit)]++)
      throw Error("matrix is not monomial: row " + std::to_string(hit) + " has two entries");
    sigma[static_cast<size_t>(j)] = hit;
  }
  FieldElement lambda = m.at(sigma[0], 0).abs();
  std::vector<int> signs(static_cast<size_t>(n), 1);
  for (int j = 0; j < n; ++j) {
    const FieldElement& e = m.at(sigma[static_cast<size_t>(j)], j);
    if (e.abs() != lambda)
      throw Error("entries have unequal moduli; a conformal second-layer action has a single scale");
    signs[static_cast<size_t>(sigma[static_cast<size_t>(j)])] = e.sign();
  }
  LambdaSP out{lambda, signs, sigma};
  if (out.reconstruct(d) != m) throw Error("factorization reconstruction failed");
  return out;
}

HPrimeOrbits hprime_orbits(const Presentation& p) {
  if (p.F != FactorField::Real || p.m != 1)
    throw Error("orbit computation covers real first-Heisenberg factors only");
  if (p.n > 8) throw Error("orbit computation enumerates S_n; n > 8 unsupported");
  HPrimeOrbits out;
  UnionFind uf(p.n);
  for (const Perm& sigma : all_permutations(p.n)) {
    if (stabilizer_second_layer_test(p, sigma, StabVariant::Pointwise)) {
      out.realizable.push_back(sigma);
      for (int i = 0; i < p.n; ++i) uf.unite(i, sigma[static_cast<size_t>(i)]);
    }
  }
  out.orbits = orbits_of(uf, p.n);
  for (const auto& blk : out.orbits.blocks) {
    std::vector<Vec> rows;
    for (int r = 0; r < p.K.dim(); ++r) {
      Vec v = p.K.basis_vector(r);
      Vec w;
      for (int f : blk) w.push_back(v[static_cast<size_t>(f)]);
      rows.push_back(std::move(w));
    }
    out.k_projections.push_back(Subspace::span(rows, static_cast<int>(blk.size()), p.d));
  }
  return out;
}

}  // namespace carnot
