#include "carnot/subspace.hpp"

namespace carnot {

Subspace::Subspace(const Matrix& rows) : basis_(0, rows.cols(), rows.field_tag()) {
  RrefResult r = rref(rows);
  Matrix b(r.rank, rows.cols(), rows.field_tag());
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < rows.cols(); ++j) b.at(i, j) = r.echelon.at(i, j);
  basis_ = std::move(b);
}

Subspace Subspace::span(const std::vector<Vec>& vectors, int ambient, int d) {
  return Subspace(Matrix::from_rows(vectors, ambient, d));
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_dim()) throw Error("contains: ambient mismatch");
  // reduce v against the echelon basis
  Vec w = v;
  for (int i = 0; i < dim(); ++i) {
    int p = -1;
    for (int j = 0; j < ambient_dim(); ++j)
      if (!basis_.at(i, j).is_zero()) {
        p = j;
        break;
      }
    if (p < 0) continue;
    const FieldElement& c = w[static_cast<size_t>(p)];
    if (c.is_zero()) continue;
    FieldElement f = c;
    for (int j = 0; j < ambient_dim(); ++j) w[static_cast<size_t>(j)] -= f * basis_.at(i, j);
  }
  return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim()) throw Error("contains: ambient mismatch");
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

bool operator<(const Subspace& l, const Subspace& r) {
  if (l.ambient_dim() != r.ambient_dim()) return l.ambient_dim() < r.ambient_dim();
  if (l.dim() != r.dim()) return l.dim() < r.dim();
  for (int i = 0; i < l.dim(); ++i)
    for (int j = 0; j < l.ambient_dim(); ++j) {
      const FieldElement &a = l.basis_.at(i, j), &b = r.basis_.at(i, j);
      if (a != b) {
        if (a.rat_part() != b.rat_part()) return a.rat_part() < b.rat_part();
        return a.irr_part() < b.irr_part();
      }
    }
  return false;
}

Subspace Subspace::mapped(const Matrix& m) const {
  if (m.cols() != ambient_dim()) throw Error("mapped: shape mismatch");
  std::vector<Vec> rows;
  for (int i = 0; i < dim(); ++i) rows.push_back(m.apply(basis_vector(i)));
  return Subspace::span(rows, m.rows(), m.field_tag());
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.field_tag() != b.field_tag())
    throw Error("subspace sum: ambient mismatch");
  return Subspace::row_space(vstack(a.basis(), b.basis()));
}

Matrix annihilator(const Subspace& s) { return nullspace_rows(s.basis()); }

Subspace nullspace(const Matrix& m) { return Subspace::row_space(nullspace_rows(m)); }

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.field_tag() != b.field_tag())
    throw Error("subspace intersect: ambient mismatch");
  // x in a cap b  iff  both annihilator stacks kill x
  Matrix conditions = vstack(annihilator(a), annihilator(b));
  return nullspace(conditions);
}

Matrix orthogonal_projection(const Subspace& s) {
  const Matrix& b = s.basis();
  Matrix gram = b * b.transpose();
  std::optional<Matrix> gi = inverse(gram);
  if (!gi) throw Error("degenerate Gram matrix: change field or basis");
  return b.transpose() * (*gi) * b;
}

namespace {

std::optional<Vec> search_nonzero_blocks(const Vec& x0, const std::vector<Vec>& dirs,
                                         const std::vector<std::vector<int>>& blocks, int d) {
  // Block identically zero on the affine set => no point exists.
  for (const auto& blk : blocks) {
    bool identically_zero = true;
    for (int j : blk) {
      if (!x0[static_cast<size_t>(j)].is_zero()) identically_zero = false;
      for (const auto& v : dirs)
        if (!v[static_cast<size_t>(j)].is_zero()) identically_zero = false;
    }
    if (identically_zero) return std::nullopt;
  }
  // Coordinates are polynomials of degree <= k in t, so few t values are bad.
  const int k = static_cast<int>(dirs.size());
  const int limit = k * static_cast<int>(blocks.size()) + 1;
  for (long t = 0; t <= limit; ++t) {
    Vec x = x0;
    FieldElement tt = FieldElement::from_int(t, d);
    FieldElement c = tt;
    for (const auto& v : dirs) {
      x = add(x, scale(c, v));
      c *= tt;
    }
    bool good = true;
    for (const auto& blk : blocks) {
      bool nonzero = false;
      for (int j : blk)
        if (!x[static_cast<size_t>(j)].is_zero()) nonzero = true;
      if (!nonzero) {
        good = false;
        break;
      }
    }
    if (good) return x;
  }
  return std::nullopt;  // unreachable by the covering argument
}

}  // namespace

std::optional<Vec> point_with_nonzero_coordinates(const Subspace& s) {
  if (s.dim() == 0) return std::nullopt;
  std::vector<std::vector<int>> blocks;
  for (int j = 0; j < s.ambient_dim(); ++j) blocks.push_back({j});
  std::vector<Vec> dirs;
  for (int i = 0; i < s.dim(); ++i) dirs.push_back(s.basis_vector(i));
  // First combination is v1 itself (t = 0 below starts at x0 = v1).
  Vec x0 = dirs.front();
  dirs.erase(dirs.begin());
  return search_nonzero_blocks(x0, dirs, blocks, s.field_tag());
}

std::optional<Vec> point_with_nonzero_blocks(const Vec& x0, const Matrix& dirs,
                                             const std::vector<std::vector<int>>& blocks) {
  std::vector<Vec> dv;
  for (int i = 0; i < dirs.rows(); ++i) dv.push_back(dirs.row(i));
  return search_nonzero_blocks(x0, dv, blocks, dirs.field_tag());
}

}  // namespace carnot
