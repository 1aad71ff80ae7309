#include "carnot/matrix.hpp"

#include <sstream>

namespace carnot {

Vec zero_vec(int n, int d) { return Vec(static_cast<size_t>(n), FieldElement::zero(d)); }

Vec unit_vec(int n, int i, int d) {
  Vec v = zero_vec(n, d);
  v[static_cast<size_t>(i)] = FieldElement::one(d);
  return v;
}

Vec add(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error("vector size mismatch");
  Vec r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vec sub(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error("vector size mismatch");
  Vec r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Vec scale(const FieldElement& c, const Vec& x) {
  Vec r = x;
  for (auto& e : r) e *= c;
  return r;
}

bool is_zero_vec(const Vec& x) {
  for (const auto& e : x)
    if (!e.is_zero()) return false;
  return true;
}

Matrix::Matrix(int rows, int cols, int d)
    : rows_(rows), cols_(cols), d_(d),
      e_(static_cast<size_t>(rows) * static_cast<size_t>(cols), FieldElement::zero(d)) {
  if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
}

Matrix Matrix::identity(int n, int d) {
  Matrix m(n, n, d);
  for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(d);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols, int d) {
  Matrix m(static_cast<int>(rows.size()), cols, d);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return m;
}

Vec Matrix::row(int i) const {
  Vec v;
  v.reserve(static_cast<size_t>(cols_));
  for (int j = 0; j < cols_; ++j) v.push_back(at(i, j));
  return v;
}

Vec Matrix::col(int j) const {
  Vec v;
  v.reserve(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

void Matrix::set_row(int i, const Vec& v) {
  if (static_cast<int>(v.size()) != cols_) throw Error("row length mismatch");
  for (int j = 0; j < cols_; ++j) at(i, j) = v[static_cast<size_t>(j)];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, d_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Vec Matrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw Error("matrix apply: size mismatch");
  Vec r = zero_vec(rows_, d_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero() || x[static_cast<size_t>(j)].is_zero()) continue;
      r[static_cast<size_t>(i)] += at(i, j) * x[static_cast<size_t>(j)];
    }
  return r;
}

Matrix operator*(const Matrix& l, const Matrix& r) {
  if (l.cols_ != r.rows_) throw Error("matrix product: shape mismatch");
  if (l.d_ != r.d_) throw Error("matrix product: field tag mismatch");
  Matrix p(l.rows_, r.cols_, l.d_);
  for (int i = 0; i < l.rows_; ++i)
    for (int k = 0; k < l.cols_; ++k) {
      if (l.at(i, k).is_zero()) continue;
      for (int j = 0; j < r.cols_; ++j) {
        if (r.at(k, j).is_zero()) continue;
        p.at(i, j) += l.at(i, k) * r.at(k, j);
      }
    }
  return p;
}

Matrix operator+(const Matrix& l, const Matrix& r) {
  if (l.rows_ != r.rows_ || l.cols_ != r.cols_ || l.d_ != r.d_) throw Error("matrix sum: mismatch");
  Matrix s = l;
  for (size_t i = 0; i < s.e_.size(); ++i) s.e_[i] += r.e_[i];
  return s;
}

Matrix operator-(const Matrix& l, const Matrix& r) {
  if (l.rows_ != r.rows_ || l.cols_ != r.cols_ || l.d_ != r.d_) throw Error("matrix diff: mismatch");
  Matrix s = l;
  for (size_t i = 0; i < s.e_.size(); ++i) s.e_[i] -= r.e_[i];
  return s;
}

Matrix Matrix::scaled(const FieldElement& c) const {
  Matrix s = *this;
  for (auto& e : s.e_) e *= c;
  return s;
}

bool operator==(const Matrix& l, const Matrix& r) {
  return l.rows_ == r.rows_ && l.cols_ == r.cols_ && l.d_ == r.d_ && l.e_ == r.e_;
}

bool Matrix::is_zero() const {
  for (const auto& e : e_)
    if (!e.is_zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    os << "]\n";
  }
  return os.str();
}

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  const int d = m.field_tag();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = -1;
    for (int i = r; i < a.rows(); ++i)
      if (!a.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
    FieldElement inv = a.at(r, c).inverse();
    for (int j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      FieldElement f = a.at(i, c);
      for (int j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  (void)d;
  return RrefResult{std::move(a), r, std::move(pivots)};
}

FieldElement determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  Matrix a = m;
  const int n = m.rows();
  FieldElement det = FieldElement::one(m.field_tag());
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!a.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return FieldElement::zero(m.field_tag());
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
      det = -det;
    }
    det *= a.at(c, c);
    FieldElement inv = a.at(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (a.at(i, c).is_zero()) continue;
      FieldElement f = a.at(i, c) * inv;
      for (int j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
  const int n = m.rows();
  Matrix aug(n, 2 * n, m.field_tag());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = FieldElement::one(m.field_tag());
  }
  RrefResult r = rref(aug);
  if (r.rank < n || r.pivots[static_cast<size_t>(n) - 1] >= n) {
    // rank deficiency inside the left block
    for (int i = 0; i < n; ++i)
      if (i >= r.rank || r.pivots[static_cast<size_t>(i)] >= n) return std::nullopt;
  }
  Matrix inv(n, n, m.field_tag());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = r.echelon.at(i, n + j);
  return inv;
}

Matrix nullspace_rows(const Matrix& m) {
  RrefResult r = rref(m);
  const int n = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int p : r.pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Vec> rows;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    Vec v = zero_vec(n, m.field_tag());
    v[static_cast<size_t>(j)] = FieldElement::one(m.field_tag());
    for (int i = 0; i < r.rank; ++i) v[static_cast<size_t>(r.pivots[static_cast<size_t>(i)])] = -r.echelon.at(i, j);
    rows.push_back(std::move(v));
  }
  return Matrix::from_rows(rows, n, m.field_tag());
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw Error("solve: rhs size mismatch");
  Matrix aug(m.rows(), m.cols() + 1, m.field_tag());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[static_cast<size_t>(i)];
  }
  RrefResult r = rref(aug);
  for (int i = 0; i < r.rank; ++i)
    if (r.pivots[static_cast<size_t>(i)] == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.cols(), m.field_tag());
  for (int i = 0; i < r.rank; ++i) x[static_cast<size_t>(r.pivots[static_cast<size_t>(i)])] = r.echelon.at(i, m.cols());
  return x;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error("vstack: column mismatch");
  if (top.field_tag() != bottom.field_tag()) throw Error("vstack: field tag mismatch");
  Matrix s(top.rows() + bottom.rows(), top.cols(), top.field_tag());
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) s.at(i, j) = top.at(i, j);
  for (int i = 0; i < bottom.rows(); ++i)
    for (int j = 0; j < bottom.cols(); ++j) s.at(top.rows() + i, j) = bottom.at(i, j);
  return s;
}

}  // namespace carnot
