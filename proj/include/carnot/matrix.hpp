#ifndef CARNOT_MATRIX_HPP
#define CARNOT_MATRIX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "carnot/field.hpp"

namespace carnot {

using Vec = std::vector<FieldElement>;

Vec zero_vec(int n, int d);
Vec unit_vec(int n, int i, int d);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const FieldElement& c, const Vec& x);
bool is_zero_vec(const Vec& x);

/// Dense matrix over Q(sqrt(d)); all entries share one field tag.
class Matrix {
 public:
  Matrix(int rows, int cols, int d);
  static Matrix identity(int n, int d);
  static Matrix from_rows(const std::vector<Vec>& rows, int cols, int d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int field_tag() const { return d_; }

  FieldElement& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const FieldElement& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  void set_row(int i, const Vec& v);

  Matrix transpose() const;
  Vec apply(const Vec& x) const;  // matrix * column vector

  friend Matrix operator*(const Matrix& l, const Matrix& r);
  friend Matrix operator+(const Matrix& l, const Matrix& r);
  friend Matrix operator-(const Matrix& l, const Matrix& r);
  Matrix scaled(const FieldElement& c) const;
  friend bool operator==(const Matrix& l, const Matrix& r);
  friend bool operator!=(const Matrix& l, const Matrix& r) { return !(l == r); }

  bool is_zero() const;
  std::string str() const;

 private:
  int rows_, cols_, d_;
  std::vector<FieldElement> e_;
};

struct RrefResult {
  Matrix echelon;
  int rank;
  std::vector<int> pivots;
};

RrefResult rref(const Matrix& m);
FieldElement determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// Rows of the result span {x : m x = 0}.
Matrix nullspace_rows(const Matrix& m);

/// One solution of m x = b, if any.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// Stack blocks vertically; column counts must agree.
Matrix vstack(const Matrix& top, const Matrix& bottom);

}  // namespace carnot

#endif
