#ifndef CARNOT_SUBSPACE_HPP
#define CARNOT_SUBSPACE_HPP

#include <optional>
#include <vector>

#include "carnot/matrix.hpp"

namespace carnot {

/// Linear subspace stored by its reduced-row-echelon basis, so that equality
/// of subspaces is equality of stored bases.
class Subspace {
 public:
  static Subspace zero(int ambient, int d) { return Subspace(Matrix(0, ambient, d)); }
  static Subspace full(int ambient, int d) { return Subspace(Matrix::identity(ambient, d)); }
  static Subspace span(const std::vector<Vec>& vectors, int ambient, int d);
  static Subspace row_space(const Matrix& rows) { return Subspace(rows); }

  int ambient_dim() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  int field_tag() const { return basis_.field_tag(); }
  const Matrix& basis() const { return basis_; }
  Vec basis_vector(int i) const { return basis_.row(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  friend bool operator==(const Subspace& l, const Subspace& r) { return l.basis_ == r.basis_; }
  friend bool operator!=(const Subspace& l, const Subspace& r) { return !(l == r); }
  friend bool operator<(const Subspace& l, const Subspace& r);

  /// Image under a linear map (columns of m index this ambient space).
  Subspace mapped(const Matrix& m) const;

 private:
  explicit Subspace(const Matrix& rows);
  Matrix basis_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// Rows annihilating s:  x in s  iff  annihilator(s) * x = 0.
Matrix annihilator(const Subspace& s);
Subspace nullspace(const Matrix& m);

/// B^T (B B^T)^{-1} B for the echelon basis B; throws on a degenerate Gram
/// matrix (possible only for d < 0).
Matrix orthogonal_projection(const Subspace& s);

std::optional<Vec> point_with_nonzero_coordinates(const Subspace& s);

/// Point of x0 + row_space(dirs) whose restriction to every listed coordinate
/// block is nonzero, or nullopt if some block vanishes identically.
std::optional<Vec> point_with_nonzero_blocks(const Vec& x0, const Matrix& dirs,
                                             const std::vector<std::vector<int>>& blocks);

}  // namespace carnot

#endif
