#ifndef CARNOT_GRADED_HPP
#define CARNOT_GRADED_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnot/subspace.hpp"

namespace carnot {

enum class FactorField { Real, Complex };

struct StructureTriple {
  int i, j, k;
  FieldElement c;
};

struct ValidationIssue {
  std::string invariant;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string str() const;
};

/// Stratified graded Lie algebra given by structure constants on a graded
/// basis.  Coordinates are layer-major: indices [offset(l), offset(l)+dim V_l)
/// hold layer l, so layer projections are coordinate slices.
class GradedAlgebra {
 public:
  GradedAlgebra(std::vector<int> layer_dims, std::vector<StructureTriple> triples, int d);

  int dim() const { return n_; }
  int step() const { return static_cast<int>(layer_dims_.size()); }
  int field_tag() const { return d_; }
  int layer_dim(int l) const { return layer_dims_[static_cast<size_t>(l - 1)]; }
  int layer_offset(int l) const { return offsets_[static_cast<size_t>(l - 1)]; }
  /// Layer number (1-based) of a 0-based basis index.
  int layer_of(int index) const;
  int homogeneous_dimension() const;
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  const std::vector<StructureTriple>& triples() const { return raw_; }
  /// Folded tensor with i < j, one entry per (i, j, k).
  std::vector<StructureTriple> canonical_triples() const;

  const std::optional<Matrix>& complex_structure() const { return complex_structure_; }
  const std::optional<Matrix>& inherited_structure() const { return inherited_structure_; }
  /// Layer dims of the base algebra, set on complexifications; each layer of a
  /// complexification splits into (real, imaginary) halves.
  const std::optional<std::vector<int>>& base_layer_dims() const { return base_layer_dims_; }
  void set_complex_structure(Matrix j) { complex_structure_ = std::move(j); }
  void set_inherited_structure(Matrix j) { inherited_structure_ = std::move(j); }
  void set_base_layer_dims(std::vector<int> dims) { base_layer_dims_ = std::move(dims); }

  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Column j is [x, e_j].
  Matrix ad_matrix(const Vec& x) const;
  Vec layer_component(const Vec& x, int l) const;
  Subspace layer_subspace(int l) const;

  bool is_abelian() const;

 private:
  int n_, d_;
  std::vector<int> layer_dims_;
  std::vector<int> offsets_;
  std::vector<StructureTriple> raw_;
  std::map<std::pair<int, int>, std::map<int, FieldElement>> table_;  // keys i < j
  std::optional<Matrix> complex_structure_;
  std::optional<Matrix> inherited_structure_;
  std::optional<std::vector<int>> base_layer_dims_;

  friend ValidationReport validate(const GradedAlgebra& g);
};

ValidationReport validate(const GradedAlgebra& g);

int ad_rank(const GradedAlgebra& g, const Vec& x);
/// Complex rank: half the base-field rank of the J-invariant image; needs J.
int ad_rank_complex(const GradedAlgebra& g, const Vec& x);
/// dim [x, V_I] for a set of layer numbers I; complex dims when over_c.
int rank_I(const GradedAlgebra& g, const Vec& x, const std::vector<int>& layers, bool over_c = false);
/// Sampling lower bound for max rank_I over the first layer.  A bound only:
/// deciding the maximum exactly is polynomial-system solving and out of scope.
int max_rank_I_lower_bound(const GradedAlgebra& g, const std::vector<int>& layers, bool over_c = false,
                           int samples = 64, unsigned seed = 2024);

Subspace center(const GradedAlgebra& g);
Subspace centralizer(const GradedAlgebra& g, const Vec& x);

GradedAlgebra direct_sum(const std::vector<GradedAlgebra>& parts);

/// Graded linear map stored as one matrix per layer (codomain x domain).
class GradedMap {
 public:
  explicit GradedMap(std::vector<Matrix> layers);
  static GradedMap identity(const GradedAlgebra& g);
  static GradedMap dilation(const GradedAlgebra& g, const FieldElement& r);

  int layer_count() const { return static_cast<int>(layers_.size()); }
  const Matrix& layer(int l) const { return layers_[static_cast<size_t>(l - 1)]; }
  int domain_dim() const;
  int codomain_dim() const;
  int field_tag() const { return layers_.front().field_tag(); }

  Vec apply(const Vec& x) const;
  Matrix full_matrix() const;
  GradedMap compose(const GradedMap& inner) const;  // this after inner
  std::optional<GradedMap> inverted() const;
  FieldElement det() const;

  friend bool operator==(const GradedMap& a, const GradedMap& b) { return a.layers_ == b.layers_; }

 private:
  std::vector<Matrix> layers_;
};

struct QuotientResult {
  GradedAlgebra algebra;
  GradedMap projection;
  std::vector<int> kept;  // ambient indices forming the quotient basis
};

/// Quotient by a graded ideal contained in a single layer.
QuotientResult quotient(const GradedAlgebra& g, const Subspace& k);

GradedAlgebra complexify(const GradedAlgebra& g);
/// Conjugation of a complexification (identity on real halves, -1 on
/// imaginary halves).
Matrix conjugation_matrix(const GradedAlgebra& gc);

struct EigenspaceSplit {
  Subspace plus;
  Subspace minus;
};
/// The +-i eigenspaces of the inherited structure J^C on a complexification of
/// a complex algebra.
EigenspaceSplit jc_eigenspace_split(const GradedAlgebra& gc);

/// Step <= 2 group law A*B = A + B + [A,B]/2 and its defect N(A,B) = A*B-A-B.
Vec bch_multiply(const GradedAlgebra& g, const Vec& a, const Vec& b);
Vec bch_defect(const GradedAlgebra& g, const Vec& a, const Vec& b);
/// (-A)*B*A; the hypothesis [A, V_{>=2}] = 0 makes it equal B - [A_1, B_1].
Vec bch_conjugate(const GradedAlgebra& g, const Vec& a, const Vec& b);

bool is_graded_matrix(const GradedAlgebra& g, const Matrix& m);
/// Check phi[x,y] = [phi x, phi y] on all basis pairs.
bool is_bracket_homomorphism(const GradedAlgebra& dom, const GradedAlgebra& cod, const GradedMap& phi,
                             std::string* witness = nullptr);
bool is_graded_automorphism(const GradedAlgebra& g, const GradedMap& phi, std::string* witness = nullptr);

/// Second-layer matrix induced by a first-layer matrix of a step-2 algebra,
/// or nullopt when [A1 x, A1 y] does not factor through [x, y].
std::optional<Matrix> induced_second_layer(const GradedAlgebra& g, const Matrix& a1, std::string* witness = nullptr);

/// The same algebra expressed in the basis given by the columns of phi.
GradedAlgebra change_basis(const GradedAlgebra& g, const GradedMap& phi);

}  // namespace carnot

#endif
