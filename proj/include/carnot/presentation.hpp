#ifndef CARNOT_PRESENTATION_HPP
#define CARNOT_PRESENTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "carnot/graded.hpp"

namespace carnot {

/// The m-th Heisenberg algebra in the standard basis: first layer
/// X_1 ... X_{2m} with [X_{2i-1}, X_{2i}] = -Y, one-dimensional center.
GradedAlgebra heisenberg(int m, int d);
/// Complexification of the m-th Heisenberg algebra (layers 4m and 2, with J).
GradedAlgebra complex_heisenberg(int m, int d);

/// Product-quotient presentation: n copies of the m-th Heisenberg algebra
/// over F, quotiented by a subspace K of the joint second layer.  K lives in
/// second-layer coordinates: dimension n for real factors, 2n (real and
/// imaginary parts per factor, factor-major) for complex ones.
struct Presentation {
  FactorField F;
  int m;
  int n;
  int d;
  Subspace K;

  int second_layer_dim() const { return (F == FactorField::Real ? 1 : 2) * n; }
  int factor_block_size() const { return F == FactorField::Real ? 1 : 2; }
};

struct BuiltQuotient {
  Presentation pres;
  GradedAlgebra ambient;
  GradedAlgebra algebra;  // the quotient
  GradedMap projection;
  std::vector<int> kept;
  Subspace K_full;  // K embedded in full ambient coordinates

  int first_layer_per_factor() const;
  /// Ambient index of basis vector q of factor i's first layer (0-based).
  int first_index(int factor, int q) const;
  /// Ambient index q-th second-layer coordinate of factor i.
  int second_index(int factor, int q = 0) const;
};

BuiltQuotient build(const Presentation& p);

struct AxiomCheck {
  std::string axiom;
  bool pass;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  std::string str() const;
};

/// Conditions (4)-(6): trivial intersection with each factor, distinct
/// second-layer projections, and transitivity of realizable permutations.
AxiomReport verify_axioms(const Presentation& p);

using Perm = std::vector<int>;  // sigma[i] = image of i, 0-based

enum class StabVariant { Stabilize, Pointwise };
enum class ScalarVariant { Linear, Antilinear };

struct DiagonalWitness {
  Vec entries;  // per factor: 1 value (real) or (a, b) for a + bJ (complex)
  ScalarVariant scalars;
};

/// Diagonal second-layer witness D with D P_sigma K = K (Stabilize) or
/// D P_sigma = id on K (Pointwise); every block of D nonzero.
std::optional<DiagonalWitness> stabilizer_second_layer_test(const Presentation& p, const Perm& sigma,
                                                            StabVariant variant);

/// Second-layer matrix (in K coordinates) of the witness composed with the
/// factor permutation.
Matrix witness_second_layer_matrix(const Presentation& p, const Perm& sigma, const DiagonalWitness& w);

/// Ambient graded automorphism realizing a factor permutation with diagonal
/// second-layer action.
GradedMap realize_factor_map(const BuiltQuotient& b, const Perm& sigma, const DiagonalWitness& w);

struct NormalizeResult {
  GradedMap psi;  // ambient automorphism with psi(diagonal) = K
  Presentation diagonal;
};

/// Lemma: a one-dimensional K = span(sum mu_i Y_i) with all mu_i nonzero is a
/// scaled image of the diagonal.
NormalizeResult normalize_dim1(const Presentation& p);

struct Partition {
  std::vector<std::vector<int>> blocks;  // sorted blocks, sorted by least element
  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks == b.blocks; }
  std::string str() const;
};

Partition components_partition(int n, const std::vector<std::pair<int, int>>& edges);
/// Finest partition of factors across which K splits as a direct sum,
/// detected through the block pattern of the orthogonal projection onto K.
Partition finest_partition(const Presentation& p);
bool partition_compatible(const Presentation& p, const Partition& part);
/// All set partitions of {0..n-1} (for the brute-force oracle).
std::vector<Partition> all_partitions(int n);

std::vector<Presentation> conformal_decompose(const Presentation& p);

struct VerifiedAut {
  GradedMap ambient;
  GradedMap descended;
  Matrix second_layer;  // ambient second-layer block
};

/// Verify a first-layer matrix on the ambient: induce the second layer from
/// brackets, check bracket preservation and K-stabilization, descend.
VerifiedAut aut_verify(const BuiltQuotient& b, const Matrix& a1);

struct LambdaSP {
  FieldElement lambda;     // positive scale
  std::vector<int> signs;  // +-1 per factor
  Perm sigma;              // P e_j = e_{sigma(j)}
  Matrix reconstruct(int d) const;
};

/// Unique factorization M = lambda S P of a monomial matrix with equal-modulus
/// entries (the conformal, real first-Heisenberg case).
LambdaSP factor_lambda_s_p(const Matrix& m);

struct HPrimeOrbits {
  Partition orbits;
  std::vector<Subspace> k_projections;  // K projected to each orbit block
  std::vector<Perm> realizable;         // pointwise-realizable permutations
};

/// Orbits of the subgroup of graded automorphisms acting as the identity on
/// K, decided by exact enumeration of S_n (n <= 8), plus the per-orbit K
/// projections (each one-dimensional for a verified product quotient).
HPrimeOrbits hprime_orbits(const Presentation& p);

std::vector<Perm> all_permutations(int n);

}  // namespace carnot

#endif
