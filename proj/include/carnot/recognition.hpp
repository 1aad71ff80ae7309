#ifndef CARNOT_RECOGNITION_HPP
#define CARNOT_RECOGNITION_HPP

#include <optional>
#include <string>
#include <vector>

#include "carnot/graded.hpp"

namespace carnot {

/// First-layer basis change bringing a step-2 algebra with one-dimensional
/// center onto the standard symplectic form: columns X_1..X_2m with
/// [X_{2i-1}, X_{2i}] = -Y and all other basis brackets zero.
Matrix darboux_basis(const GradedAlgebra& g);

/// Complex symplectic reduction certifying a complex Heisenberg algebra;
/// returns its index m, or nullopt when the form degenerates.  Requires a
/// J-invariant two-dimensional second layer.
std::optional<int> complex_darboux_index(const GradedAlgebra& g);

/// Rank-one candidate generation in a step-2 algebra: solutions X of
/// [X, V_1] inside a candidate line, for lines spanned by basis brackets and
/// user-supplied data.  over_c treats J-invariant planes as lines.
std::vector<Vec> rank_one_sieve(const GradedAlgebra& g, const std::vector<Vec>& witnesses,
                                bool over_c = false);

enum class DecompVerdict { Recognized, Refuted, Inconclusive };

struct HeisenbergDecomposition {
  DecompVerdict verdict = DecompVerdict::Inconclusive;
  // (first layer K_j, second-layer line L_j), full algebra coordinates
  std::vector<std::pair<Subspace, Subspace>> summands;
  std::vector<Vec> witnesses;  // rank-one elements used
  std::string detail;
  int m = 0;  // common Heisenberg index when all summands agree, else 0
  bool recognized() const { return verdict == DecompVerdict::Recognized; }
};

/// Canonical decomposition into commuting Heisenberg summands whose first
/// layers fill V_1; honest verdict when the sieve cannot span.
HeisenbergDecomposition heisenberg_summands(const GradedAlgebra& g, const std::vector<Vec>& witnesses = {},
                                            bool over_c = false);

struct TrichotomyVerdict {
  enum class Kind { Abelian, Heisenberg, ProductQuotientCandidate, InvariantSubspace, Inconclusive };
  Kind kind = Kind::Inconclusive;
  FactorField field = FactorField::Real;
  int n = 0;
  int m = 0;
  std::vector<std::pair<Subspace, Subspace>> summands;
  std::optional<Subspace> invariant_subspace;
  std::string detail;
  std::string str() const;
};

/// Recognizer for the structure trichotomy: abelian, Heisenberg-decomposable
/// over R or C, a proper invariant rank span, or honestly inconclusive.
TrichotomyVerdict classify_trichotomy(const GradedAlgebra& g, const std::vector<Vec>& witnesses = {});

enum class Linearity { Linear, Antilinear };

struct LinearityVerdict {
  Linearity kind;
  int det_sign_second_layer;
};

/// A graded automorphism of a complex Heisenberg algebra either commutes or
/// anticommutes with J; the second-layer determinant sign matches.
LinearityVerdict complex_linearity_classify(const GradedAlgebra& g, const GradedMap& phi);

}  // namespace carnot

#endif
