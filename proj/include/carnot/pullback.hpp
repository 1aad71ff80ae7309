#ifndef CARNOT_PULLBACK_HPP
#define CARNOT_PULLBACK_HPP

#include "carnot/forms.hpp"
#include "carnot/presentation.hpp"

namespace carnot {

struct Admissibility {
  int deg_alpha = 0, deg_beta = 0;
  int wt_alpha = 0, wt_beta = 0;
  bool closed_alpha = false, closed_beta = false;
  bool degree_ok = false, weight_ok = false;
  bool admissible = false;
  std::string str() const;
};

/// Degree and weight bookkeeping for a pair of closed left-invariant forms:
/// deg a + deg b = N - 1 and wt(a) + wt(b) <= -nu + 1.
Admissibility admissible_pair(const GradedAlgebra& g, const Form& alpha, const Form& beta);

/// Factor area form theta_{2k} ^ theta_{2k+1} on the quotient (real, m = 1).
Form make_gamma(const BuiltQuotient& b, int factor);
/// Descended difference of the factor second-layer duals.
Form make_tau_diff(const BuiltQuotient& b, int i, int j);
/// (gamma_i + gamma_j) ^ tau_{i,j}: closed, degree 3, weight -4.
Form make_omega_ij(const BuiltQuotient& b, int i, int j);
/// The codegree-3 companion: contraction of the volume form by the m-th
/// factor's first-layer pair and its projected center direction.
Form make_beta_codegree3(const BuiltQuotient& b, int factor);
/// Z = sum of coeff_i X_{i,1} ^ X_{i,2} (real first-Heisenberg coordinates).
MultiVector area_two_vector(const BuiltQuotient& b, const Vec& coeffs);

/// The key wedge table of the diagonal dim-1 case: for every (k, l, m) and
/// every first-layer X outside factor m, d(i_X beta_m) = 0 and
/// omega_kl ^ dphi ^ i_X beta_m = -(delta_km - delta_lm) c_X omega.
SuiteReport verify_key_wedge_diagonal(const BuiltQuotient& b);

/// Conformal-case identities: closedness of i_Z omega and i_X i_Z omega over
/// the K directions, and the degree-2 pullback coefficient identity.
SuiteReport verify_degree2_suite(const BuiltQuotient& b, const VerifiedAut& aut);

/// Determinant-scale identity |det Phi| = lambda^(2n - dim K) and the
/// adjugate-style pairing of pulled-back codegree-2 contractions.
SuiteReport verify_adjugate(const BuiltQuotient& b, const VerifiedAut& aut);

struct KernelTwoVectors {
  std::vector<std::pair<int, int>> pair_index;  // first-layer index pairs of the factor
  Subspace coords;                              // kernel in pair coordinates
  std::vector<MultiVector> basis;
};

/// Kernel of the bracket map on two-vectors of one factor's first layer;
/// nontrivial only for higher or complex Heisenberg factors.
KernelTwoVectors kernel_two_vectors(const BuiltQuotient& b, int factor);
/// Two-forms on the factor whose restrictions to the kernel form the dual
/// basis of the kernel basis (minimal-support echelon solution).
std::vector<Form> dual_two_forms(const BuiltQuotient& b, int factor);

/// Higher/complex factor identities: the codegree-3 differential rule, the
/// Leibniz expansion, and the two coefficient identities against factor
/// two-forms and kernel two-vectors.
SuiteReport verify_higher_suite(const BuiltQuotient& b);

}  // namespace carnot

#endif
