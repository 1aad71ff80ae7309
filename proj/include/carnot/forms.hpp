#ifndef CARNOT_FORMS_HPP
#define CARNOT_FORMS_HPP

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carnot/graded.hpp"

namespace carnot {

using IndexSet = std::vector<int>;  // strictly increasing basis indices

/// Sort an index sequence, returning the permutation sign, or nullopt when an
/// index repeats.
std::optional<std::pair<IndexSet, int>> sort_sign(const std::vector<int>& indices);

/// Coefficient that is an exact scalar plus a linear polynomial in the formal
/// symbols c_0 ... c_{N-1} of the single formal one-form dphi = sum c_i theta_i.
/// Two genuinely symbolic coefficients never need to be multiplied; trying to
/// is an error.
struct SymCoeff {
  FieldElement scalar;
  std::map<int, FieldElement> dphi;

  SymCoeff() = default;
  explicit SymCoeff(FieldElement s) : scalar(std::move(s)) {}
  static SymCoeff symbol(int index, int d);

  int field_tag() const { return scalar.field_tag(); }
  bool is_zero() const;
  bool is_pure() const { return dphi.empty(); }

  SymCoeff operator-() const;
  SymCoeff& operator+=(const SymCoeff& o);
  SymCoeff& operator-=(const SymCoeff& o);
  friend SymCoeff operator+(SymCoeff l, const SymCoeff& r) { return l += r; }
  friend SymCoeff operator-(SymCoeff l, const SymCoeff& r) { return l -= r; }
  friend SymCoeff operator*(const SymCoeff& l, const SymCoeff& r);
  friend bool operator==(const SymCoeff& l, const SymCoeff& r);
  friend bool operator!=(const SymCoeff& l, const SymCoeff& r) { return !(l == r); }

  std::string str() const;
};

/// Sparse alternating multivector over sorted basis-index sets.
class MultiVector {
 public:
  MultiVector(int degree, int d) : degree_(degree), d_(d) {}
  static MultiVector from_vec(const Vec& v);
  static MultiVector basis(int degree, const IndexSet& indices, int d);

  int degree() const { return degree_; }
  int field_tag() const { return d_; }
  const std::map<IndexSet, FieldElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int>& indices, const FieldElement& c);
  MultiVector operator-() const;
  friend MultiVector operator+(const MultiVector& l, const MultiVector& r);
  MultiVector scaled(const FieldElement& c) const;
  friend bool operator==(const MultiVector& l, const MultiVector& r);

  std::string str() const;

 private:
  int degree_, d_;
  std::map<IndexSet, FieldElement> terms_;
};

MultiVector wedge(const MultiVector& x, const MultiVector& y);
/// Push a multivector forward through a linear map given by its full matrix.
MultiVector pushforward(const Matrix& full, const MultiVector& x);

/// Sparse left-invariant form; coefficients may carry the formal dphi channel.
class Form {
 public:
  Form(int degree, int d) : degree_(degree), d_(d) {}
  static Form monomial(const IndexSet& indices, SymCoeff c, int d);
  static Form monomial(const IndexSet& indices, FieldElement c);

  int degree() const { return degree_; }
  int field_tag() const { return d_; }
  const std::map<IndexSet, SymCoeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_symbolic() const;

  void add_term(const std::vector<int>& indices, const SymCoeff& c);
  Form operator-() const;
  friend Form operator+(const Form& l, const Form& r);
  friend Form operator-(const Form& l, const Form& r);
  Form scaled(const SymCoeff& c) const;
  Form scaled(const FieldElement& c) const { return scaled(SymCoeff(c)); }
  friend bool operator==(const Form& l, const Form& r);
  friend bool operator!=(const Form& l, const Form& r) { return !(l == r); }

  std::string str() const;

 private:
  int degree_, d_;
  std::map<IndexSet, SymCoeff> terms_;
};

Form wedge(const Form& a, const Form& b);
Form interior(const MultiVector& x, const Form& a);
SymCoeff evaluate(const Form& a, const MultiVector& x);

/// Chevalley-Eilenberg differential; rejects forms with symbolic coefficients
/// (closedness of the scalar companion is always established separately).
Form differential(const GradedAlgebra& g, const Form& a);

constexpr int kWeightNegInfinity = std::numeric_limits<int>::min();
int weight(const GradedAlgebra& g, const Form& a);
int weight_of_index_set(const GradedAlgebra& g, const IndexSet& indices);

/// Pullback along a graded homomorphism into the algebra carrying the form;
/// full is the codomain x domain matrix.
Form pullback(const Matrix& full, int domain_dim, const Form& a);
Form pullback(const GradedMap& phi, const Form& a);

Form lie_derivative(const GradedAlgebra& g, const Vec& x, const Form& a);

Form volume_form(const GradedAlgebra& g);
/// The formal one-form sum_i c_i theta_i.
Form dphi_formal(const GradedAlgebra& g);

/// Quotient descent: requires i_kappa a = 0 for every kappa in K's basis.
/// kept lists the ambient indices that form the quotient basis.
Form descend(const GradedAlgebra& ambient, const Subspace& k, const std::vector<int>& kept, const Form& a);
/// Unique lift annihilating K, i.e. the pullback along the projection.
Form lift(const GradedMap& projection, const Form& a);

struct SuiteItem {
  std::string identity;
  bool pass;
  std::string witness;
};

struct SuiteReport {
  std::vector<SuiteItem> items;
  bool all_pass() const;
  std::string str() const;
};

/// Exterior-derivative identity suite: d^2 = 0 on basis monomials, the
/// volume-contraction identities, and the Cartan commutator rule.
SuiteReport identity_suite(const GradedAlgebra& g, unsigned seed = 12345);

}  // namespace carnot

#endif
