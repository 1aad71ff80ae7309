#ifndef CARNOT_FIELD_HPP
#define CARNOT_FIELD_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace carnot {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);

/// Element a + b*sqrt(d) of the quadratic field Q(sqrt(d)).
///
/// d is a fixed squarefree tag per document: d = 0 means plain Q (b must stay
/// zero), d = -1 the Gaussian rationals, d = 5 the golden-ratio field.  Mixing
/// tags in one operation is an error, never a coercion.
class FieldElement {
 public:
  FieldElement() : a_(0), b_(0), d_(0) {}
  FieldElement(Rational a, Rational b, int d);
  static FieldElement from_rational(Rational a, int d) { return FieldElement(std::move(a), 0, d); }
  static FieldElement from_int(long a, int d) { return FieldElement(Rational(a), 0, d); }
  static FieldElement zero(int d) { return from_int(0, d); }
  static FieldElement one(int d) { return from_int(1, d); }
  static FieldElement sqrt_d(int d) { return FieldElement(0, 1, d); }

  const Rational& rat_part() const { return a_; }
  const Rational& irr_part() const { return b_; }
  int field_tag() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  FieldElement conjugate() const { return FieldElement(a_, -b_, d_); }
  /// Field norm a^2 - d b^2; zero iff the element is zero.
  Rational norm() const { return a_ * a_ - d_ * b_ * b_; }
  FieldElement inverse() const;

  /// Sign under the real embedding sqrt(d) > 0.  Only for d >= 0.
  int sign() const;
  FieldElement abs() const { return sign() >= 0 ? *this : -*this; }

  /// Re-tag a pure rational into another field.  Throws when b != 0.
  FieldElement embedded_in(int d) const;

  FieldElement operator-() const { return FieldElement(-a_, -b_, d_); }
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement l, const FieldElement& r) { return l += r; }
  friend FieldElement operator-(FieldElement l, const FieldElement& r) { return l -= r; }
  friend FieldElement operator*(FieldElement l, const FieldElement& r) { return l *= r; }
  friend FieldElement operator/(FieldElement l, const FieldElement& r) { return l /= r; }
  friend bool operator==(const FieldElement& l, const FieldElement& r) {
    return l.d_ == r.d_ && l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend bool operator!=(const FieldElement& l, const FieldElement& r) { return !(l == r); }

  std::string str() const;

 private:
  void check_tag(const FieldElement& o) const;
  Rational a_, b_;
  int d_;
};

}  // namespace carnot

#endif
