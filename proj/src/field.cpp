#include "carnot/field.hpp"

namespace carnot {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  Rational q;
  if (q.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
  if (q.get_den() == 0) throw Error("zero denominator in rational literal: " + text);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  return q.get_str();
}

FieldElement::FieldElement(Rational a, Rational b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ == 0 && b_ != 0) throw Error("irrational part over Q (d = 0)");
  a_.canonicalize();
  b_.canonicalize();
}

void FieldElement::check_tag(const FieldElement& o) const {
  if (d_ != o.d_)
    throw Error("field tag mismatch: d=" + std::to_string(d_) + " vs d=" + std::to_string(o.d_));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_tag(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_tag(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_tag(o);
  Rational a = a_ * o.a_ + d_ * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  Rational n = norm();
  // norm vanishes only at zero: d is squarefree, never a rational square
  return FieldElement(a_ / n, -b_ / n, d_);
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  check_tag(o);
  return *this *= o.inverse();
}

int FieldElement::sign() const {
  if (d_ < 0) throw Error("sign undefined for imaginary quadratic field d=" + std::to_string(d_));
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 against d b^2
  return sa * sgn(a_ * a_ - d_ * b_ * b_);
}

FieldElement FieldElement::embedded_in(int d) const {
  if (b_ != 0) throw Error("cannot embed a non-rational element into another field");
  return FieldElement(a_, 0, d);
}

std::string FieldElement::str() const {
  if (b_ == 0) return rational_str(a_);
  std::string s = rational_str(a_);
  s += (sgn(b_) < 0 ? " - " : " + ");
  Rational ab = ::abs(b_);
  if (ab != 1) s += rational_str(ab) + "*";
  s += "sqrt(" + std::to_string(d_) + ")";
  return s;
}

}  // namespace carnot
