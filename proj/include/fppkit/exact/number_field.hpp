#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "fppkit/exact/reconstruct.hpp"
#include "fppkit/exact/residue.hpp"
#include "fppkit/exact/univariate.hpp"

namespace fppkit::exact {

// Q[x]/(f) for a monic squarefree integer polynomial f, given by the
// minimal polynomial of a primitive element. Towers are flattened.
class NumberField {
 public:
  NumberField(IntPoly minpoly, std::string name) : minpoly_(std::move(minpoly)), name_(std::move(name)) {
    if (minpoly_.degree() < 1) throw InvalidInput("number field: minimal polynomial must have degree >= 1");
    if (minpoly_.leading() != 1) throw InvalidInput("number field: minimal polynomial must be monic");
    if (!is_squarefree(minpoly_)) throw InvalidInput("number field: minimal polynomial is not squarefree");
    rat_minpoly_ = to_rational(minpoly_);
  }

  std::size_t degree() const { return static_cast<std::size_t>(minpoly_.degree()); }
  const IntPoly& minpoly() const { return minpoly_; }
  const RatPoly& rational_minpoly() const { return rat_minpoly_; }
  const std::string& name() const { return name_; }

  bool operator==(const NumberField& o) const { return minpoly_ == o.minpoly_; }

 private:
  IntPoly minpoly_;
  RatPoly rat_minpoly_;
  std::string name_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of a NumberField in power-basis coordinates.
class NumberFieldElement {
 public:
  NumberFieldElement(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {
    if (c_.size() > field_->degree()) reduce_in_place();
    c_.resize(field_->degree(), Rational(0));
  }

  static NumberFieldElement from_rational(FieldPtr field, const Rational& q) {
    std::vector<Rational> c(field->degree(), Rational(0));
    c[0] = q;
    return NumberFieldElement(std::move(field), std::move(c));
  }

  // The primitive element itself.
  static NumberFieldElement generator(FieldPtr field) {
    std::vector<Rational> c(field->degree(), Rational(0));
    if (field->degree() == 1) c[0] = -Rational(field->minpoly().coeff(0));
    else c[1] = 1;
    return NumberFieldElement(std::move(field), std::move(c));
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  NumberFieldElement zero_like() const { return from_rational(field_, 0); }
  NumberFieldElement one_like() const { return from_rational(field_, 1); }

  NumberFieldElement operator-() const {
    std::vector<Rational> r(c_);
    for (auto& x : r) x = -x;
    return NumberFieldElement(field_, std::move(r));
  }

  friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
    a.check(b);
    std::vector<Rational> r(a.c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.c_[i];
    return NumberFieldElement(a.field_, std::move(r));
  }
  friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) {
    a.check(b);
    std::vector<Rational> r(a.c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.c_[i];
    return NumberFieldElement(a.field_, std::move(r));
  }
  friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
    a.check(b);
    std::size_t d = a.c_.size();
    std::vector<Rational> r(2 * d - 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (b.c_[j] != 0) r[i + j] += a.c_[i] * b.c_[j];
    }
    return NumberFieldElement(a.field_, std::move(r));
  }
  friend NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b) {
    return a * b.inverse();
  }
  friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    return a.same_field(b) && a.c_ == b.c_;
  }

  NumberFieldElement scaled(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= s;
    return NumberFieldElement(field_, std::move(r));
  }
  NumberFieldElement scaled(long s) const { return scaled(Rational(s)); }

  NumberFieldElement pow(unsigned long e) const {
    NumberFieldElement acc = one_like(), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  NumberFieldElement inverse() const {
    auto [g, s] = half_gcdex(RatPoly(c_), field_->rational_minpoly());
    if (g.degree() != 0) throw ArithmeticError("number field element is not invertible");
    return NumberFieldElement(field_, s.coeffs());
  }

  bool same_field(const NumberFieldElement& o) const { return field_ == o.field_ || *field_ == *o.field_; }

  // Power-basis expression with variable name `var`.
  std::string to_string(const std::string& var = "t") const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Rational mag = abs(c_[i]);
      bool neg = c_[i] < 0;
      if (!out.empty()) out += neg ? " + -" : " + ";
      else if (neg) out += "-";
      if (i == 0) out += mag.get_str();
      else {
        if (mag != 1) out += mag.get_str() + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  void reduce_in_place() {
    RatPoly r = divmod(RatPoly(c_), field_->rational_minpoly()).second;
    c_ = r.coeffs();
  }
  void check(const NumberFieldElement& o) const {
    if (!same_field(o)) throw ArithmeticError("mixed number fields: " + field_->name() + " vs " + o.field_->name());
  }

  FieldPtr field_;
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const NumberFieldElement& x) { return os << x.to_string(); }

// Image of x in Z/p^k under the primitive element -> root_choice map.
inline Residue nf_embed_mod_pk(const NumberFieldElement& x, const Residue& root_choice) {
  const Integer& m = root_choice.modulus();
  if (eval_mod(x.field()->minpoly(), root_choice.value(), m) != 0)
    throw InvalidInput("root_choice " + root_choice.to_string() + " is not a root of the field's minimal polynomial");
  Residue acc(root_choice.prime(), root_choice.exponent(), 0);
  const auto& c = x.coords();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * root_choice + Residue::from_rational(c[i], root_choice.prime(), root_choice.exponent());
  }
  return acc;
}

namespace fields {

inline FieldPtr rationals() {
  static const FieldPtr q = std::make_shared<const NumberField>(IntPoly({Integer(0), Integer(1)}), "Q");
  return q;
}

// Q(sqrt(-2)) with primitive element s2, s2^2 = -2.
inline FieldPtr q_sqrt_m2() {
  static const FieldPtr f = std::make_shared<const NumberField>(IntPoly({Integer(2), Integer(0), Integer(1)}), "Q(sqrt(-2))");
  return f;
}

// Q(sqrt(-2), sqrt(-3)) with primitive element t = s2 + s3, t^4 + 10 t^2 + 1 = 0.
inline FieldPtr q_sqrt_m2_m3() {
  static const FieldPtr f = std::make_shared<const NumberField>(
      IntPoly({Integer(1), Integer(0), Integer(10), Integer(0), Integer(1)}), "Q(sqrt(-2),sqrt(-3))");
  return f;
}

}  // namespace fields

}  // namespace fppkit::exact
