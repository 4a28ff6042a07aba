#pragma once

#include <array>
#include <string>
#include <string_view>

#include "fppkit/exact/expression.hpp"
#include "fppkit/exact/number_field.hpp"

// Text form for Q(sqrt(-2), sqrt(-3)):  a + b*s2 + c*s3 + d*s6
// with s2 = sqrt(-2), s3 = sqrt(-3) and s6 = s2*s3 (the product of the two
// chosen square roots). Internally everything lives in the power basis of
// t = s2 + s3, where s2 = -(t^3 + 9t)/2, s3 = (t^3 + 11t)/2, s6 = (t^2 + 5)/2.

namespace fppkit::exact::compositum {

inline NumberFieldElement s2() {
  return NumberFieldElement(fields::q_sqrt_m2_m3(), {Rational(0), Rational(-9, 2), Rational(0), Rational(-1, 2)});
}
inline NumberFieldElement s3() {
  return NumberFieldElement(fields::q_sqrt_m2_m3(), {Rational(0), Rational(11, 2), Rational(0), Rational(1, 2)});
}
inline NumberFieldElement s6() {
  return NumberFieldElement(fields::q_sqrt_m2_m3(), {Rational(5, 2), Rational(0), Rational(1, 2), Rational(0)});
}

inline NumberFieldElement from_basis(const std::array<Rational, 4>& abcd) {
  auto f = fields::q_sqrt_m2_m3();
  return NumberFieldElement::from_rational(f, abcd[0]) + s2().scaled(abcd[1]) + s3().scaled(abcd[2]) +
         s6().scaled(abcd[3]);
}

// Coordinates (a, b, c, d) with respect to 1, s2, s3, s6.
inline std::array<Rational, 4> to_basis(const NumberFieldElement& x) {
  if (*x.field() != *fields::q_sqrt_m2_m3()) throw InvalidInput("element is not in Q(sqrt(-2),sqrt(-3))");
  const auto& c = x.coords();
  Rational d = 2 * c[2];
  Rational a = c[0] - 5 * c[2];
  Rational b = c[1] - 11 * c[3];
  Rational cc = c[1] - 9 * c[3];
  return {a, b, cc, d};
}

inline NumberFieldElement parse(std::string_view text) {
  auto f = fields::q_sqrt_m2_m3();
  ExpressionParser<NumberFieldElement> p(
      [f](const Rational& q) { return NumberFieldElement::from_rational(f, q); },
      [](const std::string& name) -> NumberFieldElement {
        if (name == "s2") return s2();
        if (name == "s3") return s3();
        if (name == "s6") return s6();
        throw InvalidInput("unknown symbol '" + name + "' (expected s2, s3, s6)");
      });
  return p.parse(text);
}

inline std::string format(const NumberFieldElement& x) {
  auto abcd = to_basis(x);
  static const char* names[4] = {"", "s2", "s3", "s6"};
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (abcd[static_cast<std::size_t>(i)] == 0) continue;
    const Rational& q = abcd[static_cast<std::size_t>(i)];
    std::string term = Rational(abs(q)).get_str();
    if (i > 0) term = (abs(q) == 1 ? std::string() : term + "*") + names[i];
    if (out.empty()) out = (q < 0 ? "-" : "") + term;
    else out += (q < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace fppkit::exact::compositum
