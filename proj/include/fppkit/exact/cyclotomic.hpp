#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <string_view>

#include "fppkit/exact/expression.hpp"
#include "fppkit/exact/number_field.hpp"

namespace fppkit::exact {

inline IntPoly cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw InvalidInput("cyclotomic_polynomial: n must be >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> c(n + 1, Integer(0));
  c[0] = -1;
  c[n] = 1;
  RatPoly num = to_rational(IntPoly(c));
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    num = divmod(num, to_rational(cyclotomic_polynomial(d))).first;
  }
  std::vector<Integer> out;
  for (const auto& q : num.coeffs()) out.push_back(q.get_num());
  return IntPoly(std::move(out));
}

inline FieldPtr cyclotomic_field(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const NumberField>(cyclotomic_polynomial(n), "Q(zeta_" + std::to_string(n) + ")");
  cache.emplace(n, f);
  return f;
}

// Element of Q(zeta_n), zeta_n = exp(2 pi i / n), in the power basis of
// zeta_n modulo Phi_n. Coordinates are canonical, so equality is exact.
class CyclotomicElement {
 public:
  CyclotomicElement(unsigned conductor, const Rational& q)
      : n_(conductor), x_(NumberFieldElement::from_rational(cyclotomic_field(conductor), q)) {}
  CyclotomicElement(unsigned conductor, NumberFieldElement x) : n_(conductor), x_(std::move(x)) {
    if (*x_.field() != *cyclotomic_field(n_)) throw InvalidInput("element is not in the cyclotomic field");
  }

  // zeta_n^j for any integer j.
  static CyclotomicElement root_of_unity(unsigned n, long j) {
    long e = ((j % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
    std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
    c[static_cast<std::size_t>(e)] = 1;
    return CyclotomicElement(n, NumberFieldElement(cyclotomic_field(n), std::move(c)));
  }

  unsigned conductor() const { return n_; }
  const NumberFieldElement& element() const { return x_; }
  const std::vector<Rational>& coords() const { return x_.coords(); }
  bool is_zero() const { return x_.is_zero(); }
  bool is_rational() const { return x_.is_rational(); }
  Rational rational_value() const {
    if (!is_rational()) throw InvalidInput("cyclotomic value is not rational: " + to_string());
    return x_.coords()[0];
  }
  bool is_integral() const {
    for (const auto& c : coords())
      if (c.get_den() != 1) return false;
    return true;
  }

  // Galois action zeta -> zeta^a, gcd(a, n) = 1.
  CyclotomicElement galois(long a) const {
    if (std::gcd(a, static_cast<long>(n_)) != 1) throw InvalidInput("galois exponent not coprime to conductor");
    CyclotomicElement acc(n_, Rational(0));
    const auto& c = coords();
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) acc = acc + root_of_unity(n_, a * static_cast<long>(j)).scaled(c[j]);
    return acc;
  }

  CyclotomicElement conj() const { return galois(-1); }

  // Same number viewed in Q(zeta_m), n | m.
  CyclotomicElement lift_to(unsigned m) const {
    if (m % n_) throw InvalidInput("lift_to: conductor must divide target");
    CyclotomicElement acc(m, Rational(0));
    const auto& c = coords();
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) acc = acc + root_of_unity(m, static_cast<long>(j * (m / n_))).scaled(c[j]);
    return acc;
  }

  CyclotomicElement scaled(const Rational& s) const { return CyclotomicElement(n_, x_.scaled(s)); }
  CyclotomicElement scaled(long s) const { return scaled(Rational(s)); }
  CyclotomicElement operator-() const { return CyclotomicElement(n_, -x_); }
  CyclotomicElement inverse() const { return CyclotomicElement(n_, x_.inverse()); }
  CyclotomicElement zero_like() const { return CyclotomicElement(n_, Rational(0)); }
  CyclotomicElement one_like() const { return CyclotomicElement(n_, Rational(1)); }
  CyclotomicElement pow(unsigned long e) const { return CyclotomicElement(n_, x_.pow(e)); }

  friend CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b) {
    a.check(b);
    return CyclotomicElement(a.n_, a.x_ + b.x_);
  }
  friend CyclotomicElement operator-(const CyclotomicElement& a, const CyclotomicElement& b) {
    a.check(b);
    return CyclotomicElement(a.n_, a.x_ - b.x_);
  }
  friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
    a.check(b);
    return CyclotomicElement(a.n_, a.x_ * b.x_);
  }
  friend CyclotomicElement operator/(const CyclotomicElement& a, const CyclotomicElement& b) {
    return a * b.inverse();
  }
  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
    return a.n_ == b.n_ && a.x_ == b.x_;
  }

  // Polynomial in `var` = zeta_n, e.g. "-1 - 2*w^2".
  std::string to_string(const std::string& var = "w") const {
    std::string out;
    const auto& c = coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Rational mag = abs(c[i]);
      bool neg = c[i] < 0;
      std::string term;
      if (i == 0) term = mag.get_str();
      else {
        if (mag != 1) term = mag.get_str() + "*";
        term += var;
        if (i > 1) term += "^" + std::to_string(i);
      }
      if (out.empty()) out = (neg ? "-" : "") + term;
      else out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
  }

  static CyclotomicElement parse(unsigned conductor, std::string_view text, const std::string& var = "w") {
    ExpressionParser<CyclotomicElement> p(
        [conductor](const Rational& q) { return CyclotomicElement(conductor, q); },
        [conductor, var](const std::string& name) -> CyclotomicElement {
          if (name == var) return root_of_unity(conductor, 1);
          throw InvalidInput("unknown symbol '" + name + "' in cyclotomic expression");
        });
    return p.parse(text);
  }

 private:
  void check(const CyclotomicElement& o) const {
    if (n_ != o.n_)
      throw ArithmeticError("mixed conductors " + std::to_string(n_) + " and " + std::to_string(o.n_));
  }

  unsigned n_;
  NumberFieldElement x_;
};

inline std::ostream& operator<<(std::ostream& os, const CyclotomicElement& x) { return os << x.to_string(); }

}  // namespace fppkit::exact
