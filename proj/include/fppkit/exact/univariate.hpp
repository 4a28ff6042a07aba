#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fppkit/exact/integer.hpp"

namespace fppkit::exact {

// Dense univariate polynomial, coefficients low degree first, no trailing
// zeros. T is Integer or Rational.
template <class T>
class Univariate {
 public:
  Univariate() = default;
  explicit Univariate(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Univariate monomial(std::size_t deg, const T& c = T(1)) {
    std::vector<T> v(deg + 1, T(0));
    v[deg] = c;
    return Univariate(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& leading() const { return c_.back(); }

  Univariate derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Univariate(std::move(d));
  }

  friend Univariate operator+(const Univariate& a, const Univariate& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Univariate(std::move(r));
  }
  friend Univariate operator-(const Univariate& a, const Univariate& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Univariate(std::move(r));
  }
  friend Univariate operator*(const Univariate& a, const Univariate& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Univariate(std::move(r));
  }
  friend Univariate operator*(const T& s, const Univariate& a) {
    std::vector<T> r(a.c_);
    for (auto& x : r) x *= s;
    return Univariate(std::move(r));
  }
  friend bool operator==(const Univariate& a, const Univariate& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
      const T& a = c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      std::string mag = T(abs(a)).get_str();
      bool neg = a < 0;
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      bool unit = (abs(a) == 1);
      if (i == 0) out += mag;
      else {
        if (!unit) out += mag + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = Univariate<Integer>;
using RatPoly = Univariate<Rational>;

inline RatPoly to_rational(const IntPoly& f) {
  std::vector<Rational> c;
  for (const auto& a : f.coeffs()) c.emplace_back(a);
  return RatPoly(std::move(c));
}

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  long db = b.degree();
  std::vector<Rational> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, Rational(0));
  for (long i = a.degree(); i >= db; --i) {
    Rational f = r[static_cast<std::size_t>(i)] / b.leading();
    if (f == 0) continue;
    q[static_cast<std::size_t>(i - db)] = f;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

inline RatPoly make_monic(const RatPoly& f) {
  if (f.is_zero()) return f;
  return Rational(1 / f.leading()) * f;
}

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

// Returns (g, s) with s*a = g mod m, g = gcd(a, m) monic.
inline std::pair<RatPoly, RatPoly> half_gcdex(const RatPoly& a, const RatPoly& m) {
  RatPoly r0 = m, r1 = divmod(a, m).second;
  RatPoly s0, s1({Rational(1)});
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {r0, s0};
  Rational lc = r0.leading();
  return {Rational(1 / lc) * r0, Rational(1 / lc) * s0};
}

inline bool is_squarefree(const IntPoly& f) {
  if (f.degree() <= 0) return true;
  auto g = poly_gcd(to_rational(f), to_rational(f.derivative()));
  return g.degree() == 0;
}

// Content (gcd of coefficients), sign taken so the leading coefficient of
// f / content is positive.
inline Integer content(const IntPoly& f) {
  Integer g = 0;
  for (const auto& a : f.coeffs()) g = gcd(g, a);
  if (!f.is_zero() && f.leading() < 0) g = -g;
  return g;
}

inline IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  Integer c = content(f);
  std::vector<Integer> v;
  for (const auto& a : f.coeffs()) v.push_back(exact_div(a, c));
  return IntPoly(std::move(v));
}

inline Integer height(const IntPoly& f) {
  Integer h = 0;
  for (const auto& a : f.coeffs())
    if (abs(a) > h) h = abs(a);
  return h;
}

inline Integer eval_mod(const IntPoly& f, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (long i = f.degree(); i >= 0; --i) acc = mod_floor(acc * x + f.coeffs()[static_cast<std::size_t>(i)], m);
  return acc;
}

}  // namespace fppkit::exact
