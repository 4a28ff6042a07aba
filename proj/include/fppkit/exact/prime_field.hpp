#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "fppkit/exact/integer.hpp"

namespace fppkit::exact {

// Element of F_p for word-size p (< 2^31). The prime is stored inline so
// mixed-prime arithmetic is detected.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t prime, std::int64_t value) : p_(prime), v_(reduce(value, prime)) {}

  static Fp from_integer(std::uint32_t prime, const Integer& value) {
    return Fp(prime, static_cast<std::int64_t>(mod_floor(value, prime).get_ui()));
  }

  static Fp from_rational(std::uint32_t prime, const Rational& q) {
    Fp num = from_integer(prime, q.get_num());
    Fp den = from_integer(prime, q.get_den());
    if (den.is_zero())
      throw BadPrime("denominator " + q.get_den().get_str() + " divisible by " + std::to_string(prime));
    return num / den;
  }

  std::uint32_t prime() const { return p_; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  // Symmetric representative in (-p/2, p/2].
  std::int64_t centered() const {
    return v_ > p_ / 2 ? static_cast<std::int64_t>(v_) - p_ : static_cast<std::int64_t>(v_);
  }

  Fp inverse() const {
    if (v_ == 0) throw ArithmeticError("inverse of zero in F_" + std::to_string(p_));
    return pow(p_ - 2);
  }

  Fp pow(std::uint64_t e) const {
    std::uint64_t base = v_, acc = 1 % p_;
    while (e) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return Fp(p_, static_cast<std::uint32_t>(acc), raw_tag{});
  }

  Fp operator-() const { return Fp(p_, v_ == 0 ? 0 : p_ - v_, raw_tag{}); }

  friend Fp operator+(Fp a, Fp b) {
    a.check(b);
    std::uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(a.p_, s, raw_tag{});
  }
  friend Fp operator-(Fp a, Fp b) {
    a.check(b);
    return Fp(a.p_, a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, raw_tag{});
  }
  friend Fp operator*(Fp a, Fp b) {
    a.check(b);
    return Fp(a.p_, static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_), raw_tag{});
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  friend bool operator==(Fp a, Fp b) { return a.p_ == b.p_ && a.v_ == b.v_; }

  Fp scaled(long n) const { return *this * Fp(p_, n); }

  std::string to_string() const { return std::to_string(v_); }

 private:
  struct raw_tag {};
  Fp(std::uint32_t p, std::uint32_t v, raw_tag) : p_(p), v_(v) {}

  static std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
    if (p < 2) throw InvalidInput("F_p needs p >= 2");
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }

  void check(const Fp& o) const {
    if (p_ != o.p_)
      throw ArithmeticError("mixed primes: F_" + std::to_string(p_) + " vs F_" + std::to_string(o.p_));
  }

  std::uint32_t p_ = 2;
  std::uint32_t v_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value(); }

// Smallest generator of F_p^*; p prime.
inline std::uint32_t primitive_root(std::uint32_t p) {
  if (p == 2) return 1;
  std::uint32_t phi = p - 1, n = phi;
  std::uint32_t factors[32];
  int nf = 0;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors[nf++] = d;
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors[nf++] = n;
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (int i = 0; i < nf && ok; ++i) ok = Fp(p, g).pow(phi / factors[i]).value() != 1;
    if (ok) return g;
  }
  throw InvalidInput("no primitive root: " + std::to_string(p) + " is not prime");
}

}  // namespace fppkit::exact
