#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include "fppkit/exact/integer.hpp"

namespace fppkit::exact {

// Element of Z/p^k. The modulus travels with the value; combining
// residues with different (p, k) is an error, never a silent coercion.
class Residue {
 public:
  Residue(const Integer& prime, unsigned exponent, const Integer& value)
      : mod_(make_modulus(prime, exponent)), value_(mod_floor(value, mod_->pk)) {}

  static Residue from_rational(const Rational& q, const Integer& prime, unsigned exponent) {
    Residue num(prime, exponent, q.get_num());
    if (q.get_den() == 1) return num;
    if (mod_floor(q.get_den(), prime) == 0)
      throw BadPrime("denominator " + q.get_den().get_str() + " divisible by " + prime.get_str());
    Residue den(num.mod_, q.get_den());
    return num * den.inverse();
  }

  const Integer& prime() const { return mod_->p; }
  unsigned exponent() const { return mod_->k; }
  const Integer& modulus() const { return mod_->pk; }
  const Integer& value() const { return value_; }

  bool same_ring(const Residue& o) const {
    return mod_ == o.mod_ || (mod_->k == o.mod_->k && mod_->p == o.mod_->p);
  }

  Residue with_value(const Integer& v) const { return Residue(mod_, v); }

  // Exact truncation to a smaller exponent.
  Residue truncate(unsigned k) const {
    if (k == 0 || k > mod_->k) throw InvalidInput("truncate: exponent out of range");
    return Residue(mod_->p, k, value_);
  }

  // Same representative read in a larger ring; only meaningful as a lift.
  Residue extend(unsigned k) const {
    if (k < mod_->k) throw InvalidInput("extend: exponent must not shrink");
    return Residue(mod_->p, k, value_);
  }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return mod_floor(value_, mod_->p) != 0; }

  // p-adic valuation of the representative, capped at k.
  unsigned valuation() const {
    if (value_ == 0) return mod_->k;
    unsigned v = 0;
    Integer t = value_;
    while (mod_floor(t, mod_->p) == 0) {
      t /= mod_->p;
      ++v;
    }
    return v;
  }

  Residue inverse() const {
    auto inv = inverse_mod(value_, mod_->pk);
    if (!inv) throw ArithmeticError("residue " + to_string() + " is not invertible");
    return Residue(mod_, *inv);
  }

  Residue pow(unsigned long e) const {
    Integer r;
    mpz_powm_ui(r.get_mpz_t(), value_.get_mpz_t(), e, mod_->pk.get_mpz_t());
    return Residue(mod_, r);
  }

  Residue operator-() const { return Residue(mod_, -value_); }

  friend Residue operator+(const Residue& a, const Residue& b) {
    a.check(b);
    return Residue(a.mod_, a.value_ + b.value_);
  }
  friend Residue operator-(const Residue& a, const Residue& b) {
    a.check(b);
    return Residue(a.mod_, a.value_ - b.value_);
  }
  friend Residue operator*(const Residue& a, const Residue& b) {
    a.check(b);
    return Residue(a.mod_, a.value_ * b.value_);
  }
  friend Residue operator/(const Residue& a, const Residue& b) { return a * b.inverse(); }
  friend bool operator==(const Residue& a, const Residue& b) {
    return a.same_ring(b) && a.value_ == b.value_;
  }

  Residue scaled(long n) const { return Residue(mod_, value_ * n); }

  std::string to_string() const {
    return value_.get_str() + " mod " + mod_->p.get_str() + "^" + std::to_string(mod_->k);
  }

  // Parses "v mod p^k" (also "v mod p" for k = 1).
  static Residue parse(std::string_view text) {
    auto s = fppkit::detail::trim(text);
    auto pos = s.find("mod");
    if (pos == std::string_view::npos) throw InvalidInput("residue needs 'mod': " + std::string(text));
    Integer v = parse_integer(s.substr(0, pos));
    auto rest = fppkit::detail::trim(s.substr(pos + 3));
    auto caret = rest.find('^');
    Integer p = parse_integer(rest.substr(0, caret));
    unsigned k = 1;
    if (caret != std::string_view::npos) k = static_cast<unsigned>(parse_integer(rest.substr(caret + 1)).get_ui());
    return Residue(p, k, v);
  }

 private:
  struct Modulus {
    Integer p;
    unsigned k;
    Integer pk;
  };

  Residue(std::shared_ptr<const Modulus> m, const Integer& v)
      : mod_(std::move(m)), value_(mod_floor(v, mod_->pk)) {}

  static std::shared_ptr<const Modulus> make_modulus(const Integer& p, unsigned k) {
    if (p < 2) throw InvalidInput("residue prime must be >= 2");
    if (k < 1) throw InvalidInput("residue exponent must be >= 1");
    return std::make_shared<const Modulus>(Modulus{p, k, ipow(p, k)});
  }

  void check(const Residue& o) const {
    if (!same_ring(o))
      throw ArithmeticError("mixed moduli: " + mod_->p.get_str() + "^" + std::to_string(mod_->k) +
                            " vs " + o.mod_->p.get_str() + "^" + std::to_string(o.mod_->k));
  }

  std::shared_ptr<const Modulus> mod_;
  Integer value_;
};

inline std::ostream& operator<<(std::ostream& os, const Residue& r) { return os << r.to_string(); }

}  // namespace fppkit::exact
