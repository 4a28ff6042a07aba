#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fppkit/errors.hpp"

namespace fppkit {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// Representative of a in [0, m).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer isqrt(const Integer& a) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline bool is_probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

// Nearest integer to num/den, ties away from zero. den > 0.
inline Integer round_div(const Integer& num, const Integer& den) {
  Integer twice = 2 * num + (num >= 0 ? den : Integer(-den));
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), twice.get_mpz_t(), Integer(2 * den).get_mpz_t());
  return q;
}

// Exact division; caller guarantees den | num.
inline Integer exact_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline std::string to_string(const Rational& a) { return a.get_str(); }

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace detail

inline Integer parse_integer(std::string_view text) {
  auto s = detail::trim(text);
  if (!detail::is_integer_literal(s)) throw InvalidInput("not an integer: '" + std::string(text) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

// Accepts "a" or "a/b".
inline Rational parse_rational(std::string_view text) {
  auto s = detail::trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace exact {
using fppkit::exact_div;
using fppkit::gcd;
using fppkit::Integer;
using fppkit::inverse_mod;
using fppkit::ipow;
using fppkit::is_probable_prime;
using fppkit::isqrt;
using fppkit::lcm;
using fppkit::mod_floor;
using fppkit::parse_integer;
using fppkit::parse_rational;
using fppkit::Rational;
using fppkit::round_div;
}  // namespace exact

}  // namespace fppkit
