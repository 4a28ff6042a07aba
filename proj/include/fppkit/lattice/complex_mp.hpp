#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "fppkit/exact/integer.hpp"

namespace fppkit::lattice {

inline mp_bitcnt_t bits_for_digits(unsigned digits) {
  return static_cast<mp_bitcnt_t>(std::ceil(digits * 3.3219280948873623)) + 64;
}

// Parses a decimal real at the given precision; throws InvalidInput.
inline mpf_class parse_real(std::string_view text, mp_bitcnt_t prec) {
  auto s = std::string(fppkit::detail::trim(text));
  if (s.empty()) throw InvalidInput("empty real literal");
  if (s[0] == '+') s.erase(0, 1);
  mpf_class r(0, prec);
  if (r.set_str(s, 10) != 0) throw InvalidInput("not a decimal number: '" + std::string(text) + "'");
  return r;
}

inline std::string format_real(const mpf_class& x, unsigned digits) {
  mp_exp_t e;
  std::string m = x.get_str(e, 10, digits);
  if (m.empty()) return "0";
  std::string sign;
  if (m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  std::string out;
  if (e <= 0) out = "0." + std::string(static_cast<std::size_t>(-e), '0') + m;
  else if (static_cast<std::size_t>(e) >= m.size()) out = m + std::string(e - m.size(), '0');
  else out = m.substr(0, e) + "." + m.substr(e);
  return sign + out;
}

// Multiprecision complex number on top of mpf; only what recognition and the
// section evaluators need.
class ComplexMP {
 public:
  explicit ComplexMP(mp_bitcnt_t prec = 256) : re_(0, prec), im_(0, prec) {}
  ComplexMP(const mpf_class& re, const mpf_class& im, mp_bitcnt_t prec)
      : re_(re, prec), im_(im, prec) {}

  static ComplexMP from_rational(const Rational& q, mp_bitcnt_t prec) {
    return ComplexMP(mpf_class(q, prec), mpf_class(0, prec), prec);
  }

  // "re" or "re,im"
  static ComplexMP parse(std::string_view text, mp_bitcnt_t prec) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) return ComplexMP(parse_real(text, prec), mpf_class(0, prec), prec);
    return ComplexMP(parse_real(text.substr(0, comma), prec), parse_real(text.substr(comma + 1), prec), prec);
  }

  mp_bitcnt_t precision() const { return re_.get_prec(); }
  const mpf_class& re() const { return re_; }
  const mpf_class& im() const { return im_; }
  bool is_real() const { return im_ == 0; }

  ComplexMP operator+(const ComplexMP& o) const { return {mpf_class(re_ + o.re_), mpf_class(im_ + o.im_), precision()}; }
  ComplexMP operator-(const ComplexMP& o) const { return {mpf_class(re_ - o.re_), mpf_class(im_ - o.im_), precision()}; }
  ComplexMP operator-() const { return {mpf_class(-re_), mpf_class(-im_), precision()}; }
  ComplexMP operator*(const ComplexMP& o) const {
    auto p = precision();
    mpf_class r(re_ * o.re_ - im_ * o.im_, p), i(re_ * o.im_ + im_ * o.re_, p);
    return {r, i, p};
  }
  ComplexMP operator/(const ComplexMP& o) const {
    auto p = precision();
    mpf_class den(o.re_ * o.re_ + o.im_ * o.im_, p);
    if (den == 0) throw ArithmeticError("complex division by zero");
    mpf_class r((re_ * o.re_ + im_ * o.im_) / den, p), i((im_ * o.re_ - re_ * o.im_) / den, p);
    return {r, i, p};
  }
  ComplexMP conj() const { return {re_, mpf_class(-im_), precision()}; }

  mpf_class abs2() const { return mpf_class(re_ * re_ + im_ * im_, precision()); }
  mpf_class abs() const {
    mpf_class r(0, precision());
    mpf_sqrt(r.get_mpf_t(), abs2().get_mpf_t());
    return r;
  }

  ComplexMP pow(unsigned e) const {
    ComplexMP r = from_rational(1, precision()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::complex<double> approx() const { return {re_.get_d(), im_.get_d()}; }

  // Principal n-th root (n = 2 or 3 in practice): Newton polish of a double seed.
  ComplexMP root(unsigned n) const {
    if (n == 0) throw InvalidInput("zeroth root");
    auto p = precision();
    if (re_ == 0 && im_ == 0) return ComplexMP(p);
    std::complex<double> seed = std::pow(approx(), 1.0 / n);
    if (!std::isfinite(seed.real()) || !std::isfinite(seed.imag()))
      throw InsufficientPrecision("root seed outside double range");
    ComplexMP z(mpf_class(seed.real(), p), mpf_class(seed.imag(), p), p);
    // quadratic convergence from ~50 bits
    unsigned iters = 4;
    for (mp_bitcnt_t b = 50; b < p; b *= 2) ++iters;
    ComplexMP nn = from_rational(n, p);
    for (unsigned i = 0; i < iters; ++i) {
      ComplexMP zn1 = z.pow(n - 1);
      z = z - (zn1 * z - *this) / (nn * zn1);
    }
    return z;
  }
  ComplexMP sqrt() const { return root(2); }
  ComplexMP cbrt() const { return root(3); }

  std::string to_string(unsigned digits) const {
    if (im_ == 0) return format_real(re_, digits);
    return format_real(re_, digits) + "," + format_real(im_, digits);
  }

 private:
  mpf_class re_, im_;
};

// Nearest integer to x.
inline Integer round_real(const mpf_class& x) {
  mpf_class h(x + (x >= 0 ? 0.5 : -0.5), x.get_prec());
  mpf_class t(0, x.get_prec());
  mpf_trunc(t.get_mpf_t(), h.get_mpf_t());
  return Integer(t);
}

}  // namespace fppkit::lattice
