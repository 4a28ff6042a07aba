#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fppkit/exact/cyclotomic.hpp"
#include "fppkit/lattice/complex_mp.hpp"

namespace fppkit::geom {

using exact::Integer;
using exact::Rational;
using lattice::ComplexMP;

struct Branch {
  bool flip1 = false, flip2 = false;  // false = principal root
};

inline Rational exact_sqrt(const Rational& q) {
  if (q < 0) throw InvalidInput("no rational square root of " + q.get_str());
  Integer n = sqrt(Integer(q.get_num())), d = sqrt(Integer(q.get_den()));
  if (n * n != q.get_num() || d * d != q.get_den()) throw InvalidInput(q.get_str() + " is not a rational square");
  return Rational(n, d);
}

// F / (sqrt(L1) sqrt(L2)) over Q; only works when L1, L2 are squares.
inline Rational sqrt_section_eval(const Rational& F, const Rational& L1, const Rational& L2, Branch b = {}) {
  if (L1 == 0 || L2 == 0) throw InvalidInput("on branch locus");
  Rational r1 = exact_sqrt(L1), r2 = exact_sqrt(L2);
  if (b.flip1) r1 = -r1;
  if (b.flip2) r2 = -r2;
  return F / (r1 * r2);
}

// Same with principal complex roots; |L| <= tol counts as the branch locus.
// The result is checked against v^2 L1 L2 = F^2.
inline ComplexMP sqrt_section_eval(const ComplexMP& F, const ComplexMP& L1, const ComplexMP& L2, Branch b,
                                   const mpf_class& tol) {
  if (L1.abs() <= tol || L2.abs() <= tol) throw InvalidInput("on branch locus");
  ComplexMP r1 = L1.sqrt(), r2 = L2.sqrt();
  if (b.flip1) r1 = -r1;
  if (b.flip2) r2 = -r2;
  ComplexMP v = F / (r1 * r2);
  mpf_class scale = F.abs2();
  if (scale < 1) scale = 1;
  if ((v * v * L1 * L2 - F * F).abs() > tol * scale) throw Error("sqrt_section_eval lost precision");
  return v;
}

inline ComplexMP cube_root_of_unity(mp_bitcnt_t prec) {
  mpf_class s(3, prec);
  s = sqrt(s);
  return ComplexMP(mpf_class(-0.5, prec), mpf_class(s / 2, prec), prec);
}

// The two cut forms R1 + w R4 + w^2 R7 and R1 + w^2 R4 + w R7.
inline std::pair<ComplexMP, ComplexMP> cut_forms(const ComplexMP& R1, const ComplexMP& R4, const ComplexMP& R7) {
  auto w = cube_root_of_unity(R1.precision());
  auto w2 = w * w;
  return {R1 + w * R4 + w2 * R7, R1 + w2 * R4 + w * R7};
}

// f_k = t_{12k} / (f1 f2) for k >= 3; t[i] holds t_{1,2,i+3}. Every f_k^3 is
// checked against c_k with `same`.
template <class T, class Same>
std::vector<T> cube_root_disambiguate(const std::vector<T>& c, const std::vector<T>& t, const T& f1, const T& f2,
                                      Same same, std::function<bool(const T&)> is_zero) {
  if (c.size() < 2 || t.size() + 2 != c.size()) throw InvalidInput("need c_1..c_n and t_{12k} for k = 3..n");
  for (const auto& x : c)
    if (is_zero(x)) throw InvalidInput("cube values must be nonzero");
  if (!same(f1 * f1 * f1, c[0]) || !same(f2 * f2 * f2, c[1])) throw InvalidInput("f1, f2 are not cube roots of c1, c2");
  std::vector<T> f{f1, f2};
  T p = f1 * f2;
  for (std::size_t k = 0; k < t.size(); ++k) {
    T fk = t[k] / p;
    if (!same(fk * fk * fk, c[k + 2])) throw InvalidInput("inconsistent triple data at k = " + std::to_string(k + 3));
    f.push_back(fk);
  }
  return f;
}

template <class T>
std::vector<T> cube_root_disambiguate(const std::vector<T>& c, const std::vector<T>& t, const T& f1, const T& f2) {
  return cube_root_disambiguate<T>(
      c, t, f1, f2, [](const T& a, const T& b) { return a == b; }, [](const T& a) { return a == a - a; });
}

inline std::vector<ComplexMP> cube_root_disambiguate(const std::vector<ComplexMP>& c, const std::vector<ComplexMP>& t,
                                                     const ComplexMP& f1, const ComplexMP& f2, const mpf_class& tol) {
  return cube_root_disambiguate<ComplexMP>(
      c, t, f1, f2,
      [&](const ComplexMP& a, const ComplexMP& b) {
        mpf_class s = b.abs();
        if (s < 1) s = 1;
        return (a - b).abs() <= tol * s;
      },
      [&](const ComplexMP& a) { return a.abs() <= tol; });
}

// All nine choices (zeta^a f1, zeta^b f2).
template <class T, class... Rest>
std::vector<std::vector<T>> cube_root_orbit(const std::vector<T>& c, const std::vector<T>& t, const T& f1, const T& f2,
                                            const T& zeta, Rest&&... rest) {
  std::vector<std::vector<T>> out;
  T za = zeta / zeta;
  for (int a = 0; a < 3; ++a, za = za * zeta) {
    T zb = zeta / zeta;
    for (int b = 0; b < 3; ++b, zb = zb * zeta) out.push_back(cube_root_disambiguate(c, t, za * f1, zb * f2, rest...));
  }
  return out;
}

struct KeyCheck {
  bool relation = false;  // s1 s4 = s2 s3
  bool central = false;   // central weights (w, 1, 1, w^2)
  bool h = false;         // h weights (w^2a, w^(a+b), w^(a+b), w^2b)
  explicit operator bool() const { return relation && central && h; }
};

// Weights are exponents of w, taken mod 3.
template <class T>
KeyCheck key_weight_check(const std::array<T, 4>& s, const std::array<int, 4>& central, const std::array<int, 4>& h,
                          int a, int b) {
  auto m3 = [](int x) { return ((x % 3) + 3) % 3; };
  KeyCheck k;
  k.relation = s[0] * s[3] == s[1] * s[2];
  const std::array<int, 4> want_c{1, 0, 0, 2}, want_h{2 * a, a + b, a + b, 2 * b};
  k.central = k.h = true;
  for (int i = 0; i < 4; ++i) {
    k.central &= m3(central[i]) == want_c[i];
    k.h &= m3(h[i]) == m3(want_h[i]);
  }
  return k;
}

}  // namespace fppkit::geom
