#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fppkit/exact/univariate.hpp"
#include "fppkit/groebner/buchberger.hpp"

namespace fppkit::groebner {

using exact::IntPoly;
using exact::Integer;
using exact::RatPoly;

// HS(t) = numerator(t) / (1-t)^n for the quotient by a homogeneous ideal.
struct HilbertData {
  IntPoly numerator;       // over (1-t)^n, n = number of variables
  std::size_t n = 0;
  RatPoly polynomial;      // Hilbert polynomial in m
  long regularity = 0;     // series coefficient = polynomial value for m >= regularity
  std::size_t dimension = 0;  // Krull dimension of the graded quotient

  // Coefficient of t^m in the series.
  Integer series_coefficient(unsigned long m) const {
    // 1/(1-t)^n contributes binom(j + n - 1, n - 1) at t^j.
    Integer acc = 0;
    const auto& c = numerator.coeffs();
    for (std::size_t i = 0; i < c.size() && i <= m; ++i) {
      if (c[i] == 0) continue;
      Integer b;
      if (n == 0) b = (m == i) ? 1 : 0;
      else mpz_bin_uiui(b.get_mpz_t(), m - i + n - 1, n - 1);
      acc += c[i] * b;
    }
    return acc;
  }

  exact::Rational polynomial_at(long m) const {
    exact::Rational acc = 0, x = m;
    const auto& c = polynomial.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }
};

namespace detail {

using MonoList = std::vector<Monomial>;

inline MonoList minimalize(MonoList gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exponents() < b.exponents();
  });
  MonoList out;
  for (auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(std::move(g));
  }
  return out;
}

inline IntPoly one_minus_t_pow(unsigned long d) {
  std::vector<Integer> c(d + 1, Integer(0));
  c[0] += 1;
  c[d] -= 1;
  return IntPoly(std::move(c));
}

// Numerator of the Hilbert series of k[x]/M for a minimally generated
// monomial ideal M (pivot recursion on a variable power).
inline IntPoly numerator_rec(const MonoList& M) {
  if (M.empty()) return IntPoly({Integer(1)});
  std::size_t n = M.front().arity();
  // pick the variable occurring in the most generators
  std::size_t best = n, best_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t cnt = 0;
    for (const auto& g : M)
      if (g[v]) ++cnt;
    if (cnt > best_count) {
      best_count = cnt;
      best = v;
    }
  }
  if (best_count <= 1) {
    // pairwise coprime generators
    IntPoly acc({Integer(1)});
    for (const auto& g : M) acc = acc * one_minus_t_pow(g.degree());
    return acc;
  }
  Monomial::Exp e = 0;
  for (const auto& g : M)
    if (g[best] && (e == 0 || g[best] < e)) e = g[best];
  Monomial pivot = Monomial::variable(n, best, e);
  MonoList sum = M;
  sum.push_back(pivot);
  MonoList quot;
  for (const auto& g : M) {
    auto ex = g.exponents();
    ex[best] = ex[best] > e ? ex[best] - e : 0;
    quot.emplace_back(std::move(ex));
  }
  IntPoly a = numerator_rec(minimalize(std::move(sum)));
  IntPoly b = numerator_rec(minimalize(std::move(quot)));
  return a + IntPoly::monomial(e) * b;
}

inline exact::Rational factorial(unsigned long k) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return exact::Rational(f);
}

}  // namespace detail

// Hilbert data of k[x_0..x_{n-1}] / (monomials).
inline HilbertData hilbert_from_monomials(std::size_t nvars, const std::vector<Monomial>& lead) {
  HilbertData h;
  h.n = nvars;
  h.numerator = detail::numerator_rec(detail::minimalize(lead));
  // Divide out (1-t) while the numerator vanishes at 1.
  std::vector<Integer> q = h.numerator.coeffs();
  std::size_t d = nvars;
  auto value_at_one = [](const std::vector<Integer>& c) {
    Integer s = 0;
    for (const auto& x : c) s += x;
    return s;
  };
  while (d > 0 && !q.empty() && value_at_one(q) == 0) {
    // synthetic division by (1 - t) = -(t - 1)
    std::vector<Integer> r(q.size() - 1);
    Integer carry = 0;
    for (std::size_t i = q.size(); i-- > 1;) {
      carry += q[i];
      r[i - 1] = carry;
    }
    for (auto& x : r) x = -x;
    q = std::move(r);
    --d;
  }
  IntPoly reduced(q);
  h.dimension = reduced.is_zero() ? 0 : d;
  if (reduced.is_zero()) {
    h.polynomial = RatPoly();
    h.regularity = 0;
    return h;
  }
  // P(m) = sum_i q_i * binom(m - i + d - 1, d - 1)
  RatPoly P;
  if (d > 0) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      RatPoly term({exact::Rational(1)});
      for (unsigned long j = 0; j + 1 < d; ++j) {
        exact::Rational shift = exact::Rational(static_cast<long>(d) - 1 - static_cast<long>(i) - static_cast<long>(j));
        term = term * RatPoly({shift, exact::Rational(1)});
      }
      term = exact::Rational(exact::Rational(q[i]) / detail::factorial(d - 1)) * term;
      P = P + term;
    }
  }
  h.polynomial = P;
  h.regularity = std::max<long>(0, reduced.degree() - static_cast<long>(d) + 1);
  return h;
}

template <class C>
HilbertData hilbert(const GroebnerBasis<C>& G) {
  if (!G.basis.is_homogeneous()) throw InvalidInput("hilbert: ideal is not homogeneous");
  return hilbert_from_monomials(G.basis.nvars(), G.leading_monomials());
}

// Dimension of degree-d standard monomials, by direct enumeration.
inline Integer count_standard_monomials(std::size_t nvars, const std::vector<Monomial>& lead, unsigned d) {
  Integer count = 0;
  for (const auto& m : mpoly::monomials_of_degree(nvars, d)) {
    bool in = false;
    for (const auto& g : lead)
      if (g.divides(m)) {
        in = true;
        break;
      }
    if (!in) ++count;
  }
  return count;
}

inline std::string format_hilbert_poly(const RatPoly& P, const std::string& var = "m") {
  if (P.is_zero()) return "0";
  std::string out;
  for (long i = P.degree(); i >= 0; --i) {
    const auto& a = P.coeffs()[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    std::string mag = exact::Rational(abs(a)).get_str();
    bool neg = a < 0;
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (i == 0) out += mag;
    else {
      if (abs(a) != 1) out += mag + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace fppkit::groebner
