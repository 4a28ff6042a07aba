#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fppkit/exact/number_field.hpp"
#include "fppkit/exact/residue.hpp"
#include "fppkit/exact/univariate.hpp"
#include "fppkit/lattice/complex_mp.hpp"
#include "fppkit/lattice/lll.hpp"

namespace fppkit::lattice {

using exact::IntPoly;
using exact::Residue;

struct MinPolyCandidate {
  IntPoly poly;  // content 1, leading coefficient positive
  unsigned degree = 0;
  Integer height;
  double margin = 0;  // |b_2| / |b_1| of the reduced relation lattice
};

struct Recognition {
  std::optional<MinPolyCandidate> candidate;
  std::optional<MinPolyCandidate> rejected;  // best failing candidate, for diagnostics
  std::string reason;
  explicit operator bool() const { return candidate.has_value(); }
};

constexpr double kFloatMarginThreshold = 100.0;

namespace detail {

inline mpf_class row_norm(const std::vector<Integer>& v, mp_bitcnt_t prec = 128) {
  mpf_class s(dot(v, v), prec), r(0, prec);
  mpf_sqrt(r.get_mpf_t(), s.get_mpf_t());
  return r;
}

inline double norm_ratio(const IntMatrix& reduced) {
  if (reduced.size() < 2) return 0;
  mpf_class a = row_norm(reduced[0]), b = row_norm(reduced[1]);
  if (a == 0) return 0;
  mpf_class q(b / a, 128);
  // ratios beyond double range are saturated
  double d = q.get_d();
  return std::isfinite(d) ? d : 1e300;
}

// Normalise a coefficient vector into a MinPolyCandidate (content 1, lc > 0).
inline std::optional<MinPolyCandidate> to_candidate(const std::vector<Integer>& coeffs, double margin) {
  IntPoly f(coeffs);
  if (f.degree() < 1) return std::nullopt;
  f = exact::primitive_part(f);
  MinPolyCandidate c;
  c.degree = static_cast<unsigned>(f.degree());
  c.height = exact::height(f);
  c.poly = std::move(f);
  c.margin = margin;
  return c;
}

}  // namespace detail

// Basis of {c in Z^n : sum c_j v_j = 0 mod m}; v[unit] must be invertible mod m.
inline IntMatrix kernel_lattice_mod(const std::vector<Integer>& v, const Integer& m, std::size_t unit) {
  auto inv = inverse_mod(v.at(unit), m);
  if (!inv) throw InvalidInput("kernel_lattice_mod: pivot value is not a unit");
  std::size_t n = v.size();
  IntMatrix rows;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> r(n, Integer(0));
    if (j == unit) {
      r[unit] = m;
    } else {
      r[j] = 1;
      r[unit] = mod_floor(-v[j] * *inv, m);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline bool padic_precision_ok(const Integer& modulus, unsigned max_degree, const Integer& height_bound) {
  return modulus > ipow(2 * height_bound, max_degree + 2);
}

// Smallest-degree integer polynomial of height <= H vanishing at r mod p^k.
inline Recognition minpoly_from_padic(const Residue& r, unsigned max_degree, const Integer& height_bound,
                                      bool force = false) {
  if (max_degree < 1) throw InvalidInput("minpoly_from_padic: max_degree must be >= 1");
  if (height_bound < 1) throw InvalidInput("minpoly_from_padic: height bound must be positive");
  const Integer& M = r.modulus();
  if (!force && !padic_precision_ok(M, max_degree, height_bound))
    throw InsufficientPrecision("p^k = " + M.get_str() + " does not exceed (2H)^(d+2); raise k or pass force");
  Recognition out;
  for (unsigned d = 1; d <= max_degree; ++d) {
    std::vector<Integer> powers(d + 1);
    powers[0] = 1;
    for (unsigned i = 1; i <= d; ++i) powers[i] = mod_floor(powers[i - 1] * r.value(), M);
    auto red = lll_reduce(kernel_lattice_mod(powers, M, 0));
    double margin = detail::norm_ratio(red.basis);
    // the reduced basis is short-first but not sorted; try every vector in order
    for (const auto& row : red.basis) {
      auto c = detail::to_candidate(row, margin);
      if (!c) continue;
      bool good = c->height <= height_bound && exact::eval_mod(c->poly, r.value(), M) == 0 &&
                  exact::is_squarefree(c->poly);
      if (good && c->degree == d) {
        out.candidate = c;
        return out;
      }
      if (!out.rejected || c->height < out.rejected->height) out.rejected = c;
    }
  }
  out.reason = "no relation of height <= " + height_bound.get_str() + " up to degree " + std::to_string(max_degree);
  return out;
}

inline mpf_class evaluate_abs(const IntPoly& f, const ComplexMP& x) {
  ComplexMP acc(x.precision());
  for (long i = f.degree(); i >= 0; --i)
    acc = acc * x + ComplexMP::from_rational(Rational(f.coeffs()[static_cast<std::size_t>(i)]), x.precision());
  return acc.abs();
}

// Integer relation among 1, x, ..., x^d scaled by 10^N. Accepts at margin >= 100
// and |f(x)| < 10^(-N/2).
inline Recognition minpoly_from_float(const ComplexMP& x, unsigned max_degree, unsigned digits) {
  if (max_degree < 1) throw InvalidInput("minpoly_from_float: max_degree must be >= 1");
  if (digits < 2) throw InvalidInput("minpoly_from_float: need at least 2 working digits");
  mp_bitcnt_t prec = std::max(x.precision(), bits_for_digits(digits));
  ComplexMP xx(x.re(), x.im(), prec);
  mpf_class scale(ipow(10, digits), prec);
  mpf_class tol(1, prec);
  tol /= mpf_class(ipow(10, digits / 2), prec);
  bool complex = !xx.is_real();

  Recognition out;
  std::vector<ComplexMP> powers{ComplexMP::from_rational(1, prec)};
  for (unsigned d = 1; d <= max_degree; ++d) {
    powers.push_back(powers.back() * xx);
    std::size_t extra = complex ? 2 : 1;
    IntMatrix rows;
    for (unsigned i = 0; i <= d; ++i) {
      std::vector<Integer> r(d + 1 + extra, Integer(0));
      r[i] = 1;
      r[d + 1] = round_real(mpf_class(powers[i].re() * scale, prec));
      if (complex) r[d + 2] = round_real(mpf_class(powers[i].im() * scale, prec));
      rows.push_back(std::move(r));
    }
    auto red = lll_reduce(rows);
    double margin = detail::norm_ratio(red.basis);
    auto c = detail::to_candidate(std::vector<Integer>(red.basis[0].begin(), red.basis[0].begin() + d + 1), margin);
    if (!c) continue;
    bool sound = evaluate_abs(c->poly, xx) < tol;
    if (sound && margin >= kFloatMarginThreshold && c->degree == d) {
      out.candidate = c;
      return out;
    }
    if (!out.rejected || c->margin > out.rejected->margin) out.rejected = c;
  }
  out.reason = "no relation with margin >= 100 up to degree " + std::to_string(max_degree);
  return out;
}

// Recovers x in K from its image r mod p^k, given the image t of the field
// generator. Solves den*r = sum a_i t^i with small (den, a_i) and checks the
// embedding exactly.
inline std::optional<exact::NumberFieldElement> nf_reconstruct(const Residue& r, const Residue& t,
                                                               const exact::FieldPtr& field) {
  if (!r.same_ring(t)) throw InvalidInput("nf_reconstruct: residues live in different rings");
  std::size_t D = field->degree();
  const Integer& M = r.modulus();
  std::vector<Integer> v{r.value()};
  Integer tp = 1;
  for (std::size_t i = 0; i < D; ++i) {
    v.push_back(mod_floor(-tp, M));
    tp = mod_floor(tp * t.value(), M);
  }
  auto red = lll_reduce(kernel_lattice_mod(v, M, 1));
  // uniqueness bound on the entries
  Integer bound;
  mpz_root(bound.get_mpz_t(), Integer(M / 2).get_mpz_t(), static_cast<unsigned long>(D + 1));
  for (const auto& row : red.basis) {
    if (row[0] == 0 || max_abs_entry(row) > bound) continue;
    std::vector<Rational> coords;
    for (std::size_t i = 0; i < D; ++i) coords.push_back(Rational(row[i + 1], row[0]));
    for (auto& q : coords) q.canonicalize();
    exact::NumberFieldElement x(field, coords);
    if (exact::nf_embed_mod_pk(x, t) == r) return x;
  }
  return std::nullopt;
}

inline std::string format_candidate(const MinPolyCandidate& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", c.margin);
  return c.poly.to_string("x") + "  degree=" + std::to_string(c.degree) + " height=" + c.height.get_str() +
         " margin=" + buf;
}

}  // namespace fppkit::lattice
