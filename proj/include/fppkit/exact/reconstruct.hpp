#pragma once

#include <optional>

#include "fppkit/exact/residue.hpp"
#include "fppkit/exact/univariate.hpp"

namespace fppkit::exact {

// Recovers a/b with |a| <= num_bound, 0 < b <= den_bound and a = b*r mod p^k.
// Half-extended Euclid on (p^k, r), stopped at the first remainder within
// num_bound. Returns nullopt when no such fraction exists; throws
// InsufficientPrecision when 2*N*D >= p^k (uniqueness not guaranteed).
inline std::optional<Rational> rational_reconstruct(const Residue& r, const Integer& num_bound,
                                                    const Integer& den_bound) {
  if (num_bound < 0 || den_bound < 1) throw InvalidInput("rational_reconstruct: bad bounds");
  const Integer& m = r.modulus();
  if (2 * num_bound * den_bound >= m)
    throw InsufficientPrecision("modulus " + r.prime().get_str() + "^" + std::to_string(r.exponent()) +
                                " too small for bounds (" + num_bound.get_str() + ", " +
                                den_bound.get_str() + ")");
  Integer r0 = m, r1 = r.value();
  Integer t0 = 0, t1 = 1;
  while (r1 > num_bound) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > den_bound) return std::nullopt;
  if (mod_floor(t1, r.prime()) == 0) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  Rational q(r1, t1);
  q.canonicalize();
  return q;
}

// Largest balanced bound N = D with 2*N*D < p^k.
inline Integer balanced_bound(const Integer& modulus) {
  Integer b = isqrt(Integer(modulus / 2));
  while (2 * b * b >= modulus && b > 0) --b;
  return b;
}

// Lifts a simple root r0 of f mod p to a root mod p^k by Newton iteration
// with doubling precision.
inline Residue hensel_root_lift(const IntPoly& f, const Integer& p, const Integer& r0, unsigned k) {
  if (k < 1) throw InvalidInput("hensel_root_lift: k must be >= 1");
  if (eval_mod(f, r0, p) != 0) throw InvalidInput("hensel_root_lift: r0 is not a root of f mod p");
  IntPoly df = f.derivative();
  if (eval_mod(df, r0, p) == 0) throw LiftObstructed(0, "derivative vanishes at the root mod p");
  Integer root = mod_floor(r0, p);
  unsigned prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    Integer m = ipow(p, prec);
    Integer fv = eval_mod(f, root, m);
    Integer dv = eval_mod(df, root, m);
    auto inv = inverse_mod(dv, m);
    if (!inv) throw LiftObstructed(prec, "derivative not invertible");
    root = mod_floor(root - fv * *inv, m);
  }
  return Residue(p, k, root);
}

// All roots of f in Z/p, by exhaustive search (p word-sized).
inline std::vector<Integer> roots_mod_p(const IntPoly& f, unsigned long p) {
  std::vector<Integer> out;
  for (unsigned long x = 0; x < p; ++x)
    if (eval_mod(f, Integer(x), Integer(p)) == 0) out.emplace_back(x);
  return out;
}

}  // namespace fppkit::exact
