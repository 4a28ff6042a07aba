#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <type_traits>
#include <utility>
#include <vector>

#include "fppkit/mpoly/ideal.hpp"

namespace fppkit::groebner {

using exact::Rational;
using mpoly::IdealBasis;
using mpoly::Monomial;
using mpoly::Order;
using mpoly::Poly;
using mpoly::RingTraits;

template <class C>
struct GroebnerBasis {
  IdealBasis<C> basis;
  Order order;
  bool reduced = false;

  const std::vector<Poly<C>>& polys() const { return basis.generators(); }
  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : basis.generators()) out.push_back(g.leading_monomial());
    return out;
  }
};

struct BuchbergerOptions {
  // Abort when an S-pair of degree above the cap is selected.
  std::optional<unsigned> degree_cap;
};

namespace detail {

template <class C>
Poly<C> make_monic(const Poly<C>& f) {
  if (f.is_zero()) return f;
  return f.scaled(RingTraits<C>::inverse(f.leading_coeff()));
}

// Scales a polynomial with rational coefficients to a primitive integral one
// with positive leading coefficient.
inline Poly<Rational> primitive_integral(const Poly<Rational>& f) {
  if (f.is_zero()) return f;
  exact::Integer den = 1, num = 0;
  for (const auto& t : f.terms()) den = exact::lcm(den, t.second.get_den());
  for (const auto& t : f.terms()) num = exact::gcd(num, Rational(t.second * den).get_num());
  Rational s(den, num);
  s.canonicalize();
  if (f.leading_coeff() < 0) s = -s;
  return f.scaled(s);
}

template <class C>
constexpr bool fraction_free = std::is_same_v<C, Rational>;

// Index of the first basis element whose leading monomial divides m.
template <class C>
std::optional<std::size_t> find_reducer(const std::vector<Poly<C>>& G, const Monomial& m) {
  for (std::size_t i = 0; i < G.size(); ++i)
    if (!G[i].is_zero() && G[i].leading_monomial().divides(m)) return i;
  return std::nullopt;
}

// Full reduction of f modulo G. Over the rationals with fraction-free
// arithmetic the result is a nonzero rational multiple of the remainder.
template <class C>
Poly<C> reduce_full(const Poly<C>& f, const std::vector<Poly<C>>& G, bool fraction_free_mode) {
  using R = RingTraits<C>;
  Poly<C> p = f;
  std::vector<typename Poly<C>::Term> rem;
  while (!p.is_zero()) {
    const auto& [m, c] = p.terms().front();
    auto idx = find_reducer(G, m);
    if (!idx) {
      rem.emplace_back(m, c);
      // drop the leading term
      p = p - Poly<C>::term(p.nvars(), p.order(), m, c);
      continue;
    }
    const Poly<C>& g = G[*idx];
    Monomial q = m / g.leading_monomial();
    if (fraction_free_mode) {
      C a = g.leading_coeff(), b = c;
      p = p.scaled(a) - g.mul_term(q, b);
      for (auto& t : rem) t.second = t.second * a;
      if constexpr (fraction_free<C>) {
        // Strip the common content of p and the remainder so far.
        exact::Integer gc = 0;
        for (const auto& t : p.terms()) gc = exact::gcd(gc, t.second.get_num());
        for (const auto& t : rem) gc = exact::gcd(gc, t.second.get_num());
        if (gc > 1) {
          Rational inv(1, gc);
          p = p.scaled(inv);
          for (auto& t : rem) t.second *= inv;
        }
      }
    } else {
      p = p - g.mul_term(q, c * R::inverse(g.leading_coeff()));
    }
  }
  return Poly<C>::from_terms(f.nvars(), f.order(), f.proto(), std::move(rem));
}

template <class C>
Poly<C> s_polynomial(const Poly<C>& f, const Poly<C>& g) {
  Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  return f.mul_term(l / f.leading_monomial(), g.leading_coeff()) -
         g.mul_term(l / g.leading_monomial(), f.leading_coeff());
}

}  // namespace detail

// Reduced Groebner basis by Buchberger's algorithm with the normal selection
// strategy, the coprime criterion and the chain criterion.
template <class C>
GroebnerBasis<C> buchberger(const IdealBasis<C>& input, std::optional<Order> order = std::nullopt,
                            const BuchbergerOptions& opts = {}) {
  using R = RingTraits<C>;
  if (!R::is_field(input.proto()))
    throw NotAField("Groebner bases need a field; ring " + R::tag(input.proto()) + " is not one");
  IdealBasis<C> I = order ? input.with_order(*order) : input;
  Order ord = I.order();
  const bool ff = detail::fraction_free<C>;

  auto prepare = [&](const Poly<C>& f) {
    if constexpr (detail::fraction_free<C>) return detail::primitive_integral(f);
    else return detail::make_monic(f);
  };

  std::vector<Poly<C>> G;
  for (const auto& g : I.generators()) {
    if (g.is_zero()) continue;
    Poly<C> r = detail::reduce_full(g, G, ff);
    if (!r.is_zero()) G.push_back(prepare(r));
  }

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace(i, j);

  auto in_pairs = [&](std::size_t a, std::size_t b) { return pairs.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!pairs.empty()) {
    // normal selection: smallest lcm of leading monomials, ties by index
    auto best = pairs.begin();
    Monomial best_l = Monomial::lcm(G[best->first].leading_monomial(), G[best->second].leading_monomial());
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      Monomial l = Monomial::lcm(G[it->first].leading_monomial(), G[it->second].leading_monomial());
      if (Monomial::compare(l, best_l, ord) < 0) {
        best = it;
        best_l = std::move(l);
      }
    }
    auto [i, j] = *best;
    pairs.erase(best);
    if (opts.degree_cap && best_l.degree() > *opts.degree_cap)
      throw DegreeCapExceeded("S-pair of degree " + std::to_string(best_l.degree()) + " exceeds cap " +
                              std::to_string(*opts.degree_cap));
    const Monomial& li = G[i].leading_monomial();
    const Monomial& lj = G[j].leading_monomial();
    if (Monomial::coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (G[k].leading_monomial().divides(best_l) && !in_pairs(i, k) && !in_pairs(j, k)) chain = true;
    }
    if (chain) continue;
    Poly<C> r = detail::reduce_full(detail::s_polynomial(G[i], G[j]), G, ff);
    if (r.is_zero()) continue;
    G.push_back(prepare(r));
    std::size_t n = G.size() - 1;
    for (std::size_t k = 0; k < n; ++k) pairs.emplace(k, n);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<Poly<C>> minimal;
  for (std::size_t a = 0; a < G.size(); ++a) {
    bool drop = false;
    for (std::size_t b = 0; b < G.size() && !drop; ++b) {
      if (a == b) continue;
      const auto& la = G[a].leading_monomial();
      const auto& lb = G[b].leading_monomial();
      if (lb.divides(la) && (lb != la || b < a)) drop = true;
    }
    if (!drop) minimal.push_back(G[a]);
  }
  // Interreduce tails, then normalize to monic.
  std::vector<Poly<C>> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<Poly<C>> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(minimal[b]);
    Poly<C> r = detail::reduce_full(minimal[a], others, false);
    reduced.push_back(detail::make_monic(r));
  }
  std::sort(reduced.begin(), reduced.end(), [ord](const Poly<C>& a, const Poly<C>& b) {
    return Monomial::compare(a.leading_monomial(), b.leading_monomial(), ord) < 0;
  });
  return GroebnerBasis<C>{IdealBasis<C>(I.nvars(), ord, I.proto(), std::move(reduced)), ord, true};
}

// Remainder of f on division by G; no term of the result is divisible by a
// leading monomial of G.
template <class C>
Poly<C> normal_form(const Poly<C>& f, const GroebnerBasis<C>& G) {
  if (f.nvars() != G.basis.nvars()) throw InvalidInput("normal_form: arity mismatch");
  if (f.order() != G.order) throw InvalidInput("normal_form: monomial order mismatch");
  if (RingTraits<C>::tag(f.proto()) != RingTraits<C>::tag(G.basis.proto()))
    throw InvalidInput("normal_form: coefficient ring mismatch");
  return detail::reduce_full(f, G.polys(), false);
}

template <class C>
bool ideal_contains(const GroebnerBasis<C>& G, const Poly<C>& f) {
  return normal_form(f, G).is_zero();
}

}  // namespace fppkit::groebner
