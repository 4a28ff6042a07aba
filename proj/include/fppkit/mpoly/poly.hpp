#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fppkit/exact/ring.hpp"
#include "fppkit/mpoly/monomial.hpp"

namespace fppkit::mpoly {

using exact::RingTraits;

// Sparse polynomial: terms sorted by decreasing monomial under `order`,
// no zero coefficients, no repeated monomials. `proto` is any element of the
// coefficient ring; it fixes the prime / modulus / field.
template <class C>
class Poly {
 public:
  using Coeff = C;
  using Term = std::pair<Monomial, C>;
  using R = RingTraits<C>;

  Poly(std::size_t nvars, Order order, C proto)
      : n_(nvars), order_(order), proto_(R::zero_like(proto)) {}

  static Poly constant(std::size_t nvars, Order order, const C& c) {
    Poly p(nvars, order, c);
    if (!R::is_zero(c)) p.terms_.emplace_back(Monomial(nvars), c);
    return p;
  }
  static Poly variable(std::size_t nvars, Order order, const C& proto, std::size_t i) {
    if (i >= nvars) throw InvalidInput("variable index out of range");
    Poly p(nvars, order, proto);
    p.terms_.emplace_back(Monomial::variable(nvars, i), R::one_like(proto));
    return p;
  }
  static Poly term(std::size_t nvars, Order order, const Monomial& m, const C& c) {
    if (m.arity() != nvars) throw InvalidInput("monomial arity mismatch");
    Poly p(nvars, order, c);
    if (!R::is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }
  // Terms in any order; duplicates are summed.
  static Poly from_terms(std::size_t nvars, Order order, const C& proto, std::vector<Term> terms) {
    Poly p(nvars, order, proto);
    for (auto& t : terms)
      if (t.first.arity() != nvars) throw InvalidInput("monomial arity mismatch");
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  std::size_t nvars() const { return n_; }
  Order order() const { return order_; }
  const C& proto() const { return proto_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  C zero() const { return proto_; }
  C one() const { return R::one_like(proto_); }

  const Monomial& leading_monomial() const {
    if (is_zero()) throw InvalidInput("leading monomial of zero polynomial");
    return terms_.front().first;
  }
  const C& leading_coeff() const {
    if (is_zero()) throw InvalidInput("leading coefficient of zero polynomial");
    return terms_.front().second;
  }

  // Total degree; -1 for zero.
  long degree() const {
    long d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.first.degree()));
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.first.degree() != terms_.front().first.degree()) return false;
    return true;
  }

  C coeff(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.first == m) return t.second;
    return proto_;
  }

  Poly with_order(Order o) const {
    Poly p(n_, o, proto_);
    p.terms_ = terms_;
    p.sort();
    return p;
  }

  Poly operator-() const {
    Poly p(*this);
    for (auto& t : p.terms_) t.second = C(-t.second);
    return p;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return a.merge(b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return a.merge(b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.n_, a.order_, a.proto_);
    if (a.is_zero() || b.is_zero()) return r;
    // Accumulate in an ordered map keyed by exponent vector, then sort.
    std::map<std::vector<Monomial::Exp>, std::pair<Monomial, C>> acc;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma * mb;
        auto it = acc.find(m.exponents());
        if (it == acc.end()) acc.emplace(m.exponents(), std::make_pair(m, C(ca * cb)));
        else it->second.second = it->second.second + ca * cb;
      }
    for (auto& kv : acc)
      if (!R::is_zero(kv.second.second)) r.terms_.push_back(std::move(kv.second));
    r.sort();
    return r;
  }

  Poly scaled(const C& c) const {
    Poly r(n_, order_, proto_);
    if (R::is_zero(c)) return r;
    for (const auto& t : terms_) {
      C v = t.second * c;
      if (!R::is_zero(v)) r.terms_.emplace_back(t.first, std::move(v));
    }
    return r;
  }

  // c * m * this; multiplying by a monomial preserves the term order.
  Poly mul_term(const Monomial& m, const C& c) const {
    Poly r(n_, order_, proto_);
    if (R::is_zero(c)) return r;
    for (const auto& t : terms_) {
      C v = t.second * c;
      if (!R::is_zero(v)) r.terms_.emplace_back(t.first * m, std::move(v));
    }
    return r;
  }

  Poly pow(unsigned e) const {
    Poly acc = constant(n_, order_, one()), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  Poly derivative(std::size_t i) const {
    if (i >= n_) throw InvalidInput("derivative: variable index out of range");
    Poly r(n_, order_, proto_);
    std::vector<Term> out;
    for (const auto& t : terms_) {
      auto e = t.first[i];
      if (!e) continue;
      auto exps = t.first.exponents();
      exps[i] -= 1;
      C v = t.second * R::from_rational(proto_, Rational(e));
      if (!R::is_zero(v)) out.emplace_back(Monomial(std::move(exps)), std::move(v));
    }
    r.terms_ = std::move(out);
    r.sort();
    return r;
  }

  // Horner-free evaluation with a per-variable power cache.
  C evaluate(const std::vector<C>& point) const {
    if (point.size() != n_)
      throw InvalidInput("evaluate: point has " + std::to_string(point.size()) + " coordinates, expected " +
                         std::to_string(n_));
    std::vector<std::vector<C>> powers(n_);
    auto power = [&](std::size_t i, Monomial::Exp e) -> const C& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(R::one_like(proto_));
      while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
      return cache[e];
    };
    C acc = proto_;
    for (const auto& [m, c] : terms_) {
      C v = c;
      for (std::size_t i = 0; i < n_; ++i)
        if (m[i]) v = v * power(i, m[i]);
      acc = acc + v;
    }
    return acc;
  }

  // Substitute x_i -> images[i] (polynomials in a possibly different ring
  // of variables, same coefficients).
  Poly substitute(const std::vector<Poly>& images) const {
    if (images.size() != n_) throw InvalidInput("substitute: wrong number of images");
    if (images.empty()) return *this;
    const Poly& ref = images.front();
    Poly acc(ref.n_, ref.order_, proto_);
    std::vector<std::vector<Poly>> powers(n_);
    for (const auto& [m, c] : terms_) {
      Poly v = constant(ref.n_, ref.order_, c);
      for (std::size_t i = 0; i < n_; ++i) {
        if (!m[i]) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(ref.n_, ref.order_, one()));
        while (cache.size() <= m[i]) cache.push_back(cache.back() * images[i]);
        v = v * cache[m[i]];
      }
      acc = acc + v;
    }
    return acc;
  }

  template <class D, class F>
  Poly<D> map_coeffs(const D& proto, F&& fn) const {
    std::vector<typename Poly<D>::Term> out;
    for (const auto& [m, c] : terms_) out.emplace_back(m, fn(c));
    return Poly<D>::from_terms(n_, order_, proto, std::move(out));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string cs = R::to_string(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      std::string t;
      if (m.is_one()) t = cs;
      else if (R::is_one(c) || cs == "1") t = m.to_string(names);
      else t = cs + "*" + m.to_string(names);
      if (out.empty()) out = neg ? "-" + t : t;
      else out += (neg ? " - " : " + ") + t;
    }
    return out;
  }
  std::string to_string() const { return to_string(default_names(n_)); }

 private:
  void check(const Poly& o) const {
    if (n_ != o.n_) throw InvalidInput("polynomial arity mismatch");
    if (order_ != o.order_) throw InvalidInput("polynomial monomial order mismatch");
  }

  void sort() {
    std::sort(terms_.begin(), terms_.end(), [o = order_](const Term& a, const Term& b) {
      return Monomial::compare(a.first, b.first, o) > 0;
    });
  }

  void normalize() {
    sort();
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) out.back().second = out.back().second + t.second;
      else out.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : out)
      if (!R::is_zero(t.second)) terms_.push_back(std::move(t));
  }

  Poly merge(const Poly& b, bool subtract) const {
    check(b);
    Poly r(n_, order_, proto_);
    r.terms_.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = Monomial::compare(terms_[i].first, b.terms_[j].first, order_);
      if (c > 0) r.terms_.push_back(terms_[i++]);
      else if (c < 0) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? C(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        C v = subtract ? C(terms_[i].second - b.terms_[j].second) : C(terms_[i].second + b.terms_[j].second);
        if (!R::is_zero(v)) r.terms_.emplace_back(terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t n_;
  Order order_;
  C proto_;
  std::vector<Term> terms_;
};

template <class C>
std::ostream& operator<<(std::ostream& os, const Poly<C>& p) {
  return os << p.to_string();
}

}  // namespace fppkit::mpoly
