#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fppkit/errors.hpp"

namespace fppkit::mpoly {

enum class Order { grevlex, lex };

inline const char* order_name(Order o) { return o == Order::grevlex ? "grevlex" : "lex"; }

inline Order parse_order(const std::string& s) {
  if (s == "grevlex") return Order::grevlex;
  if (s == "lex") return Order::lex;
  throw InvalidInput("unknown monomial order '" + s + "' (expected grevlex or lex)");
}

// Dense exponent vector with cached total degree.
class Monomial {
 public:
  using Exp = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t arity) : e_(arity, 0) {}
  explicit Monomial(std::vector<Exp> exps) : e_(std::move(exps)) {
    for (auto x : e_) deg_ += x;
  }

  static Monomial variable(std::size_t arity, std::size_t i, Exp power = 1) {
    Monomial m(arity);
    m.e_.at(i) = power;
    m.deg_ = power;
    return m;
  }

  std::size_t arity() const { return e_.size(); }
  std::uint64_t degree() const { return deg_; }
  Exp operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Exp>& exponents() const { return e_; }
  bool is_one() const { return deg_ == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    a.check(b);
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    r.deg_ += b.deg_;
    return r;
  }

  bool divides(const Monomial& b) const {
    check(b);
    if (deg_ > b.deg_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > b.e_[i]) return false;
    return true;
  }

  // b / a, assuming a | b.
  friend Monomial operator/(const Monomial& b, const Monomial& a) {
    a.check(b);
    Monomial r(b);
    for (std::size_t i = 0; i < r.e_.size(); ++i) {
      if (a.e_[i] > r.e_[i]) throw InvalidInput("monomial division is not exact");
      r.e_[i] -= a.e_[i];
    }
    r.deg_ -= a.deg_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    a.check(b);
    std::vector<Exp> r(a.e_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(a.e_[i], b.e_[i]);
    return Monomial(std::move(r));
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  // Three-way comparison under `order`: negative if a < b.
  static int compare(const Monomial& a, const Monomial& b, Order order) {
    if (order == Order::grevlex) {
      if (a.deg_ != b.deg_) return a.deg_ < b.deg_ ? -1 : 1;
      for (std::size_t i = a.e_.size(); i-- > 0;)
        if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i] ? -1 : 1;
      return 0;
    }
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
    return 0;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (!e_[i]) continue;
      if (!out.empty()) out += "*";
      out += names.at(i);
      if (e_[i] > 1) out += "^" + std::to_string(e_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  void check(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw InvalidInput("monomial arity mismatch");
  }

  std::vector<Exp> e_;
  std::uint64_t deg_ = 0;
};

inline std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

// All monomials of total degree d in n variables, ascending lex on the
// exponent vector.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<Monomial::Exp> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return out;
}

}  // namespace fppkit::mpoly
