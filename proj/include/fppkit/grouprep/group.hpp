#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fppkit/errors.hpp"

namespace fppkit::grouprep {

using Index = std::uint32_t;

// Finite group given by its full multiplication table. Element 0 is the
// identity. Subgroups carry the embedding into their parent.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(std::string name, std::vector<std::vector<Index>> table, std::vector<std::string> labels = {})
      : name_(std::move(name)), mul_(std::move(table)), labels_(std::move(labels)) {
    std::size_t n = mul_.size();
    if (n == 0) throw InvalidInput("empty group");
    for (Index a = 0; a < n; ++a) {
      if (mul_[a].size() != n) throw InvalidInput("group table is not square");
      if (mul_[0][a] != a || mul_[a][0] != a) throw InvalidInput("element 0 is not the identity");
    }
    inv_.assign(n, 0);
    for (Index a = 0; a < n; ++a) {
      bool found = false;
      for (Index b = 0; b < n && !found; ++b)
        if (mul_[a][b] == 0) {
          inv_[a] = b;
          found = true;
        }
      if (!found) throw InvalidInput("element without inverse");
    }
    order_.assign(n, 0);
    for (Index a = 0; a < n; ++a) {
      Index x = a;
      unsigned k = 1;
      while (x != 0) {
        x = mul_[x][a];
        ++k;
      }
      order_[a] = k;
    }
    embedding_.resize(n);
    std::iota(embedding_.begin(), embedding_.end(), 0);
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return mul_.size(); }
  Index mul(Index a, Index b) const { return mul_[a][b]; }
  Index inv(Index a) const { return inv_[a]; }
  Index identity() const { return 0; }
  unsigned element_order(Index a) const { return order_[a]; }
  Index pow(Index a, unsigned long e) const {
    e %= order_[a];
    Index r = 0, b = a;
    while (e) {
      if (e & 1) r = mul_[r][b];
      b = mul_[b][b];
      e >>= 1;
    }
    return r;
  }
  Index conj(Index g, Index h) const { return mul_[mul_[h][g]][inv_[h]]; }  // h g h^-1

  unsigned exponent() const {
    unsigned e = 1;
    for (auto o : order_) e = std::lcm(e, o);
    return e;
  }

  std::string label(Index a) const { return a < labels_.size() ? labels_[a] : std::to_string(a); }

  // Position of each element inside the parent it was cut from (identity map
  // for a top-level group).
  const std::vector<Index>& embedding() const { return embedding_; }

  bool is_normal_subset(const std::vector<Index>& H) const {
    std::vector<bool> in(order(), false);
    for (auto h : H) in[h] = true;
    for (Index g = 0; g < order(); ++g)
      for (auto h : H)
        if (!in[conj(h, g)]) return false;
    return true;
  }

  // The subgroup on the listed elements, renumbered with the identity first.
  FiniteGroup subgroup(const std::vector<Index>& elems, std::string name) const {
    std::map<Index, Index> pos;
    std::vector<Index> list{0};
    for (auto e : elems) {
      if (e >= order()) throw InvalidInput("subgroup element out of range");
      if (e != 0) list.push_back(e);
    }
    std::sort(list.begin() + 1, list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (Index i = 0; i < list.size(); ++i) pos[list[i]] = i;
    if (order() % list.size() != 0) throw InvalidInput(name + " is not a subgroup (order does not divide)");
    std::vector<std::vector<Index>> t(list.size(), std::vector<Index>(list.size()));
    for (Index i = 0; i < list.size(); ++i)
      for (Index j = 0; j < list.size(); ++j) {
        auto it = pos.find(mul_[list[i]][list[j]]);
        if (it == pos.end()) throw InvalidInput(name + " is not a subgroup (not closed)");
        t[i][j] = it->second;
      }
    std::vector<std::string> labels;
    for (auto e : list) labels.push_back(label(e));
    FiniteGroup H(std::move(name), std::move(t), std::move(labels));
    for (auto& e : list) e = embedding_[e];
    H.embedding_ = std::move(list);
    H.parent_order_ = parent_order_ ? parent_order_ : order();
    return H;
  }

  std::size_t parent_order() const { return parent_order_ ? parent_order_ : order(); }

  // Associativity on random triples.
  bool spot_check_associativity(std::size_t trials, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(order() - 1));
    for (std::size_t i = 0; i < trials; ++i) {
      Index a = pick(rng), b = pick(rng), c = pick(rng);
      if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) return false;
    }
    return true;
  }

 private:
  std::string name_;
  std::vector<std::vector<Index>> mul_;
  std::vector<std::string> labels_;
  std::vector<Index> inv_;
  std::vector<unsigned> order_;
  std::vector<Index> embedding_;
  std::size_t parent_order_ = 0;
};

// Elements of G648 = C3 x (SL(2,3) |x (C3 x C3)).
struct G648Element {
  int c = 0;                         // Z/3
  std::array<int, 4> m{1, 0, 0, 1};  // row-major 2x2 over Z/3, det 1
  std::array<int, 2> v{0, 0};        // (Z/3)^2

  static int md(int a) { return ((a % 3) + 3) % 3; }

  friend G648Element operator*(const G648Element& x, const G648Element& y) {
    G648Element r;
    r.c = md(x.c + y.c);
    r.m = {md(x.m[0] * y.m[0] + x.m[1] * y.m[2]), md(x.m[0] * y.m[1] + x.m[1] * y.m[3]),
           md(x.m[2] * y.m[0] + x.m[3] * y.m[2]), md(x.m[2] * y.m[1] + x.m[3] * y.m[3])};
    r.v = {md(x.v[0] + x.m[0] * y.v[0] + x.m[1] * y.v[1]), md(x.v[1] + x.m[2] * y.v[0] + x.m[3] * y.v[1])};
    return r;
  }
  friend bool operator==(const G648Element& a, const G648Element& b) {
    return a.c == b.c && a.m == b.m && a.v == b.v;
  }
  bool is_identity() const { return c == 0 && m == std::array<int, 4>{1, 0, 0, 1} && v[0] == 0 && v[1] == 0; }
  int key() const {
    int k = c;
    for (int x : m) k = 3 * k + x;
    return 9 * k + 3 * v[0] + v[1];
  }
  std::string to_string() const {
    auto s = [](int a) { return std::to_string(a); };
    return "(" + s(c) + ",[" + s(m[0]) + " " + s(m[1]) + ";" + s(m[2]) + " " + s(m[3]) + "],(" + s(v[0]) + "," +
           s(v[1]) + "))";
  }
};

inline std::vector<std::array<int, 4>> sl2_z3() {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (G648Element::md(a * d - b * c) == 1) out.push_back({a, b, c, d});
  return out;
}

// Q8 inside SL(2,3): the elements whose order divides 4.
inline std::vector<std::array<int, 4>> q8_in_sl2_z3() {
  std::vector<std::array<int, 4>> out;
  for (const auto& m : sl2_z3()) {
    G648Element x{0, m, {0, 0}}, p = x;
    int k = 1;
    while (!p.is_identity()) {
      p = p * x;
      ++k;
    }
    if (4 % k == 0) out.push_back(m);
  }
  return out;
}

struct G648 {
  FiniteGroup group;
  std::vector<G648Element> elements;  // by group index

  Index index_of(const G648Element& e) const {
    for (Index i = 0; i < elements.size(); ++i)
      if (elements[i] == e) return i;
    throw InvalidInput("not an element of G648: " + e.to_string());
  }

  // {(0, m, v) : m in Q8}, normal of order 72
  std::vector<Index> g72() const {
    auto q8 = q8_in_sl2_z3();
    std::vector<Index> out;
    for (Index i = 0; i < elements.size(); ++i)
      if (elements[i].c == 0 && std::find(q8.begin(), q8.end(), elements[i].m) != q8.end()) out.push_back(i);
    return out;
  }
  // {(c, m, 0)}, order 72, not normal
  std::vector<Index> ghat72() const {
    std::vector<Index> out;
    for (Index i = 0; i < elements.size(); ++i)
      if (elements[i].v[0] == 0 && elements[i].v[1] == 0) out.push_back(i);
    return out;
  }
  std::vector<Index> q8() const {
    auto q = q8_in_sl2_z3();
    std::vector<Index> out;
    for (Index i = 0; i < elements.size(); ++i)
      if (elements[i].c == 0 && elements[i].v == std::array<int, 2>{0, 0} &&
          std::find(q.begin(), q.end(), elements[i].m) != q.end())
        out.push_back(i);
    return out;
  }
  std::vector<Index> sl2() const {
    std::vector<Index> out;
    for (Index i = 0; i < elements.size(); ++i)
      if (elements[i].c == 0 && elements[i].v == std::array<int, 2>{0, 0}) out.push_back(i);
    return out;
  }
};

inline const G648& build_g648() {
  static const G648 g = [] {
    G648 out;
    out.elements.push_back(G648Element{});
    for (int c = 0; c < 3; ++c)
      for (const auto& m : sl2_z3())
        for (int v0 = 0; v0 < 3; ++v0)
          for (int v1 = 0; v1 < 3; ++v1) {
            G648Element e{c, m, {v0, v1}};
            if (!e.is_identity()) out.elements.push_back(e);
          }
    std::vector<int> pos(3 * 81 * 9, -1);
    for (std::size_t i = 0; i < out.elements.size(); ++i) pos[out.elements[i].key()] = static_cast<int>(i);
    std::size_t n = out.elements.size();
    std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(out.elements[i].to_string());
      for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Index>(pos[(out.elements[i] * out.elements[j]).key()]);
    }
    out.group = FiniteGroup("G648", std::move(t), std::move(labels));
    return out;
  }();
  return g;
}

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclic group of order 0");
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Index>((i + j) % n);
  return FiniteGroup("C" + std::to_string(n), std::move(t));
}

}  // namespace fppkit::grouprep
