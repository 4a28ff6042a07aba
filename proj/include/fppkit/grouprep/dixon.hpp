#pragma once

#include <cmath>
#include <memory>
#include <optional>

#include "fppkit/exact/cyclotomic.hpp"
#include "fppkit/grouprep/classes.hpp"

namespace fppkit::grouprep {

using exact::CyclotomicElement;
using exact::Rational;

struct CharacterTable {
  std::shared_ptr<const ClassData> classes;
  unsigned conductor = 1;
  unsigned dixon_prime = 0;
  std::vector<std::vector<CyclotomicElement>> chi;  // rows = irreducibles, columns = classes

  std::size_t size() const { return chi.size(); }
  std::size_t group_order() const { return classes->group_order(); }
  long degree(std::size_t i) const { return chi[i][0].rational_value().get_num().get_si(); }
};

constexpr std::size_t kMaxClasses = 64;

namespace detail {

using u64 = std::uint64_t;

inline u64 mulm(u64 a, u64 b, u64 q) { return a * b % q; }
inline u64 powm(u64 a, u64 e, u64 q) {
  u64 r = 1;
  a %= q;
  while (e) {
    if (e & 1) r = mulm(r, a, q);
    a = mulm(a, a, q);
    e >>= 1;
  }
  return r;
}
inline u64 invm(u64 a, u64 q) { return powm(a, q - 2, q); }

inline bool is_prime_u(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Basis (as columns) of the kernel of an r x s matrix over F_q.
inline std::vector<std::vector<u64>> kernel_mod(std::vector<std::vector<u64>> A, std::size_t s, u64 q) {
  std::size_t r = A.size();
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t c = 0; c < s && row < r; ++c) {
    std::size_t p = row;
    while (p < r && A[p][c] == 0) ++p;
    if (p == r) continue;
    std::swap(A[p], A[row]);
    u64 inv = invm(A[row][c], q);
    for (auto& x : A[row]) x = mulm(x, inv, q);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || A[i][c] == 0) continue;
      u64 f = A[i][c];
      for (std::size_t j = 0; j < s; ++j) A[i][j] = (A[i][j] + q - mulm(f, A[row][j], q)) % q;
    }
    pivcol.push_back(c);
    ++row;
  }
  std::vector<bool> is_piv(s, false);
  for (auto c : pivcol) is_piv[c] = true;
  std::vector<std::vector<u64>> out;
  for (std::size_t f = 0; f < s; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> v(s, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = (q - A[i][f]) % q;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

// Smallest prime q = 1 mod e with q > 2 sqrt(|G|).
inline unsigned default_dixon_prime(std::size_t group_order, unsigned exponent) {
  double floor_ = 2 * std::sqrt(static_cast<double>(group_order));
  for (unsigned q = exponent + 1;; q += exponent)
    if (q > floor_ && detail::is_prime_u(q)) return q;
}

// Dixon-Schneider: common eigenvectors of the class matrices over F_q give the
// central characters; degrees and eigenvalue multiplicities lift them to
// exact values in Q(zeta_e).
inline CharacterTable character_table_dixon(const FiniteGroup& G, std::optional<unsigned> prime = std::nullopt) {
  using detail::u64;
  auto cd = std::make_shared<const ClassData>(G);
  const std::size_t r = cd->count();
  if (r > kMaxClasses) throw InvalidInput("character_table_dixon: more than 64 classes");
  const unsigned e = cd->exponent();
  const u64 n = G.order();
  u64 q = prime ? *prime : default_dixon_prime(n, e);
  if (!detail::is_prime_u(q) || (q - 1) % e != 0 || static_cast<double>(q) <= 2 * std::sqrt(static_cast<double>(n)))
    throw InvalidInput("Dixon prime " + std::to_string(q) + " must be prime, = 1 mod " + std::to_string(e) +
                       " and exceed 2*sqrt(|G|)");

  // a[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
  std::vector<std::vector<std::vector<u64>>> a(r, std::vector<std::vector<u64>>(r, std::vector<u64>(r, 0)));
  for (std::size_t k = 0; k < r; ++k) {
    Index z = (*cd)[k].rep;
    for (Index x = 0; x < n; ++x) ++a[cd->class_of(x)][cd->class_of(G.mul(G.inv(x), z))][k];
  }

  // split F_q^r into common eigenspaces
  std::vector<std::vector<std::vector<u64>>> spaces;  // each a list of basis vectors
  {
    std::vector<std::vector<u64>> full;
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<u64> v(r, 0);
      v[j] = 1;
      full.push_back(v);
    }
    spaces.push_back(full);
  }
  for (std::size_t i = 1; i < r; ++i) {
    bool done = true;
    for (const auto& s : spaces) done &= s.size() == 1;
    if (done) break;
    std::vector<std::vector<std::vector<u64>>> next;
    for (const auto& B : spaces) {
      if (B.size() == 1) {
        next.push_back(B);
        continue;
      }
      // image of each basis vector under M_i
      std::vector<std::vector<u64>> MB;
      for (const auto& b : B) {
        std::vector<u64> w(r, 0);
        for (std::size_t j = 0; j < r; ++j) {
          u64 s = 0;
          for (std::size_t k = 0; k < r; ++k) s = (s + a[i][j][k] % q * b[k]) % q;
          w[j] = s;
        }
        MB.push_back(std::move(w));
      }
      std::size_t found = 0;
      for (u64 lam = 0; lam < q && found < B.size(); ++lam) {
        // (M_i - lam) B y = 0
        std::vector<std::vector<u64>> A(r, std::vector<u64>(B.size()));
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t c = 0; c < B.size(); ++c) A[j][c] = (MB[c][j] + q - detail::mulm(lam, B[c][j], q)) % q;
        auto ker = detail::kernel_mod(std::move(A), B.size(), q);
        if (ker.empty()) continue;
        std::vector<std::vector<u64>> sub;
        for (const auto& y : ker) {
          std::vector<u64> v(r, 0);
          for (std::size_t c = 0; c < B.size(); ++c)
            if (y[c])
              for (std::size_t j = 0; j < r; ++j) v[j] = (v[j] + detail::mulm(y[c], B[c][j], q)) % q;
          sub.push_back(std::move(v));
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != B.size()) throw Error("Dixon: class matrix not diagonalisable over F_" + std::to_string(q));
    }
    spaces = std::move(next);
  }
  for (const auto& s : spaces)
    if (s.size() != 1) throw Error("Dixon: eigenspaces did not split to dimension 1");
  if (spaces.size() != r) throw Error("Dixon: wrong number of characters");

  // primitive e-th root of unity mod q, standing in for zeta_e
  u64 gen = 2;
  for (;; ++gen) {
    bool ok = true;
    for (u64 p = 2; p <= q - 1 && ok; ++p)
      if ((q - 1) % p == 0 && detail::is_prime_u(p) && detail::powm(gen, (q - 1) / p, q) == 1) ok = false;
    if (ok) break;
  }
  const u64 z = detail::powm(gen, (q - 1) / e, q);

  CharacterTable T{cd, e, static_cast<unsigned>(q), {}};
  for (const auto& s : spaces) {
    std::vector<u64> w = s[0];
    u64 inv0 = detail::invm(w[0], q);
    for (auto& x : w) x = detail::mulm(x, inv0, q);
    // |G| / d^2 = sum_j w_j w_j' / |C_j|
    u64 S = 0;
    for (std::size_t j = 0; j < r; ++j)
      S = (S + detail::mulm(detail::mulm(w[j], w[cd->inverse_class(j)], q), detail::invm((*cd)[j].size % q, q), q)) % q;
    u64 d2 = detail::mulm(n % q, detail::invm(S, q), q);
    u64 d = 0;
    for (u64 t = 1; t <= (q - 1) / 2; ++t)
      if (t * t % q == d2) d = t;
    if (d == 0) throw Error("Dixon: degree does not lift (prime too small?)");
    std::vector<u64> chimod(r);
    for (std::size_t j = 0; j < r; ++j)
      chimod[j] = detail::mulm(detail::mulm(d, w[j], q), detail::invm((*cd)[j].size % q, q), q);
    std::vector<CyclotomicElement> row;
    for (std::size_t j = 0; j < r; ++j) {
      unsigned o = (*cd)[j].order;
      u64 zo = detail::powm(z, e / o, q);
      CyclotomicElement val(e, Rational(0));
      u64 total = 0;
      for (unsigned k = 0; k < o; ++k) {
        u64 s = 0;
        for (unsigned l = 0; l < o; ++l) {
          u64 c = chimod[cd->power_class(j, l)];
          s = (s + detail::mulm(c, detail::powm(zo, (static_cast<u64>(o - k) * l) % o, q), q)) % q;
        }
        u64 m = detail::mulm(s, detail::invm(o % q, q), q);
        if (m > d) throw Error("Dixon: eigenvalue multiplicity out of range");
        total += m;
        if (m) val = val + CyclotomicElement::root_of_unity(e, static_cast<long>(k * (e / o))).scaled(static_cast<long>(m));
      }
      if (total != d) throw Error("Dixon: multiplicities do not add up to the degree");
      row.push_back(std::move(val));
    }
    T.chi.push_back(std::move(row));
  }
  // deterministic row order: trivial first, then by degree, then by printed values
  auto key = [](const std::vector<CyclotomicElement>& row) {
    bool trivial = true;
    for (const auto& v : row) trivial &= v == v.one_like();
    std::vector<std::string> s;
    for (const auto& v : row) s.push_back(v.to_string());
    return std::make_tuple(trivial ? 0 : 1, row[0].rational_value(), s);
  };
  std::sort(T.chi.begin(), T.chi.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  return T;
}

// Row and column orthogonality, checked exactly.
inline bool check_orthogonality(const CharacterTable& T, std::string* why = nullptr) {
  const auto& cd = *T.classes;
  std::size_t r = cd.count();
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (T.size() != r) return fail("table is not square");
  Rational n(static_cast<long>(cd.group_order()));
  std::vector<std::vector<CyclotomicElement>> conj(r);
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& v : T.chi[i]) conj[i].push_back(v.conj());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = i; k < r; ++k) {
      CyclotomicElement s(T.conductor, Rational(0));
      for (std::size_t j = 0; j < r; ++j)
        s = s + (T.chi[i][j] * conj[k][j]).scaled(static_cast<long>(cd[j].size));
      if (!(s == CyclotomicElement(T.conductor, i == k ? n : Rational(0))))
        return fail("rows " + std::to_string(i) + "," + std::to_string(k) + " not orthogonal");
    }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = j; l < r; ++l) {
      CyclotomicElement s(T.conductor, Rational(0));
      for (std::size_t i = 0; i < r; ++i) s = s + T.chi[i][j] * conj[i][l];
      Rational want = j == l ? n / static_cast<long>(cd[j].size) : Rational(0);
      if (!(s == CyclotomicElement(T.conductor, want)))
        return fail("columns " + std::to_string(j) + "," + std::to_string(l) + " not orthogonal");
    }
  return true;
}

}  // namespace fppkit::grouprep
