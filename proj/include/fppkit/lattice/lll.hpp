#pragma once

#include <atomic>
#include <string>
#include <vector>

#include "fppkit/exact/integer.hpp"

namespace fppkit::lattice {

using exact::Integer;
using exact::Rational;

using IntMatrix = std::vector<std::vector<Integer>>;

struct LllResult {
  IntMatrix basis;      // reduced rows
  IntMatrix transform;  // transform * input = basis, unimodular
  std::size_t swaps = 0;
};

// Cooperative cancellation; a set flag turns the reduction into an error.
struct CancelToken {
  std::atomic<bool> cancelled{false};
  void cancel() { cancelled = true; }
};

class Cancelled : public Error {
 public:
  using Error::Error;
};

inline Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  IntMatrix r(a.size(), std::vector<Integer>(b.empty() ? 0 : b[0].size(), Integer(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer determinant(IntMatrix m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Integral LLL (all Gram-Schmidt data kept as exact integers, following the
// classical d_i / lambda_ij formulation). Rows must be linearly independent.
inline LllResult lll_reduce(const IntMatrix& input, const Rational& delta = Rational(99, 100),
                            const CancelToken* cancel = nullptr) {
  if (delta <= Rational(1, 4) || delta > 1) throw InvalidInput("LLL delta must lie in (1/4, 1]");
  std::size_t n = input.size();
  LllResult res{input, identity_matrix(n), 0};
  if (n == 0) return res;
  std::size_t dim = input[0].size();
  for (const auto& row : input)
    if (row.size() != dim) throw InvalidInput("LLL: ragged basis rows");
  if (n > dim) throw InvalidInput("LLL: rows are linearly dependent (more rows than columns)");

  auto& b = res.basis;
  auto& H = res.transform;
  // 1-based indexing for d and lambda as in the textbook formulation
  std::vector<Integer> d(n + 1, Integer(0));
  std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1, Integer(0)));
  const Integer dn = delta.get_num(), dd = delta.get_den();
  auto B = [&](std::size_t i) -> std::vector<Integer>& { return b[i - 1]; };
  auto Hrow = [&](std::size_t i) -> std::vector<Integer>& { return H[i - 1]; };

  d[0] = 1;
  d[1] = dot(B(1), B(1));
  if (d[1] == 0) throw InvalidInput("LLL: rows are linearly dependent (zero row)");
  std::size_t k = 2, kmax = 1;

  auto redi = [&](std::size_t kk, std::size_t l) {
    if (2 * abs(lam[kk][l]) <= d[l]) return;
    Integer q = exact::round_div(lam[kk][l], d[l]);
    for (std::size_t j = 0; j < dim; ++j) B(kk)[j] -= q * B(l)[j];
    for (std::size_t j = 0; j < n; ++j) Hrow(kk)[j] -= q * Hrow(l)[j];
    lam[kk][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
  };

  auto swapi = [&](std::size_t kk) {
    std::swap(B(kk), B(kk - 1));
    std::swap(Hrow(kk), Hrow(kk - 1));
    for (std::size_t j = 1; j + 1 < kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    Integer l = lam[kk][kk - 1];
    Integer Bv = exact_div(d[kk - 2] * d[kk] + l * l, d[kk - 1]);
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      Integer t = lam[i][kk];
      lam[i][kk] = exact_div(d[kk] * lam[i][kk - 1] - l * t, d[kk - 1]);
      lam[i][kk - 1] = exact_div(Bv * t + l * lam[i][kk], d[kk]);
    }
    d[kk - 1] = Bv;
    ++res.swaps;
  };

  while (k <= n) {
    if (cancel && cancel->cancelled) throw Cancelled("LLL reduction cancelled");
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot(B(k), B(j));
        for (std::size_t i = 1; i < j; ++i) u = exact_div(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
        if (j < k) lam[k][j] = u;
        else d[k] = u;
      }
      if (d[k] == 0) throw InvalidInput("LLL: rows are linearly dependent");
    }
    redi(k, k - 1);
    // Lovasz: d_k d_{k-2} < delta d_{k-1}^2 - lambda^2  (scaled by den(delta))
    if (dd * d[k] * d[k - 2] < dn * d[k - 1] * d[k - 1] - dd * lam[k][k - 1] * lam[k][k - 1]) {
      swapi(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
  return res;
}

struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norms;  // |b*_i|^2
};

inline GramSchmidt gram_schmidt(const IntMatrix& b) {
  std::size_t n = b.size();
  GramSchmidt gs{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))),
                 std::vector<Rational>(n, Rational(0))};
  std::vector<std::vector<Rational>> star(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(b[i].begin(), b[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      Rational num = 0;
      for (std::size_t c = 0; c < v.size(); ++c) num += Rational(b[i][c]) * star[j][c];
      gs.mu[i][j] = num / gs.norms[j];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= gs.mu[i][j] * star[j][c];
    }
    Rational nn = 0;
    for (const auto& x : v) nn += x * x;
    if (nn == 0) throw InvalidInput("Gram-Schmidt: dependent rows");
    gs.norms[i] = nn;
    star[i] = std::move(v);
  }
  return gs;
}

// Size reduction |mu_ij| <= 1/2 and the Lovasz condition, checked exactly.
inline bool is_lll_reduced(const IntMatrix& b, const Rational& delta) {
  auto gs = gram_schmidt(b);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > Rational(1, 2)) return false;
  for (std::size_t k = 1; k < b.size(); ++k) {
    Rational m = gs.mu[k][k - 1];
    if (gs.norms[k] < (delta - m * m) * gs.norms[k - 1]) return false;
  }
  return true;
}

inline Integer max_abs_entry(const std::vector<Integer>& row) {
  Integer m = 0;
  for (const auto& x : row)
    if (abs(x) > m) m = abs(x);
  return m;
}
inline Integer max_abs_entry(const IntMatrix& rows) {
  Integer m = 0;
  for (const auto& r : rows) m = std::max(m, max_abs_entry(r));
  return m;
}

inline std::string format_matrix(const IntMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += " ";
      out += row[j].get_str();
    }
    out += "\n";
  }
  return out;
}

}  // namespace fppkit::lattice
