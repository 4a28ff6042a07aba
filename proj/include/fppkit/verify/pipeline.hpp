#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "fppkit/groebner/hilbert.hpp"
#include "fppkit/mpoly/io.hpp"

namespace fppkit::verify {

using exact::Fp;
using exact::RatPoly;
using exact::Rational;
using groebner::BuchbergerOptions;
using mpoly::IdealBasis;
using mpoly::MinorSelection;
using mpoly::Poly;

// chi(6mH) = (6m-1)(6m-2)/2 on a fake projective plane.
inline RatPoly fpp_hilbert_polynomial() { return RatPoly({Rational(1), Rational(-9), Rational(18)}); }

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

template <class C>
std::string ideal_digest(const IdealBasis<C>& I) {
  return fnv1a_hex(mpoly::format_ideal(I));
}

template <class C>
groebner::HilbertData hilbert_of(const IdealBasis<C>& I, const BuchbergerOptions& opts) {
  if (!I.is_homogeneous()) throw InvalidInput("ideal is not homogeneous");
  return groebner::hilbert(groebner::buchberger(I, std::nullopt, opts));
}

struct HilbertCheck {
  RatPoly found, expected;
  bool match = false;
};

template <class C>
HilbertCheck fpp_hilbert_check(const IdealBasis<C>& I, std::optional<RatPoly> expected = std::nullopt,
                               const BuchbergerOptions& opts = {}) {
  HilbertCheck h;
  h.expected = expected ? *expected : fpp_hilbert_polynomial();
  h.found = hilbert_of(I, opts).polynomial;
  h.match = h.found == h.expected;
  return h;
}

struct ProbeResult {
  std::size_t minor_size = 0;
  std::uint64_t seed = 0;
  std::vector<MinorSelection> minors;
  RatPoly hilbert;
  bool zero() const { return hilbert.is_zero(); }
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::vector<MinorSelection> all_minors(std::size_t rows, std::size_t cols, std::size_t size) {
  std::vector<MinorSelection> out;
  for (const auto& r : subsets(rows, size))
    for (const auto& c : subsets(cols, size)) out.push_back({r, c});
  return out;
}

// `count` distinct size x size selections drawn with mt19937_64(seed); all of
// them when there are no more than `count`.
inline std::vector<MinorSelection> random_minors(std::size_t rows, std::size_t cols, std::size_t size,
                                                 std::size_t count, std::uint64_t seed) {
  if (size == 0 || size > rows || size > cols) throw InvalidInput("no minors available of size " + std::to_string(size));
  double total = static_cast<double>(binomial(rows, size)) * static_cast<double>(binomial(cols, size));
  if (total <= static_cast<double>(count) && total < 1e6) return all_minors(rows, cols, size);
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::size_t> d(i, n - 1);
      std::swap(idx[i], idx[d(rng)]);
    }
    idx.resize(size);
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  std::vector<MinorSelection> out;
  std::size_t guard = 0;
  while (out.size() < count) {
    MinorSelection s{pick(rows), pick(cols)};
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const MinorSelection& o) { return o.rows == s.rows && o.cols == s.cols; });
    if (!dup) out.push_back(std::move(s));
    if (++guard > 100 * count + 1000) throw Error("could not draw distinct minors");
  }
  return out;
}

template <class C>
ProbeResult probe_with_minors(const IdealBasis<C>& I, std::size_t size, const std::vector<MinorSelection>& sel,
                              const BuchbergerOptions& opts = {}) {
  ProbeResult r;
  r.minor_size = size;
  r.minors = sel;
  IdealBasis<C> J = I;
  if (!sel.empty())
    for (auto& m : mpoly::jacobian_minors(I, size, sel))
      if (!m.is_zero()) J.add(std::move(m));
  r.hilbert = hilbert_of(J, opts).polynomial;
  return r;
}

// Appends `minor_count` random minors of size codim = nvars - 1 - expected_dim
// and recomputes the Hilbert polynomial. Zero means no point of V(I) makes
// all chosen minors vanish.
template <class C>
ProbeResult smoothness_probe(const IdealBasis<C>& I, long expected_dim, std::size_t minor_count, std::uint64_t seed,
                             const BuchbergerOptions& opts = {}) {
  long codim = static_cast<long>(I.nvars()) - 1 - expected_dim;
  if (codim <= 0 || I.size() == 0 || static_cast<std::size_t>(codim) > std::min(I.size(), I.nvars()))
    throw InvalidInput("no minors available: codimension " + std::to_string(codim) + " with " +
                       std::to_string(I.size()) + " generators in " + std::to_string(I.nvars()) + " variables");
  auto size = static_cast<std::size_t>(codim);
  std::vector<MinorSelection> sel;
  if (minor_count) sel = random_minors(I.size(), I.nvars(), size, minor_count, seed);
  auto r = probe_with_minors(I, size, sel, opts);
  r.seed = seed;
  return r;
}

struct VerificationReport {
  std::string digest;
  std::vector<std::uint32_t> primes;
  HilbertCheck hilbert;
  std::vector<ProbeResult> probes;

  bool pass() const {
    if (!hilbert.match) return false;
    for (const auto& p : probes)
      if (!p.zero()) return false;
    return true;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "ideal-digest: " << digest << "\n";
    os << "primes:";
    for (auto p : primes) os << " " << p;
    os << "\n";
    os << "hilbert-found: " << groebner::format_hilbert_poly(hilbert.found) << "\n";
    os << "hilbert-expected: " << groebner::format_hilbert_poly(hilbert.expected) << "\n";
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto& p = probes[i];
      os << "probe " << i + 1 << ": seed " << p.seed << ", minor size " << p.minor_size << ", minors";
      for (const auto& m : p.minors) {
        os << " [";
        for (std::size_t k = 0; k < m.rows.size(); ++k) os << (k ? "," : "") << m.rows[k];
        os << "|";
        for (std::size_t k = 0; k < m.cols.size(); ++k) os << (k ? "," : "") << m.cols[k];
        os << "]";
      }
      os << ", hilbert " << groebner::format_hilbert_poly(p.hilbert) << "\n";
    }
    os << "verdict: " << (pass() ? "pass" : "fail") << "\n";
    return os.str();
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t minors = 3;
  std::size_t probes = 1;  // each probe uses seed + i
  long expected_dim = 2;
  std::optional<RatPoly> expected;
  BuchbergerOptions groebner;
};

inline VerificationReport verify_ideal(const IdealBasis<Fp>& I, const VerifyOptions& o = {}) {
  VerificationReport rep;
  rep.digest = ideal_digest(I);
  rep.primes = {I.proto().prime()};
  rep.hilbert = fpp_hilbert_check(I, o.expected, o.groebner);
  for (std::size_t i = 0; i < o.probes; ++i)
    rep.probes.push_back(smoothness_probe(I, o.expected_dim, o.minors, o.seed + i, o.groebner));
  return rep;
}

// ---- singular cuts ---------------------------------------------------------

struct CutSearch {
  std::vector<std::vector<std::uint32_t>> cuts;  // hyperplane coefficients, first nonzero = 1, sorted
  std::size_t examined = 0;
  bool exhausted = false;  // budget ran out before the family was covered
};

struct CutSearchOptions {
  std::size_t budget = 100000;
  std::size_t minors_per_cut = 0;  // 0: all minors of the right size
  std::uint64_t seed = 1;
  BuchbergerOptions groebner;
};

namespace detail {

// Basis of {a : g a = a for every g} over F_p.
inline std::vector<std::vector<std::uint32_t>> fixed_space(const std::vector<mpoly::DenseMatrix<Fp>>& action,
                                                           std::size_t n, std::uint32_t p) {
  Fp z(p, 0);
  mpoly::DenseMatrix<Fp> A(action.size() * n, n, z);
  for (std::size_t k = 0; k < action.size(); ++k) {
    const auto& g = action[k];
    if (g.rows() != n || g.cols() != n) throw InvalidInput("invariance matrices must be " + std::to_string(n) + "x" +
                                                           std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A(k * n + i, j) = g(i, j) - (i == j ? Fp(p, 1) : z);
  }
  auto E = A.rref();
  std::vector<bool> piv(n, false);
  for (auto c : E.pivots) piv[c] = true;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (piv[f]) continue;
    std::vector<std::uint32_t> v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < E.pivots.size(); ++r) v[E.pivots[r]] = (-E.reduced(r, f)).value();
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<std::uint32_t> normalize(std::vector<std::uint32_t> a, std::uint32_t p) {
  for (auto x : a)
    if (x) {
      Fp inv = Fp(p, x).inverse();
      for (auto& y : a) y = (Fp(p, y) * inv).value();
      break;
    }
  return a;
}

}  // namespace detail

// Hyperplanes sum a_i x_i (up to scaling, inside the fixed space of the
// optional action) whose section of V(I) is singular by the Jacobian test.
inline CutSearch search_singular_cuts(const IdealBasis<Fp>& I,
                                      const std::optional<std::vector<mpoly::DenseMatrix<Fp>>>& invariance = std::nullopt,
                                      const CutSearchOptions& o = {}) {
  const std::size_t n = I.nvars();
  const std::uint32_t p = I.proto().prime();
  auto HI = hilbert_of(I, o.groebner);
  if (HI.polynomial.is_zero()) throw InvalidInput("V(I) is empty");
  const long dim = HI.polynomial.degree();
  if (dim < 1) throw InvalidInput("V(I) is finite; hyperplane sections are empty");
  const std::size_t codim = n - static_cast<std::size_t>(dim);  // of the section, in P^{n-1}

  std::vector<std::vector<std::uint32_t>> basis;
  if (invariance) basis = detail::fixed_space(*invariance, n, p);
  else
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> e(n, 0);
      e[i] = 1;
      basis.push_back(e);
    }

  CutSearch out;
  const std::size_t r = basis.size();
  std::vector<std::uint32_t> c(r, 0);
  // projective points of F_p^r: first nonzero coordinate 1
  for (std::size_t lead = 0; lead < r && !out.exhausted; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    for (bool more = true; more;) {
      if (out.examined >= o.budget) {
        out.exhausted = true;
        break;
      }
      ++out.examined;
      std::vector<std::uint32_t> a(n, 0);
      for (std::size_t k = 0; k < r; ++k)
        if (c[k])
          for (std::size_t i = 0; i < n; ++i)
            a[i] = static_cast<std::uint32_t>((a[i] + std::uint64_t(c[k]) * basis[k][i]) % p);
      Poly<Fp> h = I.zero_poly();
      for (std::size_t i = 0; i < n; ++i)
        if (a[i]) h = h + I.var(i).scaled(Fp(p, a[i]));
      IdealBasis<Fp> J = I;
      J.add(h);
      if (!hilbert_of(J, o.groebner).polynomial.is_zero()) {
        auto sel = o.minors_per_cut ? random_minors(J.size(), n, codim, o.minors_per_cut, o.seed)
                                    : all_minors(J.size(), n, codim);
        if (!probe_with_minors(J, codim, sel, o.groebner).zero()) out.cuts.push_back(detail::normalize(a, p));
      }
      more = false;
      for (std::size_t k = r; k-- > lead + 1;) {
        if (++c[k] < p) {
          more = true;
          break;
        }
        c[k] = 0;
      }
    }
  }
  std::sort(out.cuts.begin(), out.cuts.end());
  out.cuts.erase(std::unique(out.cuts.begin(), out.cuts.end()), out.cuts.end());
  return out;
}

}  // namespace fppkit::verify
