#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fppkit/exact/reconstruct.hpp"
#include "fppkit/lattice/recognize.hpp"
#include "fppkit/mpoly/io.hpp"

// Certificates of the shape  T = sum_s K_s * H_s  with K_s known and H_s an
// unknown homogeneous polynomial of prescribed degree. Solved mod p, lifted
// p-adically with a fixed support, then reconstructed exactly.
namespace fppkit::lift {

using exact::FieldPtr;
using exact::Integer;
using exact::NumberFieldElement;
using exact::Rational;
using exact::Residue;
using mpoly::Monomial;
using mpoly::Order;
using mpoly::Poly;
using mpoly::RingTraits;

template <class C>
struct Slot {
  Poly<C> known;           // E_i for generator slots, the known factor otherwise
  unsigned degree = 0;     // degree of the unknown multiplier
  bool known_factor = false;
  bool number_field = false;  // reconstruct through the field, not Q
};

template <class C>
struct CertificateTemplate {
  Poly<C> target;
  std::vector<Slot<C>> slots;
  Integer prime;
  std::optional<Integer> root;  // image of the field generator mod p (number fields only)

  std::size_t nvars() const { return target.nvars(); }
  Order order() const { return target.order(); }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Row echelon data of A mod p: T*A = R with R reduced, pivots per row.
struct ModPSolver {
  std::uint64_t p = 0;
  std::size_t rows = 0, cols = 0, rank = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<std::uint64_t>> T;

  ModPSolver(std::vector<std::vector<std::uint64_t>> A, std::uint64_t prime) : p(prime) {
    rows = A.size();
    cols = rows ? A[0].size() : 0;
    T.assign(rows, std::vector<std::uint64_t>(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) T[i][i] = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t piv = r;
      while (piv < rows && A[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(A[piv], A[r]);
      std::swap(T[piv], T[r]);
      std::uint64_t inv = powmod(A[r][c], p - 2, p);
      for (auto& x : A[r]) x = mulmod(x, inv, p);
      for (auto& x : T[r]) x = mulmod(x, inv, p);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || A[i][c] == 0) continue;
        std::uint64_t f = A[i][c];
        for (std::size_t j = c; j < cols; ++j)
          if (A[r][j]) A[i][j] = (A[i][j] + p - mulmod(f, A[r][j], p)) % p;
        for (std::size_t j = 0; j < rows; ++j)
          if (T[r][j]) T[i][j] = (T[i][j] + p - mulmod(f, T[r][j], p)) % p;
      }
      pivots.push_back(c);
      ++r;
    }
    rank = r;
  }

  // Particular solution of A x = c mod p with free variables zero.
  std::optional<std::vector<std::uint64_t>> solve(const std::vector<std::uint64_t>& c) const {
    std::vector<std::uint64_t> y(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < rows; ++j)
        if (T[i][j] && c[j]) s = (s + mulmod(T[i][j], c[j], p)) % p;
      y[i] = s;
    }
    for (std::size_t i = rank; i < rows; ++i)
      if (y[i] != 0) return std::nullopt;
    std::vector<std::uint64_t> x(cols, 0);
    for (std::size_t i = 0; i < rank; ++i) x[pivots[i]] = y[i];
    return x;
  }
};

}  // namespace detail

// Linear system behind a template: unknowns are slot coefficients, equations
// are the coefficients of T - sum K_s H_s.
template <class C>
class CertificateSystem {
 public:
  struct Column {
    std::size_t slot;
    Monomial mono;
    std::vector<std::pair<std::size_t, C>> entries;  // (row, coefficient)
  };

  explicit CertificateSystem(CertificateTemplate<C> t) : tmpl_(std::move(t)) {
    const auto& T = tmpl_.target;
    if (tmpl_.slots.empty()) throw InvalidInput("certificate template has no unknown slot");
    if (tmpl_.prime < 2 || !exact::is_probable_prime(tmpl_.prime) || !tmpl_.prime.fits_uint_p() ||
        tmpl_.prime > Integer("4294967295"))
      throw InvalidInput("certificate prime must be a prime below 2^32, got " + tmpl_.prime.get_str());
    for (const auto& s : tmpl_.slots)
      if (s.known.nvars() != T.nvars()) throw InvalidInput("slot arity differs from the target");
    std::size_t n = T.nvars();
    auto row_of = [&](const Monomial& m) {
      auto [it, fresh] = rows_.emplace(m.exponents(), row_monos_.size());
      if (fresh) row_monos_.push_back(m);
      return it->second;
    };
    for (const auto& [m, c] : T.terms()) b_.emplace_back(row_of(m), c);
    for (std::size_t s = 0; s < tmpl_.slots.size(); ++s) {
      const auto& slot = tmpl_.slots[s];
      slot_offset_.push_back(cols_.size());
      for (const auto& mono : mpoly::monomials_of_degree(n, slot.degree)) {
        Column col{s, mono, {}};
        for (const auto& [m, c] : slot.known.terms()) col.entries.emplace_back(row_of(m * mono), c);
        cols_.push_back(std::move(col));
      }
    }
    slot_offset_.push_back(cols_.size());
    if constexpr (std::is_same_v<C, NumberFieldElement>) {
      field_ = T.proto().field();
      auto& f = field_->minpoly();
      if (!tmpl_.root) {
        auto roots = exact::roots_mod_p(f, tmpl_.prime.get_ui());
        if (roots.empty()) throw BadPrime("field minimal polynomial has no root mod " + tmpl_.prime.get_str());
        tmpl_.root = roots.front();
      }
      if (exact::eval_mod(f, *tmpl_.root, tmpl_.prime) != 0)
        throw InvalidInput("declared root is not a root of the field polynomial mod p");
    }
    // mod-p elimination data, reused by every lifting step
    std::vector<std::vector<std::uint64_t>> A(rows(), std::vector<std::uint64_t>(cols(), 0));
    auto Ap = embed_matrix(1);
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [r, v] : Ap[j]) A[r][j] = v.get_ui();
    solver_ = std::make_shared<detail::ModPSolver>(std::move(A), tmpl_.prime.get_ui());
  }

  const CertificateTemplate<C>& tmpl() const { return tmpl_; }
  std::size_t rows() const { return row_monos_.size(); }
  std::size_t cols() const { return cols_.size(); }
  std::size_t rank() const { return solver_->rank; }
  std::size_t nullity() const { return cols() - rank(); }
  const std::vector<Column>& columns() const { return cols_; }
  std::size_t slot_begin(std::size_t s) const { return slot_offset_[s]; }
  std::size_t slot_end(std::size_t s) const { return slot_offset_[s + 1]; }
  const detail::ModPSolver& solver() const { return *solver_; }
  const Integer& prime() const { return tmpl_.prime; }

  // Image of the field generator mod p^k.
  Residue generator_image(unsigned k) const {
    if constexpr (std::is_same_v<C, NumberFieldElement>)
      return exact::hensel_root_lift(field_->minpoly(), tmpl_.prime, *tmpl_.root, k);
    else
      throw InvalidInput("template is over Q");
  }

  Residue embed(const C& c, unsigned k) const {
    if constexpr (std::is_same_v<C, Rational>) {
      return Residue::from_rational(c, tmpl_.prime, k);
    } else {
      return exact::nf_embed_mod_pk(c, generator_image(k));
    }
  }

  // Column-wise residues of A and the vector b mod p^k, as integers in [0, p^k).
  std::vector<std::vector<std::pair<std::size_t, Integer>>> embed_matrix(unsigned k) const {
    Residue t = generator_image_or_none(k);
    std::vector<std::vector<std::pair<std::size_t, Integer>>> out(cols());
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [r, c] : cols_[j].entries) out[j].emplace_back(r, embed_with(c, k, t).value());
    return out;
  }
  std::vector<Integer> embed_rhs(unsigned k) const {
    Residue t = generator_image_or_none(k);
    std::vector<Integer> out(rows(), Integer(0));
    for (const auto& [r, c] : b_) out[r] = embed_with(c, k, t).value();
    return out;
  }

  // Assemble slot polynomials from a flat coefficient vector.
  template <class D, class F>
  std::vector<Poly<D>> assemble(const D& proto, F&& coeff) const {
    std::vector<Poly<D>> out;
    for (std::size_t s = 0; s < tmpl_.slots.size(); ++s) {
      std::vector<std::pair<Monomial, D>> terms;
      for (std::size_t j = slot_begin(s); j < slot_end(s); ++j) {
        D c = coeff(j);
        if (!RingTraits<D>::is_zero(c)) terms.emplace_back(cols_[j].mono, c);
      }
      out.push_back(Poly<D>::from_terms(tmpl_.nvars(), tmpl_.order(), proto, std::move(terms)));
    }
    return out;
  }

 private:
  Residue generator_image_or_none(unsigned k) const {
    if constexpr (std::is_same_v<C, NumberFieldElement>) return generator_image(k);
    else return Residue(tmpl_.prime, k, 0);
  }
  Residue embed_with(const C& c, unsigned k, const Residue& t) const {
    if constexpr (std::is_same_v<C, Rational>) return Residue::from_rational(c, tmpl_.prime, k);
    else return exact::nf_embed_mod_pk(c, t);
  }

  CertificateTemplate<C> tmpl_;
  std::map<std::vector<Monomial::Exp>, std::size_t> rows_;
  std::vector<Monomial> row_monos_;
  std::vector<Column> cols_;
  std::vector<std::pair<std::size_t, C>> b_;
  std::vector<std::size_t> slot_offset_;
  FieldPtr field_;
  std::shared_ptr<detail::ModPSolver> solver_;
};

template <class C>
struct CertificateSolution {
  std::shared_ptr<const CertificateSystem<C>> system;
  unsigned k = 0;
  std::vector<Integer> x;  // slot coefficients mod p^k, flat

  std::vector<Poly<Residue>> slots() const {
    Residue proto(system->prime(), k, 0);
    return system->assemble(proto, [&](std::size_t j) { return proto.with_value(x[j]); });
  }

  CertificateSolution truncate(unsigned kk) const {
    if (kk > k || kk == 0) throw InvalidInput("truncate: exponent out of range");
    Integer m = ipow(system->prime(), kk);
    CertificateSolution out{system, kk, {}};
    for (const auto& v : x) out.x.push_back(mod_floor(v, m));
    return out;
  }
};

// T - sum K_s H_s over Z/p^k, computed by polynomial arithmetic (independent
// of the linear system).
template <class C>
Poly<Residue> residual(const CertificateSolution<C>& sol) {
  const auto& sys = *sol.system;
  const auto& t = sys.tmpl();
  Residue proto(sys.prime(), sol.k, 0);
  auto emb = [&](const Poly<C>& f) {
    return f.template map_coeffs<Residue>(proto, [&](const C& c) { return sys.embed(c, sol.k); });
  };
  auto H = sol.slots();
  Poly<Residue> r = emb(t.target);
  for (std::size_t s = 0; s < H.size(); ++s) r = r - emb(t.slots[s].known) * H[s];
  return r;
}

template <class C>
std::optional<CertificateSolution<C>> certificate_solve_mod_p(std::shared_ptr<const CertificateSystem<C>> sys) {
  std::uint64_t p = sys->prime().get_ui();
  auto b = sys->embed_rhs(1);
  std::vector<std::uint64_t> c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = b[i].get_ui() % p;
  auto x = sys->solver().solve(c);
  if (!x) return std::nullopt;
  CertificateSolution<C> sol{sys, 1, {}};
  for (auto v : *x) sol.x.emplace_back(static_cast<unsigned long>(v));
  return sol;
}

template <class C>
std::optional<CertificateSolution<C>> certificate_solve_mod_p(const CertificateTemplate<C>& t) {
  return certificate_solve_mod_p(std::make_shared<const CertificateSystem<C>>(t));
}

// Lift k -> k+steps. Each correction solves the same mod-p system with free
// variables zero, so the support of the k=1 solution is kept.
template <class C>
CertificateSolution<C> certificate_lift(const CertificateSolution<C>& sol, unsigned steps) {
  if (steps == 0) return sol;
  const auto& sys = *sol.system;
  const Integer& p = sys.prime();
  unsigned top = sol.k + steps;
  auto A = sys.embed_matrix(top);
  auto b = sys.embed_rhs(top);
  CertificateSolution<C> cur = sol;
  Integer pk = ipow(p, cur.k);
  for (unsigned j = 1; j <= steps; ++j) {
    Integer pk1 = pk * p;
    std::vector<Integer> r(b);
    for (std::size_t col = 0; col < A.size(); ++col) {
      if (cur.x[col] == 0) continue;
      for (const auto& [row, v] : A[col]) r[row] -= v * cur.x[col];
    }
    std::vector<std::uint64_t> c(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      Integer ri = mod_floor(r[i], pk1);
      if (mod_floor(ri, pk) != 0)
        throw InvalidInput("certificate_lift: input is not a solution mod p^" + std::to_string(cur.k));
      c[i] = Integer(ri / pk).get_ui();
    }
    auto delta = sys.solver().solve(c);
    if (!delta) throw LiftObstructed(j, "correction system inconsistent mod p");
    for (std::size_t col = 0; col < cur.x.size(); ++col)
      if ((*delta)[col]) cur.x[col] = mod_floor(cur.x[col] + pk * static_cast<unsigned long>((*delta)[col]), pk1);
    ++cur.k;
    pk = pk1;
  }
  return cur;
}

struct ReconstructBounds {
  Integer num;
  Integer den;
};

template <class C>
struct ExactCertificate {
  std::optional<std::vector<Poly<C>>> slots;
  std::optional<std::size_t> failing_slot;
  std::string reason;
  explicit operator bool() const { return slots.has_value(); }
};

// Coefficientwise reconstruction (rational, or through the field for slots
// marked number_field), followed by an exact check of the identity.
template <class C>
ExactCertificate<C> certificate_reconstruct(const CertificateSolution<C>& sol,
                                            std::optional<ReconstructBounds> bounds = std::nullopt) {
  const auto& sys = *sol.system;
  const auto& t = sys.tmpl();
  Integer M = ipow(sys.prime(), sol.k);
  ReconstructBounds bd = bounds ? *bounds : ReconstructBounds{exact::balanced_bound(M), exact::balanced_bound(M)};
  if (2 * bd.num * bd.den >= M)
    throw InsufficientPrecision("p^k = " + sys.prime().get_str() + "^" + std::to_string(sol.k) +
                                " is too small for bounds (" + bd.num.get_str() + ", " + bd.den.get_str() + ")");
  ExactCertificate<C> out;
  std::vector<C> coeffs;
  const C proto = t.target.proto();
  std::optional<Residue> gen;
  for (std::size_t s = 0; s < t.slots.size(); ++s) {
    for (std::size_t j = sys.slot_begin(s); j < sys.slot_end(s); ++j) {
      Residue r(sys.prime(), sol.k, sol.x[j]);
      std::optional<C> c;
      if constexpr (std::is_same_v<C, NumberFieldElement>) {
        if (t.slots[s].number_field) {
          if (!gen) gen = sys.generator_image(sol.k);
          c = lattice::nf_reconstruct(r, *gen, proto.field());
        }
      }
      if (!c && !(std::is_same_v<C, NumberFieldElement> && t.slots[s].number_field)) {
        auto q = exact::rational_reconstruct(r, bd.num, bd.den);
        if (q) c = RingTraits<C>::from_rational(proto, *q);
      }
      if (!c) {
        out.failing_slot = s;
        out.reason = "slot " + std::to_string(s) + ": coefficient of " + sys.columns()[j].mono.to_string(mpoly::default_names(t.nvars())) +
                     " does not reconstruct";
        return out;
      }
      coeffs.push_back(*c);
    }
  }
  auto H = sys.assemble(proto, [&](std::size_t j) { return coeffs[j]; });
  Poly<C> rhs(t.nvars(), t.order(), proto);
  for (std::size_t s = 0; s < H.size(); ++s) rhs = rhs + t.slots[s].known * H[s];
  if (!(rhs == t.target)) {
    out.reason = "reconstructed multipliers do not satisfy the identity exactly";
    return out;
  }
  out.slots = std::move(H);
  return out;
}

}  // namespace fppkit::lift
