#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fppkit/mpoly/matrix.hpp"
#include "fppkit/mpoly/poly.hpp"

namespace fppkit::mpoly {

// Generators of an ideal in C[x_0..x_{n-1}]. Homogeneity is checked by the
// operations that need it (Hilbert data, probes), not at construction.
template <class C>
class IdealBasis {
 public:
  using R = RingTraits<C>;

  IdealBasis(std::size_t nvars, Order order, C proto, std::vector<Poly<C>> gens = {})
      : n_(nvars), order_(order), proto_(R::zero_like(proto)) {
    for (auto& g : gens) add(std::move(g));
  }

  void add(Poly<C> g) {
    if (g.nvars() != n_) throw InvalidInput("generator arity mismatch");
    if (R::tag(g.proto()) != R::tag(proto_)) throw InvalidInput("generator ring mismatch");
    if (g.order() != order_) g = g.with_order(order_);
    gens_.push_back(std::move(g));
  }

  std::size_t nvars() const { return n_; }
  Order order() const { return order_; }
  const C& proto() const { return proto_; }
  const std::vector<Poly<C>>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  bool is_homogeneous() const {
    for (const auto& g : gens_)
      if (!g.is_homogeneous()) return false;
    return true;
  }

  IdealBasis with_order(Order o) const {
    IdealBasis out(n_, o, proto_);
    for (const auto& g : gens_) out.add(g.with_order(o));
    return out;
  }

  Poly<C> zero_poly() const { return Poly<C>(n_, order_, proto_); }
  Poly<C> var(std::size_t i) const { return Poly<C>::variable(n_, order_, proto_, i); }

 private:
  std::size_t n_;
  Order order_;
  C proto_;
  std::vector<Poly<C>> gens_;
};

struct MinorSelection {
  std::vector<std::size_t> rows;  // generator indices
  std::vector<std::size_t> cols;  // variable indices
};

// Matrix of partials d g_i / d x_j.
template <class C>
std::vector<std::vector<Poly<C>>> jacobian(const IdealBasis<C>& I) {
  std::vector<std::vector<Poly<C>>> J;
  for (const auto& g : I.generators()) {
    std::vector<Poly<C>> row;
    for (std::size_t j = 0; j < I.nvars(); ++j) row.push_back(g.derivative(j));
    J.push_back(std::move(row));
  }
  return J;
}

// Determinant of a square polynomial matrix by Laplace expansion over column
// subsets (dynamic programming on bitmasks, no division).
template <class C>
Poly<C> poly_determinant(const std::vector<std::vector<Poly<C>>>& M, const Poly<C>& zero) {
  std::size_t s = M.size();
  if (s == 0) return Poly<C>::constant(zero.nvars(), zero.order(), zero.one());
  if (s > 20) throw InvalidInput("minor size too large");
  // D[mask] = determinant of rows 0..popcount(mask)-1 restricted to columns in mask.
  std::vector<Poly<C>> D(std::size_t(1) << s, zero);
  D[0] = Poly<C>::constant(zero.nvars(), zero.order(), zero.one());
  for (std::size_t mask = 1; mask < D.size(); ++mask) {
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    Poly<C> acc = zero;
    for (std::size_t j = 0; j < s; ++j) {
      if (!(mask & (std::size_t(1) << j))) continue;
      // sign from the position of column j among the chosen columns
      std::size_t above = 0;
      for (std::size_t k = j + 1; k < s; ++k)
        if (mask & (std::size_t(1) << k)) ++above;
      const Poly<C>& entry = M[row][j];
      if (entry.is_zero()) continue;
      Poly<C> t = entry * D[mask ^ (std::size_t(1) << j)];
      acc = (above % 2) ? acc - t : acc + t;
    }
    D[mask] = std::move(acc);
  }
  return D.back();
}

template <class C>
std::vector<Poly<C>> jacobian_minors(const IdealBasis<C>& I, std::size_t size,
                                     const std::vector<MinorSelection>& selection) {
  if (size > std::min(I.size(), I.nvars()))
    throw InvalidInput("minor size " + std::to_string(size) + " exceeds Jacobian shape " +
                       std::to_string(I.size()) + "x" + std::to_string(I.nvars()));
  auto J = jacobian(I);
  std::vector<Poly<C>> out;
  for (const auto& sel : selection) {
    if (sel.rows.size() != size || sel.cols.size() != size)
      throw InvalidInput("minor selection does not have the requested size");
    std::vector<std::vector<Poly<C>>> sub;
    for (auto r : sel.rows) {
      if (r >= I.size()) throw InvalidInput("minor row index out of range");
      std::vector<Poly<C>> row;
      for (auto c : sel.cols) {
        if (c >= I.nvars()) throw InvalidInput("minor column index out of range");
        row.push_back(J[r][c]);
      }
      sub.push_back(std::move(row));
    }
    out.push_back(poly_determinant(sub, I.zero_poly()));
  }
  return out;
}

// x_i -> sum_j M(i,j) x_j applied to every generator.
template <class C>
IdealBasis<C> linear_change_of_coordinates(const IdealBasis<C>& I, const DenseMatrix<C>& M) {
  std::size_t n = I.nvars();
  if (M.rows() != n || M.cols() != n) throw InvalidInput("change of coordinates: matrix must be " +
                                                         std::to_string(n) + "x" + std::to_string(n));
  if (!M.inverse()) throw InvalidInput("change of coordinates: matrix is singular");
  std::vector<Poly<C>> images;
  for (std::size_t i = 0; i < n; ++i) {
    Poly<C> img = I.zero_poly();
    for (std::size_t j = 0; j < n; ++j)
      if (!RingTraits<C>::is_zero(M(i, j))) img = img + I.var(j).scaled(M(i, j));
    images.push_back(std::move(img));
  }
  IdealBasis<C> out(n, I.order(), I.proto());
  for (const auto& g : I.generators()) out.add(g.substitute(images));
  return out;
}

}  // namespace fppkit::mpoly
