#pragma once

#include <algorithm>
#include <numeric>

#include "fppkit/lattice/lll.hpp"

namespace fppkit::lattice {

struct ShrinkResult {
  IntMatrix rows;
  IntMatrix transform;  // transform * input = rows
};

// Trade sparsity for small coefficients: LLL on the equation rows, then sort
// by max-norm. Never returns larger entries than the input.
inline ShrinkResult shrink_basis(const IntMatrix& E, const Rational& delta = Rational(99, 100)) {
  auto red = lll_reduce(E, delta);
  ShrinkResult out;
  if (max_abs_entry(red.basis) > max_abs_entry(E)) {
    out.rows = E;
    out.transform = identity_matrix(E.size());
  } else {
    out.rows = std::move(red.basis);
    out.transform = std::move(red.transform);
  }
  std::vector<std::size_t> idx(out.rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return max_abs_entry(out.rows[a]) < max_abs_entry(out.rows[b]);
  });
  ShrinkResult sorted;
  for (auto i : idx) {
    sorted.rows.push_back(out.rows[i]);
    sorted.transform.push_back(out.transform[i]);
  }
  return sorted;
}

}  // namespace fppkit::lattice
