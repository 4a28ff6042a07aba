#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "fppkit/errors.hpp"

namespace fppkit::geom {

// chi(X, kH) = n (k-1)(k-2) / 2 for an n-fold unramified cover, K = 3H.
inline long chi_cover(long n, long k) {
  if (n < 1) throw InvalidInput("cover degree must be >= 1");
  if (k < 0) throw InvalidInput("twist must be >= 0");
  return n * ((k - 1) * (k - 2) / 2);
}

struct Split {
  long invariant = 0, w = 0, w2 = 0;  // eigenvalues 1, w, w^2
  long total() const { return invariant + w + w2; }
  bool operator==(const Split& o) const { return invariant == o.invariant && w == o.w && w2 == o.w2; }
};

// d0 + d1 + d2 = total, d0 - d1 = trace (with d1 = d2, so the trace
// d0 + w d1 + w^2 d2 is the integer d0 - d1). d1 = d2 only holds when the
// action is defined over a real subfield; the caller has to say so.
inline Split eigenspace_split(long total, long trace, bool conjugation_symmetric = true) {
  if (!conjugation_symmetric) throw InvalidInput("eigenspace_split needs d1 = d2 (conjugation-symmetric action)");
  long diff = total - trace;
  if (total < 0 || diff < 0 || diff % 3 != 0 || trace + diff / 3 < 0)
    throw InvalidInput("no nonnegative integer split of " + std::to_string(total) + " with trace " +
                       std::to_string(trace));
  return {trace + diff / 3, diff / 3, diff / 3};
}

struct LefschetzRecord {
  long level;
  long fixed_points;
  long lefschetz_sum;  // sum (-1)^i Tr(g, H^i(X, 3H))
};

// The central C3 generator has 3 fixed points of type 1/3(1,2) on the base;
// each level of the 2-power tower doubles them and every point contributes
// the same amount, so the sum scales with the count.
inline LefschetzRecord lefschetz_fixed_points(long level) {
  if (level != 1 && level != 2 && level != 4 && level != 8)
    throw InvalidInput("Lefschetz data only for levels 1, 2, 4, 8 (got " + std::to_string(level) + ")");
  constexpr long base_points = 3, base_sum = 1;
  long pts = base_points * level;
  return {level, pts, base_sum * pts / base_points};
}

struct LedgerRow {
  std::string label;
  long n;  // cover degree, 0 for the quotient row
  long h0_3H;
  long h0_6H;
  std::string note;
};

struct DimLedger {
  std::vector<LedgerRow> rows;
  LefschetzRecord lefschetz;
  Split split_3H, split_6H;

  const LedgerRow& row(const std::string& label) const {
    for (const auto& r : rows)
      if (r.label == label) return r;
    throw InvalidInput("no ledger row " + label);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "surface            h0(3H)  h0(6H)  note\n";
    for (const auto& r : rows) {
      std::string l = r.label;
      l.resize(18, ' ');
      std::string a = std::to_string(r.h0_3H), b = std::to_string(r.h0_6H);
      a.insert(0, 6 - std::min<std::size_t>(6, a.size()), ' ');
      b.insert(0, 6 - std::min<std::size_t>(6, b.size()), ' ');
      os << l << " " << a << "  " << b << "  " << r.note << "\n";
    }
    os << "lefschetz: level " << lefschetz.level << ", " << lefschetz.fixed_points << " fixed points, sum "
       << lefschetz.lefschetz_sum << "\n";
    os << "C3 split of H0(8.P2,3H): " << split_3H.invariant << "/" << split_3H.w << "/" << split_3H.w2 << "\n";
    os << "C3 split of H0(8.P2,6H): " << split_6H.invariant << "/" << split_6H.w << "/" << split_6H.w2 << "\n";
    return os.str();
  }
};

// h0(6H) = chi(6H) by Kodaira vanishing; h0(3H) = chi(3H) - h2 + h1 = n - 1
// since h^{1,0} = 0. The singular quotient of 8.P2 takes the invariant parts.
inline DimLedger h0_ledger() {
  DimLedger L;
  const std::vector<std::pair<std::string, long>> tower = {
      {"P2fake", 1}, {"2.P2fake", 2}, {"4.P2fake", 4}, {"8.P2fake", 8}, {"72.P2fake", 72}, {"9.P2fake^", 9}};
  for (const auto& [label, n] : tower) {
    long h3 = chi_cover(n, 3) - 1 + 0;  // h2(3H) = h0(O) = 1, h1(3H) = h^{1,0} = 0
    long h6 = chi_cover(n, 6);
    L.rows.push_back({label, n, h3, h6, "Riemann-Roch, Kodaira vanishing, h10 = 0"});
  }
  L.rows.insert(L.rows.begin() + 1, {"P2fake^", 1, L.rows[0].h0_3H, L.rows[0].h0_6H, "same as P2fake"});

  // Lefschetz sum for g on 8.P2fake depends only on k mod 3, so it is the same for 3H and 6H.
  L.lefschetz = lefschetz_fixed_points(8);
  const auto& top = L.row("8.P2fake");
  // 3H: H2(3H) is the trivial one-dimensional piece, H1 = 0
  L.split_3H = eigenspace_split(top.h0_3H, L.lefschetz.lefschetz_sum - 1);
  // 6H: higher cohomology vanishes
  L.split_6H = eigenspace_split(top.h0_6H, L.lefschetz.lefschetz_sum);
  L.rows.insert(L.rows.begin() + 5, {"8.P2fake/C3", 0, L.split_3H.invariant, L.split_6H.invariant,
                                     "C3-invariants via holomorphic Lefschetz"});
  return L;
}

}  // namespace fppkit::geom
