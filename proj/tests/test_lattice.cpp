#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "fppkit/exact/reconstruct.hpp"
#include "fppkit/lattice/recognize.hpp"
#include "fppkit/lattice/shrink.hpp"

using namespace fppkit;
using namespace fppkit::lattice;

namespace {

IntMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (auto r : rows) {
    std::vector<Integer> v;
    for (long x : r) v.emplace_back(x);
    m.push_back(v);
  }
  return m;
}

// min |v|^2 over nonzero combinations with coefficients in [-B, B]
Integer box_min_norm(const IntMatrix& b, int B) {
  std::size_t n = b.size();
  std::vector<int> c(n, -B);
  Integer best = -1;
  while (true) {
    bool nz = false;
    std::vector<Integer> v(b[0].size(), Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i]) nz = true;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[i] * b[i][j];
    }
    if (nz) {
      Integer nn = dot(v, v);
      if (best < 0 || nn < best) best = nn;
    }
    std::size_t i = 0;
    while (i < n && c[i] == B) c[i++] = -B;
    if (i == n) break;
    ++c[i];
  }
  return best;
}

void expect_valid_reduction(const IntMatrix& in, const LllResult& r, const Rational& delta) {
  EXPECT_TRUE(is_lll_reduced(r.basis, delta));
  EXPECT_EQ(multiply(r.transform, in), r.basis);
  Integer det = determinant(r.transform);
  EXPECT_TRUE(det == 1 || det == -1) << det;
}

IntPoly ipoly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(v);
}

std::string read_w() {
  std::ifstream in(std::string(FPPKIT_TEST_DATA) + "/w_value.txt");
  std::string s;
  std::getline(in, s);
  return s;
}

}  // namespace

TEST(Lll, IdentityUnchanged) {
  auto I = identity_matrix(4);
  auto r = lll_reduce(I, Rational(3, 4));
  EXPECT_EQ(r.basis, I);
  EXPECT_EQ(r.transform, I);
}

TEST(Lll, SmallRank3Example) {
  auto B = M({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
  auto r = lll_reduce(B, Rational(3, 4));
  expect_valid_reduction(B, r, Rational(3, 4));
  EXPECT_LE(dot(r.basis[0], r.basis[0]), 2);
  // brute force over a box that is ample for det 3: LLL hits the minimum
  EXPECT_EQ(dot(r.basis[0], r.basis[0]), box_min_norm(B, 10));
}

TEST(Lll, SkewedZ2) {
  IntMatrix B{{Integer(1), Integer(0)}, {Integer(1000000), Integer(1)}};
  auto r = lll_reduce(B);
  expect_valid_reduction(B, r, Rational(99, 100));
  for (const auto& row : r.basis) EXPECT_EQ(dot(row, row), 1);
  // {(0,1),(1,0)} as a set, signs free
  EXPECT_EQ(abs(r.basis[0][0]) + abs(r.basis[1][0]), 1);
  EXPECT_EQ(abs(r.basis[0][1]) + abs(r.basis[1][1]), 1);
}

TEST(Lll, DependentRowsRejected) {
  EXPECT_THROW(lll_reduce(M({{1, 2, 3}, {2, 4, 6}})), InvalidInput);
  EXPECT_THROW(lll_reduce(M({{1, 2}, {3, 4}, {5, 6}})), InvalidInput);
  EXPECT_THROW(lll_reduce(M({{0, 0}, {1, 0}})), InvalidInput);
  EXPECT_THROW(lll_reduce(M({{1, 0}}), Rational(1, 5)), InvalidInput);
}

TEST(Lll, RandomLatticesAgainstBruteForce) {
  std::mt19937_64 rng(20260316);
  std::uniform_int_distribution<int> e(-6, 6);
  int done = 0;
  while (done < 20) {
    std::size_t n = 2 + rng() % 3, m = n + rng() % 2;
    IntMatrix B(n, std::vector<Integer>(m));
    for (auto& row : B)
      for (auto& x : row) x = e(rng);
    // keep only independent inputs
    bool indep = true;
    try {
      gram_schmidt(B);
    } catch (const InvalidInput&) {
      indep = false;
    }
    if (!indep) continue;
    for (Rational delta : {Rational(3, 4), Rational(99, 100)}) {
      auto r = lll_reduce(B, delta);
      expect_valid_reduction(B, r, delta);
      // |b1|^2 <= alpha^(n-1) lambda1^2 with alpha = 1/(delta - 1/4)
      Rational alpha = 1 / (delta - Rational(1, 4));
      Rational bound = box_min_norm(r.basis, 3);
      for (std::size_t i = 1; i < n; ++i) bound *= alpha;
      EXPECT_LE(Rational(dot(r.basis[0], r.basis[0])), bound);
    }
    ++done;
  }
}

TEST(Lll, Cancellation) {
  CancelToken t;
  t.cancel();
  EXPECT_THROW(lll_reduce(M({{1, 0}, {5, 1}}), Rational(99, 100), &t), Cancelled);
}

TEST(Shrink, AlreadyReducedRowsOnlyReordered) {
  auto E = M({{0, 3, 0}, {1, 0, 0}, {0, 0, 2}});
  auto s = shrink_basis(E);
  EXPECT_EQ(s.rows, M({{1, 0, 0}, {0, 0, 2}, {0, 3, 0}}));
  EXPECT_EQ(multiply(s.transform, E), s.rows);
}

TEST(Shrink, DifferenceVector) {
  auto E = M({{1000000, 999999}, {999999, 999998}});
  auto s = shrink_basis(E);
  // det E = -1: the row lattice is Z^2, so (1,1) is in it and rows are unit size
  EXPECT_EQ(determinant(E), -1);
  EXPECT_EQ(max_abs_entry(s.rows), 1);
  Integer d = determinant(s.rows);
  Integer c0 = (s.rows[1][1] - s.rows[1][0]) * d, c1 = (s.rows[0][0] - s.rows[0][1]) * d;
  EXPECT_EQ(c0 * s.rows[0][0] + c1 * s.rows[1][0], 1);
  EXPECT_EQ(c0 * s.rows[0][1] + c1 * s.rows[1][1], 1);
  EXPECT_EQ(multiply(s.transform, E), s.rows);
  EXPECT_LE(max_abs_entry(s.rows), max_abs_entry(E));
}

TEST(Shrink, RecoversPlantedRows) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(-9, 9);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix orig(5, std::vector<Integer>(8));
    for (auto& r : orig)
      for (auto& x : r) x = small(rng);
    try {
      gram_schmidt(orig);
    } catch (const InvalidInput&) {
      continue;
    }
    // random unimodular U with large entries from elementary operations
    IntMatrix U = identity_matrix(5);
    std::uniform_int_distribution<int> big(-40, 40);
    for (int step = 0; step < 30; ++step) {
      std::size_t i = rng() % 5, j = rng() % 5;
      if (i == j) continue;
      Integer q = big(rng);
      for (std::size_t c = 0; c < 5; ++c) U[i][c] += q * U[j][c];
    }
    ASSERT_EQ(abs(determinant(U)), 1);
    auto E = multiply(U, orig);
    ASSERT_GT(max_abs_entry(E), 100);
    auto s = shrink_basis(E);
    EXPECT_EQ(multiply(s.transform, E), s.rows);
    EXPECT_EQ(abs(determinant(s.transform)), 1);
    EXPECT_LE(max_abs_entry(s.rows), 4 * max_abs_entry(orig));
    for (std::size_t i = 1; i < s.rows.size(); ++i)
      EXPECT_LE(max_abs_entry(s.rows[i - 1]), max_abs_entry(s.rows[i]));
  }
}

TEST(Shrink, DependentRowsRejected) { EXPECT_THROW(shrink_basis(M({{2, 4}, {1, 2}})), InvalidInput); }

TEST(PadicRecognition, Sqrt2) {
  auto r = exact::hensel_root_lift(ipoly({-2, 0, 1}), 7, 3, 20);
  auto rec = minpoly_from_padic(r, 2, 100);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec.candidate->poly, ipoly({-2, 0, 1}));
  EXPECT_EQ(rec.candidate->degree, 2u);
  EXPECT_EQ(rec.candidate->height, 2);
}

TEST(PadicRecognition, CutCoefficient) {
  auto K = exact::fields::q_sqrt_m2();
  auto roots = exact::roots_mod_p(ipoly({2, 0, 1}), 73);
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r0 : roots) {
    auto t = exact::hensel_root_lift(ipoly({2, 0, 1}), 73, r0, 30);
    exact::NumberFieldElement x(K, {Rational(-773, 66449), Rational(16, 66449)});
    auto rec = minpoly_from_padic(exact::nf_embed_mod_pk(x, t), 2, 100000);
    ASSERT_TRUE(rec);
    EXPECT_EQ(rec.candidate->poly, ipoly({9, 1546, 66449}));
    // soundness
    EXPECT_EQ(exact::eval_mod(rec.candidate->poly, exact::nf_embed_mod_pk(x, t).value(), t.modulus()), 0);
  }
}

TEST(PadicRecognition, IntegerIsDegreeOne) {
  auto r = Residue::from_rational(3, 73, 30);
  auto rec = minpoly_from_padic(r, 2, 1000);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec.candidate->poly, ipoly({-3, 1}));
}

TEST(PadicRecognition, PrecisionFloor) {
  auto r = Residue::from_rational(3, 7, 3);
  EXPECT_THROW(minpoly_from_padic(r, 2, 1000), InsufficientPrecision);
  EXPECT_NO_THROW(minpoly_from_padic(r, 2, 1000, true));
}

TEST(PadicRecognition, NoneForRandomResidue) {
  // a random residue mod 73^30 has no relation of height <= 10 in degree <= 2
  Integer M73 = ipow(73, 30);
  gmp_randclass g(gmp_randinit_default);
  g.seed(42);
  auto r = Residue::from_rational(Rational(Integer(g.get_z_range(M73))), 73, 30);
  auto rec = minpoly_from_padic(r, 2, 10);
  EXPECT_FALSE(rec);
  EXPECT_TRUE(rec.rejected.has_value());
}

TEST(FloatRecognition, Sqrt2) {
  auto prec = bits_for_digits(40);
  auto x = ComplexMP::parse("1.414213562373095048801688724209698078570", prec);
  auto rec = minpoly_from_float(x, 2, 40);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec.candidate->poly, ipoly({-2, 0, 1}));
  EXPECT_GE(rec.candidate->margin, 100);
  EXPECT_LT(evaluate_abs(rec.candidate->poly, x), mpf_class("1e-20", prec));
}

TEST(FloatRecognition, Rational) {
  auto x = ComplexMP::parse("0.75", bits_for_digits(30));
  auto rec = minpoly_from_float(x, 1, 30);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec.candidate->poly, ipoly({-3, 4}));
}

TEST(FloatRecognition, CubeRootW) {
  auto prec = bits_for_digits(110);
  auto x = ComplexMP::parse(read_w(), prec);
  auto rec = minpoly_from_float(x, 6, 100);
  ASSERT_TRUE(rec) << rec.reason;
  EXPECT_EQ(rec.candidate->poly, ipoly({2, 0, 0, -4, 0, 0, 3}));
  EXPECT_EQ(rec.candidate->degree, 6u);
}

TEST(FloatRecognition, ComplexRootMatchesOracle) {
  // W computed here by Newton must agree with the independent fixture
  auto prec = bits_for_digits(120);
  auto sq = ComplexMP::from_rational(2, prec).sqrt();
  ComplexMP target(mpf_class(Rational(2, 3), prec), mpf_class(-sq.re() / 3, prec), prec);
  auto w = target.cbrt();
  auto ref = ComplexMP::parse(read_w(), prec);
  EXPECT_LT((w - ref).abs(), mpf_class("1e-105", prec));
}

TEST(FloatRecognition, TooFewDigitsGivesNoneWithDiagnostics) {
  auto x = ComplexMP::parse(read_w().substr(0, 12), bits_for_digits(10));
  auto rec = minpoly_from_float(x, 6, 10);
  EXPECT_FALSE(rec);
  ASSERT_TRUE(rec.rejected.has_value());
}

TEST(FloatRecognition, ReciprocalReversesCoefficients) {
  auto prec = bits_for_digits(60);
  auto s = ComplexMP::from_rational(2, prec).sqrt();
  std::vector<ComplexMP> xs{s + ComplexMP::from_rational(1, prec), ComplexMP::from_rational(Rational(5, 7), prec),
                            ComplexMP::from_rational(3, prec).root(3)};
  for (const auto& x : xs) {
    auto a = minpoly_from_float(x, 3, 50);
    auto b = minpoly_from_float(ComplexMP::from_rational(1, prec) / x, 3, 50);
    ASSERT_TRUE(a && b);
    auto c = a.candidate->poly.coeffs();
    std::reverse(c.begin(), c.end());
    EXPECT_EQ(exact::primitive_part(IntPoly(c)), b.candidate->poly);
  }
}

TEST(NfReconstruct, RandomElements) {
  auto K = exact::fields::q_sqrt_m2();
  auto t = exact::hensel_root_lift(ipoly({2, 0, 1}), 73, exact::roots_mod_p(ipoly({2, 0, 1}), 73)[0], 20);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 3000);
  for (int i = 0; i < 50; ++i) {
    long d = den(rng);
    Rational a(num(rng), d), b(num(rng), d);
    a.canonicalize();
    b.canonicalize();
    exact::NumberFieldElement x(K, {a, b});
    auto y = nf_reconstruct(exact::nf_embed_mod_pk(x, t), t, K);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(*y, x);
  }
}
