#include <gtest/gtest.h>

#include <random>
#include <set>

#include "orbint/cyclotomic.hpp"
#include "orbint/rational.hpp"
#include "orbint/scalar.hpp"

using namespace orbint;

namespace {

// Primitive solutions of z^2 = a x^2 + b y^2 modulo p^3, by plain enumeration.
// For v(a), v(b) <= 1 their existence decides the symbol.
int hilbert_by_counting(long a, long b, long p) {
  long m = p * p * p;
  std::set<long> squares_unit_or_zero;
  std::vector<bool> is_sq(m, false);
  for (long z = 0; z < m; ++z) is_sq[z * z % m] = true;
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y) {
      long r = ((a % m + m) * (x * x % m) + (b % m + m) * (y * y % m)) % m;
      bool prim_xy = x % p != 0 || y % p != 0;
      for (long z = 0; z < m && !prim_xy; z += 1)
        if (z % p != 0 && z * z % m == r) return 1;
      if (prim_xy && is_sq[r]) return 1;
    }
  return -1;
}

}  // namespace

TEST(Rational, Valuations) {
  EXPECT_EQ(valuation(Rational(18), 3), 2);
  EXPECT_EQ(valuation(Rational(5, 27), 3), -3);
  EXPECT_EQ(p_pow_q(5, -2), Rational(1, 25));
  EXPECT_EQ(modrep(Rational(5, 6), 3, 1), modrep(Rational(5, 6) + Rational(3), 3, 1));
  EXPECT_TRUE(in_pk(Rational(9, 2), 3, 2));
  EXPECT_FALSE(in_pk(Rational(3, 2), 3, 2));
}

TEST(Cyclotomic, RootsOfUnity) {
  for (long m : {3L, 4L, 9L, 12L, 25L}) {
    CycScalar sum(0);
    for (long j = 0; j < m; ++j) sum += CycScalar::root_of_unity(m, j);
    EXPECT_TRUE(sum.is_zero()) << m;
    CycScalar z = CycScalar::root_of_unity(m, 1);
    EXPECT_EQ(z * z.conj(), CycScalar(1));
  }
}

TEST(Cyclotomic, InverseOfRandomElements) {
  std::mt19937 rng(4);
  for (int it = 0; it < 50; ++it) {
    long m = std::vector<long>{5, 7, 9, 15, 27}[rng() % 5];
    std::vector<Rational> c(m);
    for (auto& x : c) x = Rational(static_cast<long>(rng() % 7) - 3);
    CycScalar a = CycScalar::from_buckets(m, c);
    if (a.is_zero()) continue;
    EXPECT_EQ(a * a.inverse(), CycScalar(1));
    auto za = a.to_complex(), zi = a.inverse().to_complex();
    EXPECT_NEAR(std::abs(za * zi - std::complex<double>(1, 0)), 0.0, 1e-9);
  }
}

TEST(Scalar, SqrtP) {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    CycScalar s = sqrt_p(p);
    EXPECT_EQ(s * s, CycScalar(p));
    EXPECT_NEAR(s.to_complex().real(), std::sqrt(static_cast<double>(p)), 1e-9);
  }
}

TEST(Scalar, PsiIsACharacter) {
  std::mt19937 rng(5);
  for (long p : {3L, 5L})
    for (int it = 0; it < 30; ++it) {
      Rational x(static_cast<long>(rng() % 200) - 100, p * p);
      Rational y(static_cast<long>(rng() % 200) - 100, p * p * p);
      EXPECT_EQ(psi_value(x + y, p), psi_value(x, p) * psi_value(y, p));
      EXPECT_EQ(psi_value(Rational(static_cast<long>(rng() % 50)), p), CycScalar(1));
    }
}

TEST(Scalar, HilbertAgainstCounting) {
  for (long p : {3L, 5L})
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational a = class_representative(static_cast<SquareClass>(i), p);
        Rational b = class_representative(static_cast<SquareClass>(j), p);
        EXPECT_EQ(hilbert_symbol(a, b, p), hilbert_by_counting(a.get_num().get_si(), b.get_num().get_si(), p))
            << "p=" << p << " a=" << to_string(a) << " b=" << to_string(b);
      }
}

TEST(Scalar, HilbertIsBimultiplicative) {
  std::mt19937 rng(6);
  auto r = [&](long p) {
    Rational x(static_cast<long>(rng() % 40) + 1);
    return (rng() % 2 ? x : -x) * p_pow_q(p, static_cast<long>(rng() % 5) - 2);
  };
  for (long p : {3L, 5L, 7L})
    for (int it = 0; it < 40; ++it) {
      Rational a = r(p), b = r(p), c = r(p);
      EXPECT_EQ(hilbert_symbol(a * b, c, p), hilbert_symbol(a, c, p) * hilbert_symbol(b, c, p));
      EXPECT_EQ(hilbert_symbol(a, b, p), hilbert_symbol(b, a, p));
      EXPECT_EQ(hilbert_symbol(a, -a, p), 1);
    }
}

TEST(Scalar, ChiIsTheNormCharacter) {
  for (long p : {3L, 5L})
    for (Rational tau : {Rational(smallest_nonresidue(p)), Rational(p)}) {
      LocalFieldSpec s(p, tau);
      // norms x^2 - tau y^2 have chi = 1
      for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y) {
          Rational n = Rational(x * x) - tau * Rational(y * y);
          if (n != 0) EXPECT_EQ(chi(n, s), 1);
        }
      int minus = 0;
      for (int i = 0; i < 4; ++i) minus += chi(class_representative(static_cast<SquareClass>(i), p), s) < 0;
      EXPECT_EQ(minus, 2);
    }
}
