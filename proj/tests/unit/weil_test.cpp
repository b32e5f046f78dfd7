#include <gtest/gtest.h>

#include "orbint/weil.hpp"

using namespace orbint;

namespace {

// sum over (Z/p)^n of zeta_p^{sum u_i t_i^2}, divided by sqrt(p)^n: the index of
// sum p u_i x_i^2 computed as one lattice sum.
CycScalar gauss_lattice(const std::vector<long>& u, long p) {
  std::size_t n = u.size();
  std::vector<Rational> buckets(p, Rational(0));
  std::vector<long> t(n, 0);
  for (;;) {
    long e = 0;
    for (std::size_t i = 0; i < n; ++i) e += u[i] * t[i] * t[i];
    buckets[((e % p) + p) % p] += 1;
    std::size_t i = 0;
    while (i < n && ++t[i] == p) t[i++] = 0;
    if (i == n) break;
  }
  CycScalar s = CycScalar::from_buckets(p, buckets), d(1);
  for (std::size_t i = 0; i < n; ++i) d = d * sqrt_p(p);
  return s * d.inverse();
}

}  // namespace

TEST(Weil, UnitsGiveOne) {
  for (long p : {3L, 5L, 7L})
    for (long u = 1; u < p; ++u) EXPECT_EQ(weil_index(Rational(u), p), CycScalar(1));
}

TEST(Weil, DiagonalFormsAgainstLatticeSums) {
  for (long p : {3L, 5L, 7L}) {
    long nr = smallest_nonresidue(p);
    for (const auto& u : std::vector<std::vector<long>>{{1}, {nr}, {1, 1}, {1, nr}, {nr, nr}, {1, 1, nr}, {1, -1, 1}}) {
      QuadFormDiag q;
      for (long c : u) q.coeffs.push_back(Rational(p * c));
      CycScalar g = weil_index(q, p);
      EXPECT_EQ(g, gauss_lattice(u, p)) << "p=" << p;
      EXPECT_EQ(g * g.conj(), CycScalar(1));
    }
  }
}

TEST(Weil, Relations) {
  for (long p : {3L, 5L, 7L})
    for (int i = 0; i < 4; ++i) {
      Rational a = class_representative(static_cast<SquareClass>(i), p);
      EXPECT_EQ(weil_index(a, p) * weil_index(-a, p), CycScalar(1));
      EXPECT_EQ(weil_index(a * Rational(p * p), p), weil_index(a, p));
      for (int j = 0; j < 4; ++j) {
        Rational b = class_representative(static_cast<SquareClass>(j), p);
        EXPECT_EQ(weil_index(a, p) * weil_index(b, p),
                  weil_index(Rational(1), p) * weil_index(a * b, p) * CycScalar(hilbert_symbol(a, b, p)));
      }
    }
}

TEST(Weil, SignIdentity) {
  for (long p : {3L, 5L, 7L})
    for (Rational tau : {Rational(smallest_nonresidue(p)), Rational(p)}) {
      SignIdentityReport r = verify_sign_identity(LocalFieldSpec(p, tau), 3);
      EXPECT_TRUE(r.a1_ok);
      EXPECT_TRUE(r.lambda_independent);
      ASSERT_EQ(r.c_by_n.size(), 3u);
      EXPECT_EQ(r.c_by_n[0], CycScalar(1));
      EXPECT_EQ(r.c_by_n[1], CycScalar(-1));
      EXPECT_EQ(r.c_by_n[2], CycScalar(1));
    }
}

TEST(Weil, TraceFormHasTheRightRank) {
  LocalFieldSpec s(5, Rational(2));
  for (std::size_t n = 1; n <= 3; ++n) {
    auto w = HermitianSpace::nonsplit(n, s);
    EXPECT_EQ(twisted_lie_basis(w).size(), n * n);
    EXPECT_EQ(diagonalize_trace_form(w).coeffs.size(), n * n);
  }
}
