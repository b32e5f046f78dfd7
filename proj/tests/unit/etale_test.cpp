#include <gtest/gtest.h>

#include "orbint/etale.hpp"
#include "orbint/harness.hpp"

using namespace orbint;

namespace {

bool congruent(const U1Rep& r, const Rational& s, const Rational& t, long p, long k) {
  return r.t.second == 0 && in_pk(r.s.first - s, p, k) && in_pk(r.t.first - t, p, k);
}

}  // namespace

TEST(Etale, DecomposeRecoversGamma) {
  LocalFieldSpec s(3, Rational(2));
  QMat g = block_diag(block_diag(companion(Poly({Rational(-2), Rational(0), Rational(1)})), QMat(1, 1, {Rational(5)})),
                      companion(Poly({Rational(-3), Rational(0), Rational(1)})));
  Generator gen(31);
  QMat gg = gen.conjugate(g);
  auto [alg, el] = decompose(gg, s);
  ASSERT_EQ(alg.size(), 3u);
  EXPECT_EQ(alg.S1().size(), 2u);
  EXPECT_EQ(alg.S2().size(), 1u);
  EXPECT_EQ(element_matrix(alg, el, gg), gg);
}

TEST(Etale, FactorTypes) {
  for (long p : {3L, 5L}) {
    long u = smallest_nonresidue(p);
    LocalFieldSpec un(p, Rational(u));
    QuadFactor e(Poly({Rational(-u), Rational(0), Rational(1)}), un);
    QuadFactor r(Poly({Rational(-p), Rational(0), Rational(1)}), un);
    EXPECT_TRUE(e.contains_E());
    EXPECT_FALSE(e.ramified());
    EXPECT_FALSE(r.contains_E());
    EXPECT_TRUE(r.ramified());
  }
}

TEST(Etale, U1CosetsAreDistinctNormOneAndCover) {
  for (long p : {3L, 5L})
    for (const auto& s : specs_for(p, std::nullopt)) {
      EtaleAlgebra a = EtaleAlgebra::from_factors({Poly::x()}, s);
      const Rational& tau = s.tau();
      for (long k = 1; k <= 2; ++k) {
        auto reps = u1_cosets(a, 0, k);
        for (const auto& r : reps) EXPECT_EQ(r.s.first * r.s.first - tau * r.t.first * r.t.first, Rational(1));
        for (std::size_t i = 0; i < reps.size(); ++i)
          for (std::size_t j = i + 1; j < reps.size(); ++j)
            EXPECT_FALSE(congruent(reps[i], reps[j].s.first, reps[j].t.first, p, k));
        if (!s.ramified()) EXPECT_EQ(static_cast<long>(reps.size()), (p + 1) * p_pow(p, k - 1).get_si());
        // every c / conj(c) lands in one of the cosets
        for (long x = -6; x <= 6; ++x)
          for (long y = -6; y <= 6; ++y) {
            Rational n = Rational(x * x) - tau * Rational(y * y);
            if (n == 0) continue;
            Rational zs = (Rational(x * x) + tau * Rational(y * y)) / n, zt = Rational(2 * x * y) / n;
            bool hit = false;
            for (const auto& r : reps) hit = hit || congruent(r, zs, zt, p, k);
            EXPECT_TRUE(hit) << "p=" << p << " tau=" << to_string(tau) << " x=" << x << " y=" << y;
          }
      }
    }
}
