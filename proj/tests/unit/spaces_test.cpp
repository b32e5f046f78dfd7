#include <gtest/gtest.h>

#include "orbint/harness.hpp"
#include "orbint/spaces.hpp"

using namespace orbint;

TEST(Spaces, SplitAndNonsplitClasses) {
  for (long p : {3L, 5L})
    for (const auto& s : specs_for(p, std::nullopt))
      for (std::size_t n = 1; n <= 3; ++n) {
        if (n > 1) EXPECT_EQ(HermitianSpace::split(n, s).class_bit(), 0);
        EXPECT_EQ(HermitianSpace::nonsplit(n, s).class_bit(), 1);
        for (int bit : {0, 1}) EXPECT_EQ(HermitianSpace::of_class(n, bit, s).class_bit(), bit);
      }
}

TEST(Spaces, ConstructedMatchesMatch) {
  Generator g(41);
  for (long p : {3L, 5L})
    for (const auto& s : specs_for(p, std::nullopt))
      for (const auto& mix : factor_mixes(3)) {
        GLTriple d = g.triple(realize_mix(mix, s), s);
        UnitaryOrbit u = construct_unitary_match(d, s);
        EXPECT_TRUE(is_twisted(u.delta.space(), u.delta.matrix()));
        EXPECT_TRUE(match_predicate(d, u.delta, u.w));
        GLTriple back = construct_gl_match(u.delta, u.w);
        EXPECT_EQ(invariants(back), invariants(d));
      }
}

TEST(Spaces, InvariantsAreConjugationInvariant) {
  Generator g(42);
  LocalFieldSpec s(3, Rational(2));
  for (int it = 0; it < 20; ++it) {
    GLTriple d = g.triple(realize_mix({0, 1}, s), s);
    QMat h = g.conjugate(QMat::identity(d.dim()));
    // (h gamma h^-1, h v, v* h^-1)
    QMat hi = h.inverse();
    GLTriple e{h * d.gamma * hi, h * d.v, std::vector<Rational>(d.dim(), Rational(0))};
    for (std::size_t j = 0; j < d.dim(); ++j)
      for (std::size_t i = 0; i < d.dim(); ++i) e.vstar[j] += d.vstar[i] * hi(i, j);
    EXPECT_EQ(invariants(e), invariants(d));
    EXPECT_EQ(delta_value(e), delta_value(d));
  }
}

TEST(Spaces, ResultantIsProductOfRootDifferences) {
  EXPECT_EQ(d_delta(Poly({Rational(-3), Rational(1)}), Poly({Rational(-5), Rational(1)})), Rational(-2));
  // roots +-1 and 2: (1-2)(-1-2)
  EXPECT_EQ(d_delta(Poly({Rational(-1), Rational(0), Rational(1)}), Poly({Rational(-2), Rational(1)})), Rational(3));
}
