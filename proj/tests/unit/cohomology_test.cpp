#include <gtest/gtest.h>

#include <set>

#include "orbint/cohomology.hpp"
#include "orbint/harness.hpp"

using namespace orbint;

TEST(Cohomology, FamilyIsATorsor) {
  Generator g(51);
  for (long p : {3L, 5L})
    for (const auto& s : specs_for(p, std::nullopt))
      for (const auto& mix : factor_mixes(3)) {
        GLTriple d = g.triple(realize_mix(mix, s), s);
        auto fam = delta_x_family(d, s);
        auto alg = decompose(d.gamma, s).first;
        ASSERT_EQ(fam.size(), std::size_t{1} << alg.S1().size());
        H1Class base = rho(fam[0].orbit.delta);
        std::set<H1Class> bits;
        for (const auto& e : fam) {
          bits.insert(e.bits);
          EXPECT_TRUE(match_predicate(GLTriple{d.gamma, d.v, twist_vstar(d, alg, e.x)}, e.orbit.delta, e.orbit.w));
          EXPECT_EQ(h1_add(rho(e.orbit.delta), base), e.bits);
          EXPECT_EQ(e.orbit.class_bit ^ fam[0].orbit.class_bit, h1_weight(e.bits) & 1);
        }
        EXPECT_EQ(bits.size(), fam.size());
      }
}

TEST(Cohomology, NormClassRepsHaveTheirBits) {
  Generator g(52);
  for (const auto& s : specs_for(3, std::nullopt)) {
    GLTriple d = g.triple(realize_mix({0, 2, 0}, s), s);
    auto alg = decompose(d.gamma, s).first;
    for (const auto& e : delta_x_family(d, s)) {
      auto norms = is_norm(alg, e.x);
      for (std::size_t k = 0; k < alg.S1().size(); ++k) EXPECT_EQ(e.bits[k], norms[alg.S1()[k]] ? 0 : 1);
    }
  }
}

TEST(Cohomology, PairingIsPerfect) {
  for (std::size_t s1 = 0; s1 <= 3; ++s1) {
    std::size_t n = std::size_t{1} << s1;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<bool> la(s1), lb(s1);
        for (std::size_t k = 0; k < s1; ++k) la[k] = a >> k & 1, lb[k] = b >> k & 1;
        long sum = 0;
        for (std::size_t x = 0; x < n; ++x) {
          H1Class h(s1);
          for (std::size_t k = 0; k < s1; ++k) h[k] = x >> k & 1;
          sum += pairing(la, h) * pairing(lb, h);
        }
        EXPECT_EQ(sum, a == b ? static_cast<long>(n) : 0);
      }
  }
}
