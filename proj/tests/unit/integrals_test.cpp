#include <gtest/gtest.h>

#include "orbint/harness.hpp"
#include "orbint/integrals.hpp"

using namespace orbint;

namespace {

// int_{F^x} f(t, eps/t) chi(t) d^x t, summed shell by shell over unit residues.
CycScalar torus_by_shells(const StepFunction& f, const Rational& eps, const LocalFieldSpec& s) {
  long p = s.p();
  long cx = f.constancy_level(0), cy = f.constancy_level(1);
  long fx = std::min(f.support_floor(0), cx), fy = std::min(f.support_floor(1), cy);
  long ve = valuation(eps, p);
  CycScalar total(0);
  for (long k = fx; k <= ve - fy; ++k) {
    long m = std::max<long>({1, cx - k, cy - (ve - k)});
    long pm = p_pow(p, m).get_si();
    CycScalar shell(0);
    for (long u = 1; u < pm; ++u) {
      if (u % p == 0) continue;
      Rational t = Rational(u) * p_pow_q(p, k);
      shell += f.evaluate({t, eps / t}) * CycScalar(chi(t, s));
    }
    total += shell * CycScalar(Rational(1, pm / p * (p - 1)));
  }
  return total;
}

}  // namespace

TEST(Integrals, RankOneAgainstShellSums) {
  Generator g(61);
  for (long p : {3L, 5L})
    for (const auto& s : specs_for(p, std::nullopt)) {
      EtaleAlgebra a = EtaleAlgebra::from_factors({Poly::x()}, s);
      for (int it = 0; it < 20; ++it) {
        StepFunction f = g.step_function(2, p, static_cast<int>(g.uniform(1, 3)));
        for (long k = -1; k <= 4; ++k)
          for (long u : {1L, smallest_nonresidue(p)}) {
            Rational eps = Rational(u) * p_pow_q(p, k);
            EXPECT_EQ(torus_orbit_integral(a, f, AlgElement({{eps, Rational(0)}})), torus_by_shells(f, eps, s))
                << "p=" << p << " eps=" << to_string(eps);
          }
      }
    }
}

TEST(Integrals, FastModeMatchesDirectMode) {
  Generator g(62);
  for (const auto& s : specs_for(3, std::nullopt))
    for (const auto& mix : std::vector<std::vector<int>>{{1}, {2}, {0, 1}, {0, 2}}) {
      EtaleAlgebra a = EtaleAlgebra::from_factors(realize_mix(mix, s), s);
      for (int it = 0; it < 4; ++it) {
        StepFunction f = g.step_function(2 * a.dimension(), 3, 2, 1);
        TorusIntegrator fast(a, f), direct(a, f, true);
        for (const auto& eps : germ_grid(a, 0, 2)) EXPECT_EQ(fast(eps), direct(eps));
      }
    }
}

TEST(Integrals, ExplicitValuesForTheUnitLattice) {
  for (long p : {3L, 5L}) {
    LocalFieldSpec un(p, Rational(smallest_nonresidue(p)));
    EtaleAlgebra f = EtaleAlgebra::from_factors({Poly::x()}, un);
    EtaleAlgebra e = EtaleAlgebra::from_factors(realize_mix({1}, un), un);
    StepFunction one2 = StepFunction::lattice(2, p, 0), one4 = StepFunction::lattice(4, p, 0);
    for (long k = 0; k < 6; ++k) {
      EXPECT_EQ(torus_orbit_integral(f, one2, AlgElement({deep_element(f.factor(0), k, {Rational(1), Rational(0)})})),
                CycScalar(k % 2 == 0 ? 1 : 0));
      EXPECT_EQ(torus_orbit_integral(e, one4, AlgElement({deep_element(e.factor(0), k, {Rational(1), Rational(0)})})),
                CycScalar(k + 1));
    }
  }
}

TEST(Integrals, GermExpansionCertifies) {
  Generator g(63);
  for (const auto& s : specs_for(3, std::nullopt))
    for (const auto& mix : std::vector<std::vector<int>>{{0}, {1}, {0, 1}, {1, 1}, {0, 2}}) {
      EtaleAlgebra a = EtaleAlgebra::from_factors(realize_mix(mix, s), s);
      for (int it = 0; it < 3; ++it) {
        StepFunction f = g.step_function(2 * a.dimension(), 3, 2, 1);
        GermExpansion ge = germ_extract(a, f);
        ASSERT_TRUE(ge.certified);
        for (const auto& [bits, tab] : ge.coeffs) EXPECT_EQ(tab.front(), c_empty_closed_form(a, f, bits));
        TorusIntegrator ti(a, f);
        for (const auto& eps : germ_grid(a, ge.radius + 4, 1)) EXPECT_EQ(ti(eps), ge.predict(a, eps));
      }
    }
}
