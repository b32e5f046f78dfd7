#include <gtest/gtest.h>

#include "orbint/harness.hpp"
#include "orbint/zeta.hpp"

using namespace orbint;

namespace {

// sum_k x^k int_{p^k O^x} f(t) chi(t) d^x t with O^x of mass 1: shells below the
// constancy scale are summed over unit residues, the rest is a geometric tail.
CycScalar zeta_by_shells(const StepFunction& f, const LocalFieldSpec& s, const Rational& x) {
  long p = s.p();
  long c = f.constancy_level(0), lo = std::min(f.support_floor(0), c);
  CycScalar total(0);
  for (long k = lo; k < c; ++k) {
    long m = std::max<long>(1, c - k);
    long pm = p_pow(p, m).get_si();
    CycScalar shell(0);
    for (long u = 1; u < pm; ++u) {
      if (u % p == 0) continue;
      Rational t = Rational(u) * p_pow_q(p, k);
      shell += f.evaluate({t}) * CycScalar(chi(t, s));
    }
    total += shell * CycScalar(Rational(1, pm / p * (p - 1))) * CycScalar(rpow(x, k));
  }
  // tail: f = f(0) there
  CycScalar unit_avg(0);
  for (long u = 1; u < p; ++u) unit_avg += CycScalar(chi(Rational(u), s));
  unit_avg = unit_avg * CycScalar(Rational(1, p - 1));
  Rational r = x * chi(Rational(p), s);
  total += f.evaluate({Rational(0)}) * unit_avg * CycScalar(rpow(r, c) / (Rational(1) - r));
  return total;
}

}  // namespace

TEST(Zeta, TateIntegralsOfTheLattice) {
  for (long p : {3L, 5L}) {
    LocalFieldSpec un(p, Rational(smallest_nonresidue(p)));
    QuadFactor f(Poly::x(), un);
    auto z = mult_zeta(StepFunction::lattice(1, p, 0), {ZetaFactor{f, true, 1}}, un);
    EXPECT_EQ(z.pole_order_at_one(), 0);
    EXPECT_EQ(z.at_one(), CycScalar(Rational(1, 2)));
    auto z0 = mult_zeta(StepFunction::lattice(1, p, 0), {ZetaFactor{f, false, 1}}, un);
    EXPECT_EQ(z0.pole_order_at_one(), 1);
    LocalFieldSpec ram(p, Rational(p));
    QuadFactor fr(Poly::x(), ram);
    EXPECT_TRUE(mult_zeta(StepFunction::lattice(1, p, 0), {ZetaFactor{fr, true, 1}}, ram).is_zero());
  }
}

TEST(Zeta, AgreesWithShellSums) {
  Generator g(21);
  for (long p : {3L, 5L})
    for (const auto& s : specs_for(p, std::nullopt)) {
      QuadFactor f(Poly::x(), s);
      for (int it = 0; it < 25; ++it) {
        StepFunction h = g.step_function(1, p, static_cast<int>(g.uniform(1, 3)));
        ZetaElement z = mult_zeta(h, {ZetaFactor{f, true, 1}}, s);
        Rational x(1, 3);
        EXPECT_EQ(z.at(CycScalar(x)), zeta_by_shells(h, s, x)) << "p=" << p;
      }
    }
}
