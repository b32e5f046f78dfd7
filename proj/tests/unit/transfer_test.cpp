#include <gtest/gtest.h>

#include "orbint/harness.hpp"
#include "orbint/orbits.hpp"

using namespace orbint;

TEST(Transfer, ZeroGoesToZero) {
  for (const auto& s : specs_for(3, std::nullopt)) {
    TransferN1 t = construct_jr_transfer_n1(StepFunction(3, 3), s);
    EXPECT_TRUE(t.certified);
    EXPECT_TRUE(t.inv[0].is_zero());
    EXPECT_TRUE(t.inv[1].is_zero());
  }
}

TEST(Transfer, IsLinear) {
  Generator g(81);
  for (const auto& s : specs_for(3, std::nullopt))
    for (int it = 0; it < 4; ++it) {
      StepFunction a = g.step_function(3, 3, 2, 1), b = g.step_function(3, 3, 2, 1);
      TransferN1 ta = construct_jr_transfer_n1(a, s), tb = construct_jr_transfer_n1(b, s);
      TransferN1 tab = construct_jr_transfer_n1(a + b.scaled(CycScalar(2)), s);
      ASSERT_TRUE(ta.certified && tb.certified && tab.certified);
      // f_i only sees b = lambda_i Nm w, so compare through value() and the germ at 0
      const Rational& tau = s.tau();
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 60; ++k) {
          Rational delta(g.uniform(-9, 9), 3);
          EVal w{Rational(g.uniform(-9, 9)) * p_pow_q(3, g.uniform(-1, 3)), Rational(g.uniform(-9, 9))};
          EXPECT_EQ(tab.value(c, delta, w, tau),
                    ta.value(c, delta, w, tau) + tb.value(c, delta, w, tau) * CycScalar(2));
          EXPECT_EQ(tab.at_zero(c, delta), ta.at_zero(c, delta) + tb.at_zero(c, delta) * CycScalar(2));
        }
    }
}

TEST(Transfer, MatchesOrbitIntegrals) {
  Generator g(82);
  for (long p : {3L, 5L})
    for (const auto& s : specs_for(p, std::nullopt))
      for (int it = 0; it < 4; ++it) {
        StepFunction f = g.step_function(3, p, 2, 1);
        TransferN1 t = construct_jr_transfer_n1(f, s);
        ASSERT_TRUE(t.certified);
        for (int k = 0; k < 10; ++k) {
          GLTriple d{QMat::from_rows({{Rational(g.uniform(-3, 3), p)}}),
                     {Rational(g.uniform(1, 4)) * p_pow_q(p, g.uniform(-1, 1))},
                     {Rational(g.uniform(1, 4)) * p_pow_q(p, g.uniform(-1, 1))}};
          Rational b = d.v[0] * d.vstar[0];
          int cls = chi(b, s) == 1 ? 0 : 1;
          EXPECT_EQ(CycScalar(omega(d, s)) * gl_orbit_integral(f, d, s, true),
                    t.inv[cls].evaluate({d.gamma(0, 0), b}));
        }
      }
}

TEST(Transfer, UnitLatticeValues) {
  for (long p : {3L, 5L}) {
    LocalFieldSpec s(p, Rational(smallest_nonresidue(p)));
    StepFunction one = StepFunction::lattice(3, p, 0);
    for (long e = -2; e <= 2; ++e)
      for (long vb = -2; vb <= 3; ++vb) {
        GLTriple d{QMat::from_rows({{p_pow_q(p, e)}}), {Rational(1)}, {p_pow_q(p, vb)}};
        bool expect = e >= 0 && vb >= 0 && vb % 2 == 0;
        EXPECT_EQ(CycScalar(omega(d, s)) * gl_orbit_integral(one, d, s), CycScalar(expect ? 1 : 0))
            << "e=" << e << " v(b)=" << vb;
      }
  }
}

TEST(Transfer, NilpotentIdentityCalibratesToTwo) {
  SuiteOptions o;
  o.primes = {3};
  o.instances = 8;
  NormalizationLedger ledger;
  VerificationReport r = verify_nilpotent_identity(o, ledger);
  EXPECT_TRUE(r.ok()) << r.to_json().dump(1);
  ASSERT_TRUE(r.calibration.has_value());
  EXPECT_EQ(*r.calibration, CycScalar(2));
}

TEST(Transfer, FundamentalLemmaRankOne) {
  SuiteOptions o;
  o.primes = {3};
  VerificationReport r = verify_fl_n1(o);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.nontrivial, 0);
}
