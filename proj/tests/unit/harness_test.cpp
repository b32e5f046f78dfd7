#include <gtest/gtest.h>

#include "orbint/harness.hpp"
#include "orbint/json_io.hpp"

using namespace orbint;

TEST(Ledger, FreezesOnFirstCalibration) {
  NormalizationLedger l;
  EXPECT_FALSE(l.constant("x").has_value());
  EXPECT_TRUE(l.calibrate("x", CycScalar(2)));
  EXPECT_TRUE(l.calibrate("x", CycScalar(2)));
  EXPECT_FALSE(l.calibrate("x", CycScalar(1)));
  NormalizationLedger back = NormalizationLedger::from_json(l.to_json());
  ASSERT_TRUE(back.constant("x").has_value());
  EXPECT_EQ(*back.constant("x"), CycScalar(2));
  EXPECT_EQ(back.measures(), l.measures());
}

TEST(Report, EmptyIsNotOk) {
  VerificationReport r;
  EXPECT_FALSE(r.ok());
  InstanceRecord a;
  r.record(a);
  EXPECT_TRUE(r.ok());
  InstanceRecord b;
  b.pass = false;
  b.input = {{"n", 1}};
  r.record(b);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.to_json()["failures"].size(), 1u);
}

TEST(Json, RoundTrips) {
  Generator g(91);
  for (int it = 0; it < 20; ++it) {
    StepFunction f = g.step_function(3, 5, 3);
    EXPECT_TRUE(step_function_from_json(to_json(f)).equals(f));
  }
  CycScalar z = CycScalar::root_of_unity(9, 2) + CycScalar(Rational(-3, 7));
  EXPECT_EQ(cyc_from_json(to_json(z)), z);
  EXPECT_EQ(rational_from_json(to_json(Rational(-22, 9))), Rational(-22, 9));
  LocalFieldSpec s(3, Rational(2));
  GLTriple d = g.triple(realize_mix({0, 1}, s), s);
  GLTriple e = triple_from_json(to_json(d));
  EXPECT_EQ(e.gamma, d.gamma);
  EXPECT_EQ(e.v, d.v);
  EXPECT_EQ(e.vstar, d.vstar);
  EVal w{Rational(1, 3), Rational(-2)};
  EXPECT_EQ(eval_from_json(to_json(w)), w);
}

TEST(Hilbert, SearchAgreesWithSymbol) {
  for (long p : {3L, 5L, 7L})
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational a = class_representative(static_cast<SquareClass>(i), p);
        Rational b = class_representative(static_cast<SquareClass>(j), p);
        EXPECT_EQ(hilbert_by_search(a, b, p), hilbert_symbol(a, b, p));
      }
}

TEST(Generator, MixesAreRealized) {
  for (const auto& s : specs_for(5, std::nullopt))
    for (const auto& mix : factor_mixes(3)) {
      EtaleAlgebra a = EtaleAlgebra::from_factors(realize_mix(mix, s), s);
      ASSERT_EQ(a.size(), mix.size());
      // the algebra keeps its factors in canonical order, so compare type counts
      int want[3] = {0, 0, 0}, got[3] = {0, 0, 0};
      for (int t : mix) ++want[t];
      for (const auto& f : a.factors()) ++got[f.degree() == 1 ? 0 : (f.contains_E() ? 1 : 2)];
      for (int t = 0; t < 3; ++t) EXPECT_EQ(got[t], want[t]);
    }
}
