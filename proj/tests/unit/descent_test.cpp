#include <gtest/gtest.h>

#include "orbint/descent.hpp"
#include "orbint/harness.hpp"
#include "orbint/orbits.hpp"

using namespace orbint;

namespace {

StepFunction biased(Generator& g, long p, long l1, long l2) {
  StepFunction f(8, p);
  int nt = static_cast<int>(g.uniform(1, 3));
  for (int t = 0; t < nt; ++t) {
    Box b;
    long lx = g.uniform(0, 1), lv = g.uniform(1, 2), lw = g.uniform(0, 1);
    for (int j = 0; j < 8; ++j) {
      long l = j < 4 ? lx : (j < 6 ? lv : lw);
      b.level.push_back(l);
      b.center.push_back(Rational(g.uniform(0, p_pow(p, l).get_si() - 1)));
    }
    if (g.uniform(0, 3)) {
      long m = p_pow(p, lx).get_si();
      b.center[0] = Rational(((l1 % m) + m) % m);
      b.center[3] = Rational(((l2 % m) + m) % m);
      b.center[2] = 0;
      b.center[5] = 0;
      b.center[6] = 0;
      b.center[4] = Rational(g.uniform(1, p - 1));
      if (lw > 0) b.center[7] = Rational(g.uniform(1, p - 1));
    }
    f.add_term(b, CycScalar(g.uniform(1, 3)));
  }
  return f;
}

}  // namespace

TEST(Descent, ActionMatrixIsAHomomorphism) {
  QMat a = QMat::from_rows({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}});
  QMat b = QMat::from_rows({{Rational(2), Rational(1)}, {Rational(1), Rational(1)}});
  EXPECT_EQ(gl_action_matrix(a * b), gl_action_matrix(a) * gl_action_matrix(b));
  EXPECT_EQ(gl_residue_reps(2, 3, 1).size(), 48u);
}

TEST(Descent, KAverageIsEquivariant) {
  Generator g(71);
  for (const auto& s : specs_for(3, std::nullopt)) {
    for (int it = 0; it < 3; ++it) {
      StepFunction f = g.block_step_function({4, 2, 2}, 3, 2, 1);
      StepFunction fk = k_average(f, 2, s);
      std::vector<Rational> zero(8, Rational(0));
      for (const QMat& k : {QMat::from_rows({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}}),
                            QMat::from_rows({{Rational(2), Rational(0)}, {Rational(0), Rational(1)}}),
                            QMat::from_rows({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}})}) {
        StepFunction moved = fk.pullback(gl_action_matrix(k), zero);
        EXPECT_TRUE(moved.equals(fk.scaled(CycScalar(chi(k.det(), s)))));
      }
    }
  }
}

TEST(Descent, NilpotentOrbitIntegralDescends) {
  Generator g(72);
  long p = 3;
  int nontrivial = 0;
  for (const auto& s : specs_for(p, std::nullopt))
    for (int it = 0; it < 5; ++it) {
      long l1 = g.uniform(-2, 2), l2 = l1 + (g.uniform(0, 1) ? 1 : p);
      StepFunction f = biased(g, p, l1, l2);
      GLTriple d{QMat::from_rows({{Rational(l1), Rational(0)}, {Rational(0), Rational(l2)}}),
                 {Rational(g.uniform(1, 2)), Rational(0)},
                 {Rational(0), Rational(g.uniform(1, 2))}};
      CycScalar lhs = nilpotent_orbit_integral_gl(f, d, s);
      CycScalar rhs = levi_nilpotent_orbit_integral(parabolic_descent(f, s), d, s);
      EXPECT_EQ(lhs, rhs * CycScalar(p_pow_q(p, valuation(Rational(l1 - l2), p))));
      nontrivial += !lhs.is_zero();
    }
  EXPECT_GT(nontrivial, 0);
}

TEST(Descent, CommutesWithFourier) {
  Generator g(73);
  for (const auto& s : specs_for(3, std::nullopt))
    for (int it = 0; it < 3; ++it) {
      StepFunction f = biased(g, 3, 1, 2);
      EXPECT_TRUE(parabolic_descent(fourier_gl2(f), s).equals(fourier_levi(parabolic_descent(f, s))));
    }
}
