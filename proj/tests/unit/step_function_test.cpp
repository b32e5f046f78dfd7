#include <gtest/gtest.h>

#include "orbint/harness.hpp"
#include "orbint/step_function.hpp"

using namespace orbint;

namespace {

std::vector<Rational> random_point(Generator& g, std::size_t n, long p) {
  std::vector<Rational> x(n);
  for (auto& c : x) c = Rational(g.uniform(-200, 200), p * p);
  return x;
}

}  // namespace

TEST(StepFunction, CancellationIsDetected) {
  StepFunction z(1, 3);
  z.add_term(Box{{Rational(0)}, {0}}, CycScalar(1));
  for (long r = 0; r < 3; ++r) z.add_term(Box{{Rational(r)}, {1}}, CycScalar(-1));
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE((StepFunction::lattice(1, 3, 0) - StepFunction::lattice(1, 3, 1)).is_zero());
}

TEST(StepFunction, IntegralOfLattice) {
  EXPECT_EQ(StepFunction::lattice(2, 5, 1).integrate(), CycScalar(Rational(1, 25)));
  EXPECT_EQ(StepFunction::lattice(3, 3, -1).integrate(), CycScalar(27));
}

TEST(StepFunction, FourierInvolutionAndPlancherelAtZero) {
  Generator g(11);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = static_cast<std::size_t>(g.uniform(1, 4));
    StepFunction f = g.step_function(n, 3, static_cast<int>(g.uniform(1, 3)));
    QMat gram = QMat::identity(n);
    StepFunction ff = f.fourier(gram);
    EXPECT_TRUE(ff.fourier(gram).equals(f.reflect()));
    // int F f = f(0)
    EXPECT_EQ(ff.integrate(), f.evaluate(std::vector<Rational>(n, Rational(0))));
  }
}

TEST(StepFunction, PullbackMatchesPointwise) {
  Generator g(12);
  QMat m = QMat::from_rows({{Rational(1), Rational(2)}, {Rational(1, 3), Rational(5)}});
  std::vector<Rational> b{Rational(1, 3), Rational(0)};
  for (int it = 0; it < 10; ++it) {
    StepFunction f = g.step_function(2, 3, 3);
    StepFunction h = f.pullback(m, b);
    for (int k = 0; k < 40; ++k) {
      auto x = random_point(g, 2, 3);
      auto y = m * x;
      y[0] += b[0];
      EXPECT_EQ(h.evaluate(x), f.evaluate(y));
    }
  }
}

TEST(StepFunction, FiberIntegralThenIntegral) {
  Generator g(13);
  for (int it = 0; it < 30; ++it) {
    StepFunction f = g.step_function(3, 5, 3);
    EXPECT_EQ(f.fiber_integrate({true, false, true}).integrate(), f.integrate());
  }
}

TEST(StepFunction, RestrictAgreesWithEvaluation) {
  Generator g(14);
  for (int it = 0; it < 20; ++it) {
    StepFunction f = g.step_function(3, 3, 3);
    auto x = random_point(g, 3, 3);
    StepFunction r = f.restrict_coords({true, false, true}, x);
    EXPECT_EQ(r.evaluate({x[1]}), f.evaluate(x));
  }
}

TEST(StepFunction, ProductIsPointwise) {
  Generator g(15);
  for (int it = 0; it < 20; ++it) {
    StepFunction a = g.step_function(2, 3, 2), b = g.step_function(2, 3, 2);
    StepFunction c = a * b;
    for (int k = 0; k < 20; ++k) {
      auto x = random_point(g, 2, 3);
      EXPECT_EQ(c.evaluate(x), a.evaluate(x) * b.evaluate(x));
    }
  }
}
