#pragma once

#include "orbint/spaces.hpp"
#include "orbint/step_function.hpp"
#include "orbint/zeta.hpp"

namespace orbint {

// Rank-one GL side: f on (X, v, v*) = F^3. Orb = int_{F^x} f(g, gv, v* g^{-1}) chi(g) dg,
// computed as chi(v) times the torus integral of f(gamma, ., .) at eps = v v*.
CycScalar gl_orbit_integral(const StepFunction& f, const GLTriple& d, const LocalFieldSpec& spec,
                            bool direct = false);

// Rank-one unitary side: f_W on (delta, w_a, w_b) with w = w_a + w_b sqrt(tau).
// Average of f_W(delta, g w) over U(1), via coset representatives.
CycScalar unitary_orbit_integral(const StepFunction& fw, const Rational& delta, const EVal& w,
                                 const LocalFieldSpec& spec);

// Nilpotent orbit integral at s = 0.
//   n = 1: (gamma, v, 0) or (gamma, 0, v*).
//   n = 2: gamma = diag(l1, l2) with l1 != l2, v = (v1, 0), v* = (0, v2*), both nonzero.
// The n = 2 case integrates over G/T = K N: the K-average of f is restricted to
// X = n diag(l1, l2) n^{-1}, integrated over N, and the torus part is a two
// variable zeta integral continued to s = 0. level = 0 picks the K-average level.
CycScalar nilpotent_orbit_integral_gl(const StepFunction& f, const GLTriple& d, const LocalFieldSpec& spec,
                                      long level = 0);

// Orb(f^P, (l, v, v*)) for f^P on (m1, m2, v1, v2, v1*, v2*), same nilpotent data
// as the n = 2 case above. M = T, so only the torus zeta integral remains.
CycScalar levi_nilpotent_orbit_integral(const StepFunction& fp, const GLTriple& d, const LocalFieldSpec& spec);

}  // namespace orbint
