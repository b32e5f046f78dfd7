#pragma once

#include <vector>

#include "orbint/linalg.hpp"
#include "orbint/scalar.hpp"
#include "orbint/step_function.hpp"

namespace orbint {

// Functions on gl_n x V x V* use coordinates (X row-major, v, v*), n^2 + 2n in all.
std::size_t gl_triple_dim(std::size_t n);

// Matrix of (X, v, v*) -> (k X k^{-1}, k v, v* k^{-1}) in these coordinates.
QMat gl_action_matrix(const QMat& k);

// Smallest N >= 1 such that f is invariant under 1 + p^N M_n(O) acting as above.
long k_average_level(const StepFunction& f, std::size_t n);

// Representatives of GL_n(Z/p^N), as integer matrices.
std::vector<QMat> gl_residue_reps(std::size_t n, long p, long level);

// f_K(Z) = int_K f(k.Z) chi(det k) dk with vol K = 1, as an exact finite average.
// level = 0 picks k_average_level(f, n).
StepFunction k_average(const StepFunction& f, std::size_t n, const LocalFieldSpec& spec, long level = 0);

// f^P(m, v, v*) = int_N f_K(m + [[0, x], [0, 0]], v, v*) dx for n = 2, V = V1 + V2
// with dim V1 = dim V2 = 1. Output coordinates (m1, m2, v1, v2, v1*, v2*).
StepFunction parabolic_descent(const StepFunction& f, const LocalFieldSpec& spec, long level = 0);

// Fourier transform on the gl_2 factor of an 8-dimensional f (pairing tr(XY)),
// and on the diagonal Lie algebra factor of a 6-dimensional f^P.
StepFunction fourier_gl2(const StepFunction& f);
StepFunction fourier_levi(const StepFunction& fp);

}  // namespace orbint
