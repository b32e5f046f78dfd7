#pragma once

#include <string>
#include <vector>

#include "orbint/scalar.hpp"
#include "orbint/spaces.hpp"

namespace orbint {

// gamma_a: normalized int psi(a x^2) dx over a large lattice, psi of level 0.
// Only the square class of a matters; units give 1 and a = p u gives the
// residue Gauss sum sum_t zeta_p^{u t^2} divided by sqrt(p).
CycScalar weil_index(const Rational& a, long p);
inline CycScalar weil_index(const Rational& a, const LocalFieldSpec& s) { return weil_index(a, s.p()); }

struct QuadFormDiag {
  std::vector<Rational> coeffs;  // sum a_i x_i^2
  std::string tag;
};

CycScalar weil_index(const QuadFormDiag& q, long p);

// Diagonal entries of a symmetric form over F after orthogonalization.
std::vector<Rational> diagonalize_symmetric(const QMat& gram);

// F-basis of the twisted Lie algebra, each X written as an EMat.
std::vector<EMat> twisted_lie_basis(const HermitianSpace& w);

// X -> tr(X^2) on u(W), diagonalized. Requires a diagonal Gram matrix.
QuadFormDiag diagonalize_trace_form(const HermitianSpace& w);

struct SignIdentityRow {
  Rational a;           // non-norm square-class representative
  CycScalar lhs, rhs;   // gamma_a gamma_{-xa} and gamma_1 gamma_{-x}
  CycScalar ratio;
};

struct SignIdentityReport {
  long p = 0;
  Rational x;
  std::vector<SignIdentityRow> rows;
  bool a1_ok = false;   // every ratio equals -1
  // c_n = gamma(q on u(W_nonsplit)) / gamma(q on u(W_split)) for diag(1, ..., 1, lambda)
  std::vector<CycScalar> c_by_n;
  bool c_ok = false;    // c_n = (-1)^{n-1}
  bool lambda_independent = false;  // gamma of u(W) depends only on the class of W
};

SignIdentityReport verify_sign_identity(const LocalFieldSpec& spec, std::size_t max_n = 3);

}  // namespace orbint
