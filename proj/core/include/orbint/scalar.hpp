#pragma once

#include <string>

#include "orbint/cyclotomic.hpp"
#include "orbint/rational.hpp"

namespace orbint {

enum class SquareClass { One = 0, U = 1, P = 2, UP = 3 };

std::string to_string(SquareClass c);

// Base field Q_p (p odd) together with the quadratic extension E = F(sqrt(tau)).
class LocalFieldSpec {
 public:
  LocalFieldSpec(long p, const Rational& tau);

  long p() const { return p_; }
  long q() const { return p_; }
  const Rational& tau() const { return tau_; }  // v_p(tau) in {0, 1}
  bool ramified() const { return ramified_; }
  long nonresidue() const { return u_; }  // smallest quadratic nonresidue mod p

 private:
  long p_;
  Rational tau_;
  bool ramified_;
  long u_;
};

long smallest_nonresidue(long p);

SquareClass square_class(const Rational& x, long p);
inline SquareClass square_class(const Rational& x, const LocalFieldSpec& s) {
  return square_class(x, s.p());
}
Rational class_representative(SquareClass c, long p);
bool is_square(const Rational& x, long p);

int hilbert_symbol(const Rational& a, const Rational& b, long p);
inline int hilbert_symbol(const Rational& a, const Rational& b, const LocalFieldSpec& s) {
  return hilbert_symbol(a, b, s.p());
}

// Quadratic character of E/F; chi(0) = 0 as a degenerate flag.
int chi(const Rational& x, const LocalFieldSpec& s);

// Level-0 additive character: trivial on Z_p, psi(1/p^k) = exp(2 pi i / p^k).
CycScalar psi_value(const Rational& x, long p);
inline CycScalar psi_value(const Rational& x, const LocalFieldSpec& s) {
  return psi_value(x, s.p());
}

// Positive square root of p inside Q(zeta_{4p}).
CycScalar sqrt_p(long p);

// |x|_F = p^{-v(x)} as a rational (x != 0).
Rational abs_p(const Rational& x, long p);

}  // namespace orbint
