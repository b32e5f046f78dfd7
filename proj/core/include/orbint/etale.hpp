#pragma once

#include <utility>
#include <vector>

#include "orbint/linalg.hpp"
#include "orbint/polynomial.hpp"
#include "orbint/scalar.hpp"

namespace orbint {

// One factor F_i of F[gamma]: F itself (degree 1) or a quadratic field F(theta),
// theta^2 + beta theta + alpha = 0.
class QuadFactor {
 public:
  QuadFactor(const Poly& monic_poly, const LocalFieldSpec& spec);

  int degree() const { return poly_.degree(); }
  long p() const { return p_; }
  const Poly& poly() const { return poly_; }
  Rational root() const;  // degree 1 only
  Rational alpha() const { return poly_.coeff(0); }
  Rational beta() const { return degree() == 2 ? poly_.coeff(1) : Rational(0); }
  Rational disc() const;  // beta^2 - 4 alpha (degree 2)
  SquareClass disc_class() const { return disc_class_; }
  bool contains_E() const { return contains_e_; }
  bool ramified() const { return e_ == 2; }
  int e() const { return e_; }  // ramification index over F
  int f() const { return degree() == 2 ? 3 - e_ : 1; }
  // theta = -beta/2 + p^k eta', eta'^2 = d' with v(d') in {0,1}
  long k() const { return k_; }
  const Rational& dprime() const { return dprime_; }

  // Elements in theta-coordinates (a, b) = a + b theta; b is 0 in degree 1.
  using Elem = std::pair<Rational, Rational>;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem inv(const Elem& x) const;
  Elem conj(const Elem& x) const;   // Galois conjugate over F (identity in degree 1)
  Rational norm(const Elem& x) const;  // to F
  Rational trace(const Elem& x) const;
  long val(const Elem& x) const;       // normalized valuation of F_i (kInfVal for 0)
  // integral coordinates: x = c0 + c1 eta'; O_i is Z_p^2 in these coordinates
  std::pair<Rational, Rational> to_integral(const Elem& x) const;
  Elem from_integral(const Rational& c0, const Rational& c1) const;
  // uniformizer of F_i in theta-coordinates
  Elem uniformizer() const;
  // Matrix of multiplication by x on integral coordinates (2x2, or 1x1).
  QMat mult_matrix_integral(const Elem& x) const;

 private:
  Poly poly_;
  long p_;
  SquareClass disc_class_ = SquareClass::One;
  bool contains_e_ = false;
  int e_ = 1;
  long k_ = 0;
  Rational dprime_ = 0;
};

class AlgElement;

class EtaleAlgebra {
 public:
  EtaleAlgebra(std::vector<QuadFactor> factors, const LocalFieldSpec& spec);
  static EtaleAlgebra from_factors(const std::vector<Poly>& polys, const LocalFieldSpec& spec);

  std::size_t size() const { return factors_.size(); }
  const QuadFactor& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<QuadFactor>& factors() const { return factors_; }
  const std::vector<std::size_t>& S1() const { return s1_; }
  const std::vector<std::size_t>& S2() const { return s2_; }
  bool in_S1(std::size_t i) const { return !factors_[i].contains_E(); }
  int dimension() const;  // over F
  const LocalFieldSpec& spec() const { return spec_; }
  bool operator==(const EtaleAlgebra& o) const;

 private:
  std::vector<QuadFactor> factors_;
  std::vector<std::size_t> s1_, s2_;
  LocalFieldSpec spec_;
};

class AlgElement {
 public:
  AlgElement() = default;
  explicit AlgElement(std::vector<QuadFactor::Elem> comps) : c_(std::move(comps)) {}
  static AlgElement one(const EtaleAlgebra& a);
  static AlgElement zero(const EtaleAlgebra& a);

  std::size_t size() const { return c_.size(); }
  const QuadFactor::Elem& operator[](std::size_t i) const { return c_[i]; }
  QuadFactor::Elem& operator[](std::size_t i) { return c_[i]; }
  bool invertible() const;
  bool operator==(const AlgElement& o) const { return c_ == o.c_; }

 private:
  std::vector<QuadFactor::Elem> c_;
};

AlgElement alg_mul(const EtaleAlgebra& a, const AlgElement& x, const AlgElement& y);
AlgElement alg_inv(const EtaleAlgebra& a, const AlgElement& x);
std::vector<Rational> alg_norm(const EtaleAlgebra& a, const AlgElement& x);  // per factor, to F

// decompose(gamma): canonical F[gamma] and the image of gamma.
std::pair<EtaleAlgebra, AlgElement> decompose(const QMat& gamma, const LocalFieldSpec& spec);

AlgElement restriction_mask(const AlgElement& x, const std::vector<bool>& lambda);

// Per-factor: is x_i a norm from E_i = E (x) F_i?
std::vector<bool> is_norm(const EtaleAlgebra& a, const AlgElement& x);

// Norm E_i -> F_i of s + t sqrt(tau), s,t in F_i.
QuadFactor::Elem norm_to_Fi(const QuadFactor& f, const LocalFieldSpec& spec, const QuadFactor::Elem& s,
                            const QuadFactor::Elem& t);

// Coset representatives of U(1)(E_i/F_i) modulo U(1) cap (1 + p^k (O_i + O_i sqrt(tau))).
// Each entry is (s, t) with s + t sqrt(tau) of norm exactly 1. Throws for split E_i.
struct U1Rep {
  QuadFactor::Elem s, t;
};
std::vector<U1Rep> u1_cosets(const EtaleAlgebra& a, std::size_t i, long k);

// chi(Nm_{F_i/F} x)
int chi_factor(const QuadFactor& f, const QuadFactor::Elem& x, const LocalFieldSpec& spec);

// Polynomial representatives of the CRT idempotents of F[x]/(prod f_i).
std::vector<Poly> crt_idempotents(const EtaleAlgebra& a);
// x(gamma) as a matrix, for x in F[gamma] = prod F_i.
QMat element_matrix(const EtaleAlgebra& a, const AlgElement& x, const QMat& gamma);

// Norm-class representatives: one element per (Z/2)^{S1} pattern; component i
// is 1 outside S1 and carries a non-norm of F_i^x where the bit is set.
AlgElement norm_class_rep(const EtaleAlgebra& a, const std::vector<int>& bits);
QuadFactor::Elem non_norm_element(const QuadFactor& f, const LocalFieldSpec& spec);

}  // namespace orbint
