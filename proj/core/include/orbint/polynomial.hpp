#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbint/linalg.hpp"
#include "orbint/rational.hpp"

namespace orbint {

// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static Poly constant(const Rational& a) { return Poly({a}); }
  static Poly x() { return Poly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Rational& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Poly derivative() const;
  Rational eval(const Rational& x) const;
  QMat eval(const QMat& m) const;

  std::string to_string() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

Poly poly_gcd(const Poly& a, const Poly& b);  // monic
// Bezout: returns (g, s, t) with s a + t b = g monic.
struct Bezout {
  Poly g, s, t;
};
Bezout poly_ext_gcd(const Poly& a, const Poly& b);

// det(tI - m)
Poly char_poly(const QMat& m);
QMat companion(const Poly& monic_poly);

// Res(f, g) for monic f, g equals prod_{f(x)=0, g(y)=0} (x - y).
Rational resultant(const Poly& f, const Poly& g);
QMat sylvester(const Poly& f, const Poly& g);

// Factor a squarefree polynomial over Q into monic factors of degree 1 or 2.
// Throws std::domain_error when a factor of degree >= 3 remains.
std::vector<Poly> factor_deg_le2(const Poly& f);

Rational rationalize(long double x, long max_den = 1000000);

}  // namespace orbint
