#pragma once

#include <complex>
#include <string>
#include <vector>

#include "orbint/rational.hpp"

namespace orbint {

// Element of the cyclotomic field Q(zeta_M), stored in the power basis
// 1, z, ..., z^{phi(M)-1} with z = exp(2 pi i / M). The conductor is shrunk
// when that is cheap to detect (rational values always get M = 1); values at
// different conductors compare by lifting to the lcm.
class CycScalar {
 public:
  CycScalar() : m_(1), c_{Rational(0)} {}
  CycScalar(const Rational& r) : m_(1), c_{r} {}  // NOLINT: implicit embedding
  CycScalar(long r) : m_(1), c_{Rational(r)} {}   // NOLINT
  CycScalar(int r) : m_(1), c_{Rational(r)} {}    // NOLINT

  static CycScalar root_of_unity(long m, long j);
  // sum_j b[j] z_M^j for j in [0, M)
  static CycScalar from_buckets(long m, const std::vector<Rational>& b);
  static CycScalar from_coords(long m, std::vector<Rational> coords);

  long conductor() const { return m_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const { return m_ == 1; }
  const Rational& rational_value() const;  // throws unless rational

  CycScalar operator-() const;
  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator/=(const CycScalar& o) { return *this *= o.inverse(); }
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }

  bool operator==(const CycScalar& o) const;
  bool operator!=(const CycScalar& o) const { return !(*this == o); }

  CycScalar conj() const;
  CycScalar inverse() const;
  CycScalar lifted(long m) const;  // same value expressed at conductor m (m multiple of M)

  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Rational> buckets(long m) const;  // length-m bucket vector at conductor m
  long m_;
  std::vector<Rational> c_;
};

inline bool is_zero(const CycScalar& x) { return x.is_zero(); }

long euler_phi(long m);
long lcm_long(long a, long b);

// Integer coefficients of the M-th cyclotomic polynomial, low degree first.
const std::vector<long>& cyclotomic_poly(long m);

}  // namespace orbint
