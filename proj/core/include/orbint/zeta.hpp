#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbint/cyclotomic.hpp"
#include "orbint/etale.hpp"
#include "orbint/step_function.hpp"

namespace orbint {

// N(u) / prod_j (1 - a_j u) with N a Laurent polynomial in u = q^{-s}.
class ZetaElement {
 public:
  ZetaElement() = default;
  ZetaElement(const CycScalar& c);  // NOLINT: constant
  static ZetaElement monomial(const CycScalar& c, long k);
  // sum_{v >= start} (a u^sign)^v, sign = +1 or -1
  static ZetaElement geometric_tail(const CycScalar& a, long start, int sign);

  const std::map<long, CycScalar>& numerator() const { return num_; }
  const std::vector<CycScalar>& poles() const { return den_; }

  ZetaElement operator+(const ZetaElement& o) const;
  ZetaElement operator-(const ZetaElement& o) const;
  ZetaElement operator*(const ZetaElement& o) const;
  ZetaElement scaled(const CycScalar& c) const;
  bool operator==(const ZetaElement& o) const;
  bool is_zero() const;

  // Order of the pole at u = 1 (s = 0); 0 when holomorphic there.
  int pole_order_at_one() const;
  // Value at u = 1; throws std::domain_error at a pole.
  CycScalar at_one() const;
  // Value at u = x (x not a pole).
  CycScalar at(const CycScalar& x) const;
  std::string to_string() const;

 private:
  void trim();
  std::map<long, CycScalar> num_;
  std::vector<CycScalar> den_;
};

// Representatives of (O_i / pi_i^M)^x in theta-coordinates (M >= 1), cached.
const std::vector<QuadFactor::Elem>& unit_reps(const QuadFactor& f, long m);
// Units modulo pi_i^M have this many classes.
long unit_count(const QuadFactor& f, long m);
// pi_i^w in theta-coordinates (any sign of w).
QuadFactor::Elem uniformizer_power(const QuadFactor& f, long w);
// Normalized valuation of F_i on an integral-coordinate box: lower bound over the box.
long box_val_floor(const QuadFactor& f, const Box& b, std::size_t offset);

// The part of a term living on one factor F_i (integral coordinates).
struct FactorSlice {
  Box box;
  std::vector<Rational> phase;

  static FactorSlice from_term(const Term& t, std::size_t offset, std::size_t n);
  std::string key() const;
  bool has_zero(long p) const;
  // pi^w O_i inside the box lattice with trivial character there
  bool absorbed(const QuadFactor& f, long w) const;
  long val_floor(const QuadFactor& f) const;
  // exclusive upper bound on v_i over the box (only when 0 is not in it)
  long val_end(const QuadFactor& f) const;
  // from this shell on, the slice equals its value at 0
  long zero_radius(const QuadFactor& f) const;
  // smallest m >= 1 with the slice constant on pi^w (1 + pi^m O_i)
  long unit_level(const QuadFactor& f, long w) const;
  CycScalar value(const QuadFactor& f, const QuadFactor::Elem& t) const;
};

// int over pi^w O_i^x of slice(t) chi_i(t) d^x t
CycScalar shell_integral(const QuadFactor& f, const FactorSlice& s, long w, bool with_chi, const LocalFieldSpec& spec);
// chi_i on O_i^x trivial?
bool chi_trivial_on_units(const QuadFactor& f, const LocalFieldSpec& spec);

// One factor of the multiplicative zeta integral: F_i in integral coordinates,
// weight |t|_i^{sign s} (u^{sign v_i(t)}) and chi(Nm t) when with_chi.
struct ZetaFactor {
  QuadFactor f;
  bool with_chi = true;
  int sign = 1;
};

// int_{prod F_i^x} f(t) prod_i |t_i|^{sign_i s} chi_i(t_i) d^x t, Haar mass 1 on
// each O_i^x, as an exact rational function of u.
ZetaElement mult_zeta(const StepFunction& f, const std::vector<ZetaFactor>& layout, const LocalFieldSpec& spec);

}  // namespace orbint
