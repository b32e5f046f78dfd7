#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbint/etale.hpp"
#include "orbint/step_function.hpp"
#include "orbint/zeta.hpp"

namespace orbint {

// Coordinates of A x A: the x-block (integral coordinates of each F_i in
// order) followed by the y-block in the same order.
std::vector<std::size_t> factor_offsets(const EtaleAlgebra& a);

// Orb(f, eps) = int_T f(t, eps t^{-1}) chi(t) dt, T = prod F_i^x with each
// O_i^x of mass 1 and chi(t) = prod chi(Nm t_i).
//
// The default mode collapses shells on which one argument is already
// constant; direct mode enumerates every shell and unit class and is kept as
// an oracle.
class TorusIntegrator {
 public:
  TorusIntegrator(const EtaleAlgebra& a, const StepFunction& f, bool direct = false);

  CycScalar operator()(const AlgElement& eps);
  // Valuations of eps beyond which every factor integral has its germ shape.
  long radius() const { return radius_; }

  // Same factor integral exposed for the m = 1 checks.
  CycScalar factor_integral(std::size_t i, const FactorSlice& g, const FactorSlice& h,
                            const QuadFactor::Elem& eps_i);

 private:
  CycScalar direct_shell(const QuadFactor& f, const FactorSlice& g, const FactorSlice& h,
                         const QuadFactor::Elem& eps, long w) const;

  const EtaleAlgebra* alg_;
  StepFunction fn_;
  bool direct_;
  std::vector<std::size_t> off_;
  std::size_t d_ = 0;
  long radius_ = 0;
  std::map<std::string, CycScalar> cache_;
};

CycScalar torus_orbit_integral(const EtaleAlgebra& a, const StepFunction& f, const AlgElement& eps,
                               bool direct = false);

// pi_i^k u in theta-coordinates.
QuadFactor::Elem deep_element(const QuadFactor& f, long k, const QuadFactor::Elem& u);
// Units of F_i representing both values of chi(Nm u) when chi is ramified on F_i,
// otherwise just {1}.
std::vector<QuadFactor::Elem> chi_unit_classes(const QuadFactor& f, const LocalFieldSpec& spec);
// bits over S1: 1 where chi(Nm eps_i) = -1
std::vector<int> s1_bits(const EtaleAlgebra& a, const AlgElement& eps);

// Orb(f, eps) = sum_{L subset S2} c_L prod_{i in S2 \ L} v_i(eps_i) for eps deep
// enough; the c_L depend on eps_{S1} only through the chi(eps_i).
// Index of c_L: bit j set iff the j-th element of S2 lies in L.
struct GermExpansion {
  long radius = 0;
  std::size_t s2 = 0;
  std::map<std::vector<int>, std::vector<CycScalar>> coeffs;  // keyed by s1_bits
  bool certified = false;
  long grid_checks = 0;

  const std::vector<CycScalar>& table(const std::vector<int>& bits) const { return coeffs.at(bits); }
  CycScalar c_empty(const std::vector<int>& bits) const { return coeffs.at(bits).front(); }
  CycScalar predict(const EtaleAlgebra& a, const AlgElement& eps) const;
};

// Extract the coefficients from samples at valuations {N, N+1}, then check the
// prediction on every eps with valuations in [N, N+depth] (unit parts from
// chi_unit_classes plus one extra unit). N starts at the integrator radius and
// is deepened up to max_deepen times while the check fails.
GermExpansion germ_extract(const EtaleAlgebra& a, const StepFunction& f, long depth = 3, long max_deepen = 3);

// Every eps checked by germ_extract: valuations in [n0, n0+depth] per factor.
std::vector<AlgElement> germ_grid(const EtaleAlgebra& a, long n0, long depth);

// sum_{L1 subset S1} prod_{S1 \ L1} chi(eps_i) int_{T_{S1}} f(t_{L1}, (t^{-1})_{S1 \ L1}) chi(t) dt,
// each integral continued to s = 0 through mult_zeta.
CycScalar c_empty_closed_form(const EtaleAlgebra& a, const StepFunction& f, const std::vector<int>& bits);
// The Lambda_1 summand alone (without the chi(eps) sign).
ZetaElement c_empty_zeta(const EtaleAlgebra& a, const StepFunction& f, const std::vector<bool>& lambda1);

// m = 1 two-zeta form: int f(t,0) chi |t|^s + int f(0, eps t^{-1}) chi |t|^{-s} at s = 0
// (S1 factor), or c + f(0,0) v(eps) with c from the pair of one-sided zetas (S2 factor).
CycScalar m1_closed_form(const EtaleAlgebra& a, const StepFunction& f, const QuadFactor::Elem& eps);

}  // namespace orbint
