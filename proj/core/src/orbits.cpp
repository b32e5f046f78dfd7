#include "orbint/orbits.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "orbint/descent.hpp"
#include "orbint/etale.hpp"
#include "orbint/integrals.hpp"

namespace orbint {

namespace {

const EtaleAlgebra& base_algebra(const LocalFieldSpec& spec) {
  // one cached F-algebra per thread and spec
  thread_local std::vector<std::pair<std::pair<long, Rational>, EtaleAlgebra>> cache;
  for (const auto& [k, a] : cache)
    if (k.first == spec.p() && k.second == spec.tau()) return a;
  cache.push_back({{spec.p(), spec.tau()}, EtaleAlgebra::from_factors({Poly::x()}, spec)});
  return cache.back().second;
}

ZetaFactor f_factor(const LocalFieldSpec& spec, int sign) {
  return ZetaFactor{QuadFactor(Poly::x(), spec), true, sign};
}

long coord_floor(const Term& t, std::size_t j, long p) {
  const Box& b = t.box;
  if (b.center[j] == 0) return b.level[j];
  return std::min(b.level[j], valuation(b.center[j], p));
}

}  // namespace

CycScalar gl_orbit_integral(const StepFunction& f, const GLTriple& d, const LocalFieldSpec& spec, bool direct) {
  if (f.dim() != 3 || d.dim() != 1) throw std::invalid_argument("gl_orbit_integral: rank one only");
  const Rational& v = d.v[0];
  const Rational& vs = d.vstar[0];
  if (v == 0 || vs == 0) throw std::invalid_argument("gl_orbit_integral: not regular semisimple");
  StepFunction g = f.restrict_coords({true, false, false}, {d.gamma(0, 0), 0, 0});
  const EtaleAlgebra& a = base_algebra(spec);
  AlgElement eps(std::vector<QuadFactor::Elem>{{v * vs, Rational(0)}});
  return CycScalar(chi(v, spec)) * torus_orbit_integral(a, g, eps, direct);
}

CycScalar unitary_orbit_integral(const StepFunction& fw, const Rational& delta, const EVal& w,
                                 const LocalFieldSpec& spec) {
  if (fw.dim() != 3) throw std::invalid_argument("unitary_orbit_integral: rank one only");
  long p = spec.p();
  StepFunction g = fw.restrict_coords({true, false, false}, {delta, 0, 0});
  if (w.is_zero()) return g.evaluate({Rational(0), Rational(0)});
  // level at which every g-term is invariant under 1 + p^k O_E acting on w
  long wf = std::min(w.a == 0 ? LONG_MAX : valuation(w.a, p), w.b == 0 ? LONG_MAX : valuation(w.b, p));
  long k = 1;
  for (const auto& t : g.terms())
    for (std::size_t j = 0; j < 2; ++j) {
      k = std::max(k, t.box.level[j] - wf);
      if (t.phase[j] != 0) k = std::max(k, -valuation(t.phase[j], p) - wf);
    }
  const EtaleAlgebra& a = base_algebra(spec);
  auto reps = u1_cosets(a, 0, k);
  CycScalar sum(0);
  for (const auto& r : reps) {
    EVal gw = e_mul(EVal{r.s.first, r.t.first}, w, spec.tau());
    sum += g.evaluate({gw.a, gw.b});
  }
  return sum / CycScalar(Rational(static_cast<long>(reps.size())));
}

CycScalar nilpotent_orbit_integral_gl(const StepFunction& f, const GLTriple& d, const LocalFieldSpec& spec,
                                      long level) {
  std::size_t n = d.dim();
  if (n == 1) {
    const Rational& v = d.v[0];
    const Rational& vs = d.vstar[0];
    if ((v == 0) == (vs == 0)) throw std::invalid_argument("nilpotent datum: exactly one of v, v* must vanish");
    // t v (or v* t^{-1}) becomes the integration variable; |t|^{+-s} turns into |.|^{+s}
    std::vector<bool> fixed{true, v == 0, vs == 0};
    StepFunction g = f.restrict_coords(fixed, {d.gamma(0, 0), 0, 0});
    ZetaElement z = mult_zeta(g, {f_factor(spec, 1)}, spec);
    return CycScalar(chi(v == 0 ? vs : v, spec)) * z.at_one();
  }
  if (n != 2 || f.dim() != 8) throw std::invalid_argument("nilpotent_orbit_integral_gl: n <= 2 only");
  const QMat& g = d.gamma;
  if (g(0, 1) != 0 || g(1, 0) != 0 || g(0, 0) == g(1, 1))
    throw std::invalid_argument("nilpotent_orbit_integral_gl: n = 2 needs a regular diagonal gamma");
  if (d.v[0] == 0 || d.v[1] != 0 || d.vstar[0] != 0 || d.vstar[1] == 0)
    throw std::invalid_argument("nilpotent_orbit_integral_gl: n = 2 supports v = (v1, 0), v* = (0, v2*) only");
  StepFunction fk = k_average(f, 2, spec, level);
  const Rational& l1 = g(0, 0);
  const Rational& l2 = g(1, 1);
  // variables (x, a, y): X = [[l1, (l2 - l1) x], [0, l2]], v = (a, 0), v* = (0, y)
  std::vector<Subst> subs{{-1, 0, l1}, {0, l2 - l1, 0}, {-1, 0, 0}, {-1, 0, l2},
                          {1, 1, 0},   {-1, 0, 0},     {-1, 0, 0}, {2, 1, 0}};
  StepFunction h = fk.substitute(subs, 3).fiber_integrate({true, false, false});
  ZetaElement z = mult_zeta(h, {f_factor(spec, 1), f_factor(spec, 1)}, spec);
  return CycScalar(chi(d.v[0] * d.vstar[1], spec)) * z.at_one();
}

CycScalar levi_nilpotent_orbit_integral(const StepFunction& fp, const GLTriple& d, const LocalFieldSpec& spec) {
  if (fp.dim() != 6 || d.dim() != 2) throw std::invalid_argument("levi_nilpotent_orbit_integral: shape");
  if (d.v[0] == 0 || d.v[1] != 0 || d.vstar[0] != 0 || d.vstar[1] == 0)
    throw std::invalid_argument("levi_nilpotent_orbit_integral: needs v = (v1, 0), v* = (0, v2*)");
  std::vector<Subst> subs{{-1, 0, d.gamma(0, 0)}, {-1, 0, d.gamma(1, 1)}, {0, 1, 0},
                          {-1, 0, 0},             {-1, 0, 0},             {1, 1, 0}};
  StepFunction h = fp.substitute(subs, 2);
  ZetaElement z = mult_zeta(h, {f_factor(spec, 1), f_factor(spec, 1)}, spec);
  return CycScalar(chi(d.v[0] * d.vstar[1], spec)) * z.at_one();
}

}  // namespace orbint
