#include "orbint/integrals.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbint {

std::vector<std::size_t> factor_offsets(const EtaleAlgebra& a) {
  std::vector<std::size_t> off;
  std::size_t d = 0;
  for (const auto& f : a.factors()) {
    off.push_back(d);
    d += static_cast<std::size_t>(f.degree());
  }
  return off;
}

namespace {

std::string elem_key(const QuadFactor::Elem& e) { return e.first.get_str() + "," + e.second.get_str(); }

FactorSlice x_slice(const Term& t, std::size_t off, const QuadFactor& f) {
  return FactorSlice::from_term(t, off, static_cast<std::size_t>(f.degree()));
}

}  // namespace

TorusIntegrator::TorusIntegrator(const EtaleAlgebra& a, const StepFunction& f, bool direct)
    : alg_(&a), fn_(f), direct_(direct), off_(factor_offsets(a)), d_(static_cast<std::size_t>(a.dimension())) {
  if (f.dim() != 2 * d_) throw std::invalid_argument("TorusIntegrator: function must live on A x A");
  bool first = true;
  for (const auto& t : fn_.terms()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const QuadFactor& fi = a.factor(i);
      long r = x_slice(t, off_[i], fi).zero_radius(fi) + x_slice(t, d_ + off_[i], fi).zero_radius(fi);
      radius_ = first ? r : std::max(radius_, r);
      first = false;
    }
  }
}

CycScalar TorusIntegrator::direct_shell(const QuadFactor& f, const FactorSlice& g, const FactorSlice& h,
                                        const QuadFactor::Elem& eps, long w) const {
  const LocalFieldSpec& spec = alg_->spec();
  long k = f.val(eps);
  long m = std::max({1L, g.unit_level(f, w), h.unit_level(f, k - w)});
  const auto& reps = unit_reps(f, m);
  QuadFactor::Elem pw = uniformizer_power(f, w);
  CycScalar sum(0);
  for (const auto& u : reps) {
    QuadFactor::Elem t = f.mul(pw, u);
    CycScalar gv = g.value(f, t);
    if (gv.is_zero()) continue;
    CycScalar hv = h.value(f, f.mul(eps, f.inv(t)));
    if (hv.is_zero()) continue;
    CycScalar v = gv * hv;
    if (chi_factor(f, t, spec) < 0) v = -v;
    sum += v;
  }
  return sum * CycScalar(Rational(1, static_cast<long>(reps.size())));
}

CycScalar TorusIntegrator::factor_integral(std::size_t i, const FactorSlice& g, const FactorSlice& h,
                                           const QuadFactor::Elem& eps) {
  std::string key = std::to_string(i) + "|" + g.key() + "|" + h.key() + "|" + elem_key(eps);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  const QuadFactor& f = alg_->factor(i);
  const LocalFieldSpec& spec = alg_->spec();
  long p = f.p();
  long k = f.val(eps);
  long lo = g.val_floor(f);
  if (!h.has_zero(p)) lo = std::max(lo, k - h.val_end(f) + 1);
  long hi = k - h.val_floor(f);
  if (!g.has_zero(p)) hi = std::min(hi, g.val_end(f) - 1);

  CycScalar total(0);
  if (direct_) {
    for (long w = lo; w <= hi; ++w) total += direct_shell(f, g, h, eps, w);
    return cache_.emplace(key, total).first->second;
  }

  long g_rad = g.zero_radius(f), h_rad = h.zero_radius(f);
  QuadFactor::Elem zero{Rational(0), Rational(0)};
  CycScalar g0 = g.value(f, zero), h0 = h.value(f, zero);
  int chi_pi = chi_factor(f, f.uniformizer(), spec);
  bool units_trivial = chi_trivial_on_units(f, spec);
  int chi_eps = chi_factor(f, eps, spec);
  for (long w = lo; w <= hi; ++w) {
    bool g_flat = w >= g_rad, h_flat = k - w >= h_rad;
    if (g_flat && h_flat) {
      if (!units_trivial) continue;
      CycScalar v = g0 * h0;
      total += (chi_pi < 0 && (w % 2 != 0)) ? -v : v;
    } else if (g_flat) {
      if (g0.is_zero()) continue;
      CycScalar v = g0 * shell_integral(f, h, k - w, true, spec);
      total += chi_eps < 0 ? -v : v;
    } else if (h_flat) {
      if (h0.is_zero()) continue;
      total += h0 * shell_integral(f, g, w, true, spec);
    } else {
      total += direct_shell(f, g, h, eps, w);
    }
  }
  return cache_.emplace(key, total).first->second;
}

CycScalar TorusIntegrator::operator()(const AlgElement& eps) {
  if (eps.size() != alg_->size() || !eps.invertible())
    throw std::invalid_argument("torus integral: eps must be an invertible element of A");
  CycScalar total(0);
  for (const auto& t : fn_.terms()) {
    CycScalar prod = t.coeff;
    for (std::size_t i = 0; i < alg_->size() && !prod.is_zero(); ++i) {
      const QuadFactor& f = alg_->factor(i);
      prod *= factor_integral(i, x_slice(t, off_[i], f), x_slice(t, d_ + off_[i], f), eps[i]);
    }
    total += prod;
  }
  return total;
}

CycScalar torus_orbit_integral(const EtaleAlgebra& a, const StepFunction& f, const AlgElement& eps, bool direct) {
  TorusIntegrator ti(a, f, direct);
  return ti(eps);
}

QuadFactor::Elem deep_element(const QuadFactor& f, long k, const QuadFactor::Elem& u) {
  return f.mul(uniformizer_power(f, k), u);
}

std::vector<QuadFactor::Elem> chi_unit_classes(const QuadFactor& f, const LocalFieldSpec& spec) {
  std::vector<QuadFactor::Elem> out{{Rational(1), Rational(0)}};
  for (const auto& u : unit_reps(f, 1))
    if (chi_factor(f, u, spec) < 0) {
      out.push_back(u);
      break;
    }
  return out;
}

std::vector<int> s1_bits(const EtaleAlgebra& a, const AlgElement& eps) {
  std::vector<int> bits;
  for (std::size_t i : a.S1()) bits.push_back(chi_factor(a.factor(i), eps[i], a.spec()) < 0 ? 1 : 0);
  return bits;
}

CycScalar GermExpansion::predict(const EtaleAlgebra& a, const AlgElement& eps) const {
  const auto& c = table(s1_bits(a, eps));
  std::vector<long> k;
  for (std::size_t i : a.S2()) k.push_back(a.factor(i).val(eps[i]));
  CycScalar total(0);
  for (std::size_t mask = 0; mask < c.size(); ++mask) {
    Integer prod = 1;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (!(mask >> j & 1)) prod *= k[j];
    total += c[mask] * CycScalar(Rational(prod));
  }
  return total;
}

std::vector<AlgElement> germ_grid(const EtaleAlgebra& a, long n0, long depth) {
  std::vector<std::vector<QuadFactor::Elem>> choices;
  for (const auto& f : a.factors()) {
    auto units = chi_unit_classes(f, a.spec());
    if (units.size() == 1) units.push_back(unit_reps(f, 1).back());
    std::vector<QuadFactor::Elem> c;
    for (long k = n0; k <= n0 + depth; ++k)
      for (const auto& u : units) c.push_back(deep_element(f, k, u));
    choices.push_back(std::move(c));
  }
  std::vector<AlgElement> out;
  std::vector<QuadFactor::Elem> cur(a.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == a.size()) {
      out.emplace_back(cur);
      return;
    }
    for (const auto& e : choices[i]) {
      cur[i] = e;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

// An S1 component at valuation n or n+1 with the requested chi class.
QuadFactor::Elem s1_sample(const QuadFactor& f, const LocalFieldSpec& spec, long n, int bit) {
  for (long k = n; k <= n + 1; ++k)
    for (const auto& u : chi_unit_classes(f, spec)) {
      QuadFactor::Elem e = deep_element(f, k, u);
      if ((chi_factor(f, e, spec) < 0) == (bit == 1)) return e;
    }
  throw std::logic_error("germ_extract: chi is trivial on an S1 factor");
}

bool try_germ(const EtaleAlgebra& a, TorusIntegrator& ti, long n, long depth, GermExpansion& g) {
  const auto& s1 = a.S1();
  const auto& s2 = a.S2();
  g.radius = n;
  g.s2 = s2.size();
  g.coeffs.clear();
  for (std::size_t bm = 0; bm < (std::size_t{1} << s1.size()); ++bm) {
    std::vector<int> bits(s1.size());
    AlgElement eps = AlgElement::one(a);
    for (std::size_t j = 0; j < s1.size(); ++j) {
      bits[j] = static_cast<int>(bm >> j & 1);
      eps[s1[j]] = s1_sample(a.factor(s1[j]), a.spec(), n, bits[j]);
    }
    std::size_t nn = std::size_t{1} << s2.size();
    std::vector<CycScalar> v(nn);
    for (std::size_t mask = 0; mask < nn; ++mask) {
      for (std::size_t j = 0; j < s2.size(); ++j)
        eps[s2[j]] = deep_element(a.factor(s2[j]), n + static_cast<long>(mask >> j & 1), {Rational(1), Rational(0)});
      v[mask] = ti(eps);
    }
    // V = c_in + k_j c_out in each S2 coordinate; sampled at k_j = n, n + 1.
    for (std::size_t j = 0; j < s2.size(); ++j)
      for (std::size_t mask = 0; mask < nn; ++mask) {
        if (mask >> j & 1) continue;
        CycScalar slope = v[mask | (std::size_t{1} << j)] - v[mask];
        v[mask | (std::size_t{1} << j)] = v[mask] - CycScalar(Rational(n)) * slope;
        v[mask] = slope;
      }
    g.coeffs[bits] = std::move(v);
  }
  g.grid_checks = 0;
  for (const auto& eps : germ_grid(a, n, depth)) {
    ++g.grid_checks;
    if (ti(eps) != g.predict(a, eps)) return false;
  }
  return true;
}

}  // namespace

GermExpansion germ_extract(const EtaleAlgebra& a, const StepFunction& f, long depth, long max_deepen) {
  TorusIntegrator ti(a, f);
  GermExpansion g;
  for (long n = ti.radius(); n <= ti.radius() + max_deepen; ++n) {
    if (try_germ(a, ti, n, depth, g)) {
      g.certified = true;
      return g;
    }
  }
  g.certified = false;
  return g;
}

ZetaElement c_empty_zeta(const EtaleAlgebra& a, const StepFunction& f, const std::vector<bool>& lambda1) {
  auto off = factor_offsets(a);
  std::size_t d = static_cast<std::size_t>(a.dimension());
  if (a.S1().empty()) return ZetaElement(f.evaluate(std::vector<Rational>(2 * d, Rational(0))));
  std::vector<Subst> subs(2 * d);
  std::vector<ZetaFactor> layout;
  std::size_t nd = 0;
  for (std::size_t i : a.S1()) {
    const QuadFactor& fi = a.factor(i);
    std::size_t base = lambda1[i] ? off[i] : d + off[i];
    for (int j = 0; j < fi.degree(); ++j) subs[base + j] = Subst{static_cast<int>(nd + j), Rational(1), Rational(0)};
    nd += static_cast<std::size_t>(fi.degree());
    layout.push_back(ZetaFactor{fi, true, 1});
  }
  return mult_zeta(f.substitute(subs, nd), layout, a.spec());
}

CycScalar c_empty_closed_form(const EtaleAlgebra& a, const StepFunction& f, const std::vector<int>& bits) {
  const auto& s1 = a.S1();
  CycScalar total(0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << s1.size()); ++mask) {
    std::vector<bool> lambda1(a.size(), false);
    int sign = 1;
    for (std::size_t j = 0; j < s1.size(); ++j) {
      lambda1[s1[j]] = mask >> j & 1;
      if (!lambda1[s1[j]] && bits[j]) sign = -sign;
    }
    CycScalar v = c_empty_zeta(a, f, lambda1).at_one();
    total += sign < 0 ? -v : v;
  }
  return total;
}

CycScalar m1_closed_form(const EtaleAlgebra& a, const StepFunction& f, const QuadFactor::Elem& eps) {
  if (a.size() != 1) throw std::invalid_argument("m1_closed_form: one factor expected");
  const QuadFactor& fi = a.factor(0);
  std::size_t d = static_cast<std::size_t>(fi.degree());
  std::vector<Subst> sx(2 * d), sy(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    sx[j] = Subst{static_cast<int>(j), Rational(1), Rational(0)};
    sy[d + j] = Subst{static_cast<int>(j), Rational(1), Rational(0)};
  }
  StepFunction g = f.substitute(sx, d), h = f.substitute(sy, d);
  if (fi.contains_E()) {
    // int f(t,0)|t|^s + int f(0,t^{-1})|t|^s; the second is h against |s|^{-s}
    ZetaElement z = mult_zeta(g, {ZetaFactor{fi, true, 1}}, a.spec()) + mult_zeta(h, {ZetaFactor{fi, true, -1}}, a.spec());
    CycScalar f00 = f.evaluate(std::vector<Rational>(2 * d, Rational(0)));
    return z.at_one() + f00 * CycScalar(Rational(fi.val(eps)));
  }
  CycScalar zg = mult_zeta(g, {ZetaFactor{fi, true, 1}}, a.spec()).at_one();
  CycScalar zh = mult_zeta(h, {ZetaFactor{fi, true, 1}}, a.spec()).at_one();
  return chi_factor(fi, eps, a.spec()) < 0 ? zg - zh : zg + zh;
}

}  // namespace orbint
