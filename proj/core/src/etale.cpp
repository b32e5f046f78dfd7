#include "orbint/etale.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbint {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool less_factor(const QuadFactor& a, const QuadFactor& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    Rational x = a.poly().coeff(i), y = b.poly().coeff(i);
    if (x != y) return x < y;
  }
  return false;
}

}  // namespace

QuadFactor::QuadFactor(const Poly& monic_poly, const LocalFieldSpec& spec)
    : poly_(monic_poly.monic()), p_(spec.p()) {
  int d = poly_.degree();
  if (d != 1 && d != 2) throw std::invalid_argument("QuadFactor: degree must be 1 or 2");
  if (d == 1) return;
  Rational disc = beta() * beta() - 4 * alpha();
  if (disc == 0) throw std::domain_error("QuadFactor: repeated root");
  disc_class_ = square_class(disc, p_);
  if (disc_class_ == SquareClass::One)
    throw std::domain_error("QuadFactor: quadratic splits over Q_p with irrational roots (unsupported)");
  Rational dq = disc / 4;
  long v = valuation(dq, p_);
  k_ = floor_div(v, 2);
  dprime_ = dq / p_pow_q(p_, 2 * k_);
  e_ = (valuation(dprime_, p_) == 1) ? 2 : 1;
  contains_e_ = (square_class(dprime_, p_) == square_class(spec.tau(), p_));
}

Rational QuadFactor::root() const {
  if (degree() != 1) throw std::logic_error("root() on a quadratic factor");
  return -poly_.coeff(0);
}

Rational QuadFactor::disc() const { return beta() * beta() - 4 * alpha(); }

QuadFactor::Elem QuadFactor::mul(const Elem& x, const Elem& y) const {
  if (degree() == 1) return {x.first * y.first, Rational(0)};
  const Rational& a = x.first;
  const Rational& b = x.second;
  const Rational& c = y.first;
  const Rational& d = y.second;
  Rational bd = b * d;
  return {a * c - alpha() * bd, a * d + b * c - beta() * bd};
}

QuadFactor::Elem QuadFactor::conj(const Elem& x) const {
  if (degree() == 1) return x;
  return {x.first - x.second * beta(), -x.second};
}

Rational QuadFactor::norm(const Elem& x) const {
  if (degree() == 1) return x.first;
  return x.first * x.first - beta() * x.first * x.second + alpha() * x.second * x.second;
}

Rational QuadFactor::trace(const Elem& x) const {
  if (degree() == 1) return x.first;
  return 2 * x.first - x.second * beta();
}

QuadFactor::Elem QuadFactor::inv(const Elem& x) const {
  Rational n = norm(x);
  if (n == 0) throw std::domain_error("QuadFactor: inverse of zero");
  if (degree() == 1) return {Rational(1) / x.first, Rational(0)};
  Elem c = conj(x);
  return {c.first / n, c.second / n};
}

long QuadFactor::val(const Elem& x) const {
  Rational n = norm(x);
  if (n == 0) return kInfVal;
  long v = valuation(n, p_);
  return degree() == 1 ? v : v / f();
}

std::pair<Rational, Rational> QuadFactor::to_integral(const Elem& x) const {
  if (degree() == 1) return {x.first, Rational(0)};
  return {x.first - x.second * beta() / 2, x.second * p_pow_q(p_, k_)};
}

QuadFactor::Elem QuadFactor::from_integral(const Rational& c0, const Rational& c1) const {
  if (degree() == 1) return {c0, Rational(0)};
  Rational s = c1 / p_pow_q(p_, k_);
  return {c0 + s * beta() / 2, s};
}

QuadFactor::Elem QuadFactor::uniformizer() const {
  if (degree() == 2 && e_ == 2) return from_integral(0, 1);
  return {Rational(p_), Rational(0)};
}

QMat QuadFactor::mult_matrix_integral(const Elem& x) const {
  if (degree() == 1) return QMat(1, 1, {x.first});
  QMat m(2, 2);
  for (int j = 0; j < 2; ++j) {
    Elem basis = from_integral(j == 0 ? 1 : 0, j == 1 ? 1 : 0);
    auto c = to_integral(mul(x, basis));
    m(0, j) = c.first;
    m(1, j) = c.second;
  }
  return m;
}

EtaleAlgebra::EtaleAlgebra(std::vector<QuadFactor> factors, const LocalFieldSpec& spec)
    : factors_(std::move(factors)), spec_(spec) {
  std::stable_sort(factors_.begin(), factors_.end(), less_factor);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0 && factors_[i].poly() == factors_[i - 1].poly())
      throw std::domain_error("EtaleAlgebra: repeated factor (not regular semisimple)");
    (factors_[i].contains_E() ? s2_ : s1_).push_back(i);
  }
}

EtaleAlgebra EtaleAlgebra::from_factors(const std::vector<Poly>& polys, const LocalFieldSpec& spec) {
  std::vector<QuadFactor> fs;
  for (const auto& p : polys) fs.emplace_back(p, spec);
  return EtaleAlgebra(std::move(fs), spec);
}

int EtaleAlgebra::dimension() const {
  int d = 0;
  for (const auto& f : factors_) d += f.degree();
  return d;
}

bool EtaleAlgebra::operator==(const EtaleAlgebra& o) const {
  if (factors_.size() != o.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].poly() != o.factors_[i].poly()) return false;
  return true;
}

AlgElement AlgElement::one(const EtaleAlgebra& a) {
  return AlgElement(std::vector<QuadFactor::Elem>(a.size(), {Rational(1), Rational(0)}));
}

AlgElement AlgElement::zero(const EtaleAlgebra& a) {
  return AlgElement(std::vector<QuadFactor::Elem>(a.size(), {Rational(0), Rational(0)}));
}

bool AlgElement::invertible() const {
  for (const auto& x : c_)
    if (x.first == 0 && x.second == 0) return false;
  return true;
}

AlgElement alg_mul(const EtaleAlgebra& a, const AlgElement& x, const AlgElement& y) {
  std::vector<QuadFactor::Elem> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.factor(i).mul(x[i], y[i]));
  return AlgElement(out);
}

AlgElement alg_inv(const EtaleAlgebra& a, const AlgElement& x) {
  std::vector<QuadFactor::Elem> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.factor(i).inv(x[i]));
  return AlgElement(out);
}

std::vector<Rational> alg_norm(const EtaleAlgebra& a, const AlgElement& x) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.factor(i).norm(x[i]));
  return out;
}

std::pair<EtaleAlgebra, AlgElement> decompose(const QMat& gamma, const LocalFieldSpec& spec) {
  Poly cp = char_poly(gamma);
  if (poly_gcd(cp, cp.derivative()).degree() > 0)
    throw std::domain_error("decompose: characteristic polynomial not squarefree (not regular semisimple)");
  EtaleAlgebra alg = EtaleAlgebra::from_factors(factor_deg_le2(cp), spec);
  std::vector<QuadFactor::Elem> img;
  for (const auto& f : alg.factors()) {
    if (f.degree() == 1) img.push_back({f.root(), Rational(0)});
    else img.push_back({Rational(0), Rational(1)});
  }
  return {alg, AlgElement(img)};
}

AlgElement restriction_mask(const AlgElement& x, const std::vector<bool>& lambda) {
  if (lambda.size() != x.size()) throw std::invalid_argument("restriction_mask: size mismatch");
  AlgElement out = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!lambda[i]) out[i] = {Rational(0), Rational(0)};
  return out;
}

std::vector<bool> is_norm(const EtaleAlgebra& a, const AlgElement& x) {
  if (!x.invertible()) throw std::domain_error("is_norm: element not invertible");
  std::vector<bool> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.factor(i).contains_E()) {
      out.push_back(true);
      continue;
    }
    out.push_back(chi(a.factor(i).norm(x[i]), a.spec()) == 1);
  }
  return out;
}

QuadFactor::Elem norm_to_Fi(const QuadFactor& f, const LocalFieldSpec& spec, const QuadFactor::Elem& s,
                            const QuadFactor::Elem& t) {
  auto ss = f.mul(s, s);
  auto tt = f.mul(t, t);
  return {ss.first - spec.tau() * tt.first, ss.second - spec.tau() * tt.second};
}

namespace {

using Elem = QuadFactor::Elem;

struct EPair {
  Elem s, t;
};

EPair e_mul(const QuadFactor& f, const Rational& tau, const EPair& x, const EPair& y) {
  Elem ss = f.mul(x.s, y.s), tt = f.mul(x.t, y.t), st = f.mul(x.s, y.t), ts = f.mul(x.t, y.s);
  return {{ss.first + tau * tt.first, ss.second + tau * tt.second},
          {st.first + ts.first, st.second + ts.second}};
}

EPair e_conj(const EPair& x) { return {x.s, {-x.t.first, -x.t.second}}; }

EPair e_div(const QuadFactor& f, const LocalFieldSpec& spec, const EPair& x, const EPair& y) {
  Elem n = norm_to_Fi(f, spec, y.s, y.t);
  Elem ninv = f.inv(n);
  EPair num = e_mul(f, spec.tau(), x, e_conj(y));
  return {f.mul(num.s, ninv), f.mul(num.t, ninv)};
}

}  // namespace

std::vector<U1Rep> u1_cosets(const EtaleAlgebra& a, std::size_t i, long k) {
  if (k < 1) throw std::invalid_argument("u1_cosets: level must be >= 1");
  const QuadFactor& f = a.factor(i);
  const LocalFieldSpec& spec = a.spec();
  if (f.contains_E())
    throw std::domain_error("u1_cosets: E_i splits, U(1) is noncompact; use the torus-integral path");
  long p = spec.p();
  long pk = p_pow(p, k).get_si();
  int d = f.degree();
  long total = 1;
  for (int j = 0; j < 2 * d; ++j) total *= pk;
  std::vector<U1Rep> out;
  std::vector<long> idx(2 * d, 0);
  for (long n = 0; n < total; ++n) {
    long r = n;
    for (int j = 0; j < 2 * d; ++j) {
      idx[j] = r % pk;
      r /= pk;
    }
    Elem s = f.from_integral(Rational(idx[0]), d == 2 ? Rational(idx[1]) : Rational(0));
    Elem t = f.from_integral(Rational(idx[d]), d == 2 ? Rational(idx[d + 1]) : Rational(0));
    Elem nm = norm_to_Fi(f, spec, s, t);
    auto c = f.to_integral(nm);
    if (!in_pk(c.first - 1, p, k) || !in_pk(c.second, p, k)) continue;
    EPair zp{{s.first + 1, s.second}, t};
    Elem nzp = norm_to_Fi(f, spec, zp.s, zp.t);
    EPair g;
    if (f.val(nzp) == 0) {
      g = e_div(f, spec, zp, e_conj(zp));
    } else {
      EPair zm{{Rational(1) - s.first, -s.second}, {-t.first, -t.second}};
      EPair h = e_div(f, spec, zm, e_conj(zm));
      g = {{-h.s.first, -h.s.second}, {-h.t.first, -h.t.second}};
    }
    out.push_back({g.s, g.t});
  }
  return out;
}

std::vector<Poly> crt_idempotents(const EtaleAlgebra& a) {
  Poly total = Poly::constant(1);
  for (const auto& f : a.factors()) total = total * f.poly();
  std::vector<Poly> out;
  for (const auto& f : a.factors()) {
    Poly cof = total.divmod(f.poly()).first;
    Bezout b = poly_ext_gcd(cof, f.poly());
    if (b.g.degree() != 0) throw std::domain_error("crt_idempotents: factors not coprime");
    Poly e = (b.s * cof).divmod(total).second;
    out.push_back(e);
  }
  return out;
}

QMat element_matrix(const EtaleAlgebra& a, const AlgElement& x, const QMat& gamma) {
  auto ids = crt_idempotents(a);
  std::size_t n = gamma.rows();
  QMat out(n, n);
  QMat id = QMat::identity(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    QMat comp = id.scaled(x[i].first) + gamma.scaled(x[i].second);
    out = out + ids[i].eval(gamma) * comp;
  }
  return out;
}

int chi_factor(const QuadFactor& f, const QuadFactor::Elem& x, const LocalFieldSpec& spec) {
  return chi(f.norm(x), spec);
}

QuadFactor::Elem non_norm_element(const QuadFactor& f, const LocalFieldSpec& spec) {
  if (f.contains_E()) throw std::domain_error("non_norm_element: every element is a norm");
  long p = spec.p();
  std::vector<Elem> cands;
  cands.push_back(f.uniformizer());
  for (long c0 = 0; c0 <= p; ++c0)
    for (long c1 = 0; c1 <= (f.degree() == 2 ? p : 0); ++c1) {
      if (c0 == 0 && c1 == 0) continue;
      cands.push_back(f.from_integral(Rational(c0), Rational(c1)));
    }
  for (const auto& c : cands)
    if (chi(f.norm(c), spec) == -1) return c;
  throw std::logic_error("non_norm_element: search failed");
}

AlgElement norm_class_rep(const EtaleAlgebra& a, const std::vector<int>& bits) {
  if (bits.size() != a.S1().size()) throw std::invalid_argument("norm_class_rep: bit count != |S1|");
  AlgElement x = AlgElement::one(a);
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) x[a.S1()[j]] = non_norm_element(a.factor(a.S1()[j]), a.spec());
  return x;
}

}  // namespace orbint
