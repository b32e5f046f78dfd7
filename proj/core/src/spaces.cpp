#include "orbint/spaces.hpp"

#include <stdexcept>

namespace orbint {

EVal e_add(const EVal& x, const EVal& y) { return {x.a + y.a, x.b + y.b}; }
EVal e_sub(const EVal& x, const EVal& y) { return {x.a - y.a, x.b - y.b}; }

EVal e_mul(const EVal& x, const EVal& y, const Rational& tau) {
  return {x.a * y.a + tau * x.b * y.b, x.a * y.b + x.b * y.a};
}

EVal e_inv(const EVal& x, const Rational& tau) {
  Rational n = e_norm(x, tau);
  if (n == 0) throw std::domain_error("EVal: inverse of zero");
  return {x.a / n, -x.b / n};
}

EMat EMat::from_rational(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("EMat: square matrix expected");
  EMat r(m.rows());
  for (std::size_t i = 0; i < r.n; ++i)
    for (std::size_t j = 0; j < r.n; ++j) r(i, j).a = m(i, j);
  return r;
}

EMat EMat::identity(std::size_t dim) {
  EMat r(dim);
  for (std::size_t i = 0; i < dim; ++i) r(i, i).a = 1;
  return r;
}

EMat e_mul(const EMat& x, const EMat& y, const Rational& tau) {
  EMat r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      if (x(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < x.n; ++j) r(i, j) = e_add(r(i, j), e_mul(x(i, k), y(k, j), tau));
    }
  return r;
}

EVec e_apply(const EMat& x, const EVec& v, const Rational& tau) {
  EVec r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) r[i] = e_add(r[i], e_mul(x(i, k), v[k], tau));
  return r;
}

EMat e_add(const EMat& x, const EMat& y) {
  EMat r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = e_add(x.a[i], y.a[i]);
  return r;
}

EMat e_sub(const EMat& x, const EMat& y) {
  EMat r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = e_sub(x.a[i], y.a[i]);
  return r;
}

EMat e_conj_transpose(const EMat& x) {
  EMat r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) r(j, i) = e_conj(x(i, j));
  return r;
}

EVal e_det(const EMat& x, const Rational& tau) {
  EMat m = x;
  std::size_t n = m.n;
  EVal d{1, 0};
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t sel = n;
    for (std::size_t i = j; i < n; ++i)
      if (!m(i, j).is_zero()) {
        sel = i;
        break;
      }
    if (sel == n) return {0, 0};
    if (sel != j) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(sel, k), m(j, k));
      d = {-d.a, -d.b};
    }
    d = e_mul(d, m(j, j), tau);
    EVal inv = e_inv(m(j, j), tau);
    for (std::size_t i = j + 1; i < n; ++i) {
      if (m(i, j).is_zero()) continue;
      EVal f = e_mul(m(i, j), inv, tau);
      for (std::size_t k = j; k < n; ++k) m(i, k) = e_sub(m(i, k), e_mul(f, m(j, k), tau));
    }
  }
  return d;
}

EMat e_inverse(const EMat& x, const Rational& tau) {
  std::size_t n = x.n;
  EMat m = x, r = EMat::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t sel = n;
    for (std::size_t i = j; i < n; ++i)
      if (!m(i, j).is_zero()) {
        sel = i;
        break;
      }
    if (sel == n) throw std::domain_error("EMat: singular matrix");
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(m(sel, k), m(j, k));
      std::swap(r(sel, k), r(j, k));
    }
    EVal inv = e_inv(m(j, j), tau);
    for (std::size_t k = 0; k < n; ++k) {
      m(j, k) = e_mul(m(j, k), inv, tau);
      r(j, k) = e_mul(r(j, k), inv, tau);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || m(i, j).is_zero()) continue;
      EVal f = m(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        m(i, k) = e_sub(m(i, k), e_mul(f, m(j, k), tau));
        r(i, k) = e_sub(r(i, k), e_mul(f, r(j, k), tau));
      }
    }
  }
  return r;
}

EMat e_block_diag(const EMat& x, const EMat& y) {
  EMat r(x.n + y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) r(i, j) = x(i, j);
  for (std::size_t i = 0; i < y.n; ++i)
    for (std::size_t j = 0; j < y.n; ++j) r(x.n + i, x.n + j) = y(i, j);
  return r;
}

Poly e_char_poly(const EMat& x, const Rational& tau) {
  // Faddeev-LeVerrier over E
  std::size_t n = x.n;
  std::vector<EVal> c(n + 1);
  c[n] = {1, 0};
  EMat mk(n);
  for (std::size_t k = 1; k <= n; ++k) {
    EMat shifted = e_mul(x, mk, tau);
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) = e_add(shifted(i, i), c[n - k + 1]);
    mk = shifted;
    EMat am = e_mul(x, mk, tau);
    EVal tr;
    for (std::size_t i = 0; i < n; ++i) tr = e_add(tr, am(i, i));
    c[n - k] = {-tr.a / static_cast<long>(k), -tr.b / static_cast<long>(k)};
  }
  std::vector<Rational> r;
  for (const auto& e : c) {
    if (e.b != 0) throw std::domain_error("characteristic polynomial not defined over F");
    r.push_back(e.a);
  }
  return Poly(r);
}

// ---------------------------------------------------------------------------

HermitianSpace::HermitianSpace(EMat gram, const LocalFieldSpec& spec) : h_(std::move(gram)), spec_(spec) {
  if (!(e_conj_transpose(h_) == h_)) throw std::invalid_argument("HermitianSpace: Gram matrix not Hermitian");
  if (det() == 0) throw std::invalid_argument("HermitianSpace: degenerate form");
}

HermitianSpace HermitianSpace::split(std::size_t n, const LocalFieldSpec& spec) {
  EMat h(n);
  for (std::size_t i = 0; i < n; ++i) h(i, n - 1 - i).a = 1;
  return HermitianSpace(h, spec);
}

namespace {

Rational non_norm_rational(const LocalFieldSpec& spec) {
  // p is a non-norm for unramified E; the nonresidue is one for ramified E
  Rational c = spec.ramified() ? Rational(spec.nonresidue()) : Rational(spec.p());
  if (chi(c, spec) != -1) throw std::logic_error("non_norm_rational: unexpected norm");
  return c;
}

}  // namespace

HermitianSpace HermitianSpace::nonsplit(std::size_t n, const LocalFieldSpec& spec) {
  EMat h = EMat::identity(n);
  Rational sgn = ((n * (n - 1) / 2) % 2) ? Rational(-1) : Rational(1);
  h(n - 1, n - 1).a = sgn * non_norm_rational(spec);
  return HermitianSpace(h, spec);
}

HermitianSpace HermitianSpace::of_class(std::size_t n, int bit, const LocalFieldSpec& spec) {
  return bit ? nonsplit(n, spec) : split(n, spec);
}

Rational HermitianSpace::det() const {
  EVal d = e_det(h_, spec_.tau());
  if (d.b != 0) throw std::logic_error("HermitianSpace: determinant outside F");
  return d.a;
}

int HermitianSpace::class_bit() const {
  std::size_t n = dim();
  Rational d = det();
  if ((n * (n - 1) / 2) % 2) d = -d;
  return chi(d, spec_) == 1 ? 0 : 1;
}

EVal HermitianSpace::form(const EVec& u, const EVec& v) const {
  EVec hv = e_apply(h_, v, spec_.tau());
  EVal s;
  for (std::size_t i = 0; i < u.size(); ++i) s = e_add(s, e_mul(e_conj(u[i]), hv[i], spec_.tau()));
  return s;
}

bool is_twisted(const HermitianSpace& w, const EMat& delta) {
  const Rational& tau = w.spec().tau();
  return e_mul(e_conj_transpose(delta), w.gram(), tau) == e_mul(w.gram(), delta, tau);
}

UnitaryLieElement::UnitaryLieElement(HermitianSpace w, EMat delta) : w_(std::move(w)), d_(std::move(delta)) {
  if (d_.n != w_.dim()) throw std::invalid_argument("UnitaryLieElement: dimension mismatch");
  if (!is_twisted(w_, d_)) throw std::invalid_argument("UnitaryLieElement: not in the twisted Lie algebra");
}

Poly UnitaryLieElement::char_poly() const { return e_char_poly(d_, w_.spec().tau()); }

// ---------------------------------------------------------------------------

std::vector<Rational> moments(const GLTriple& d, std::size_t count) {
  std::vector<Rational> out;
  std::vector<Rational> x = d.v;
  for (std::size_t i = 0; i < count; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += d.vstar[j] * x[j];
    out.push_back(s);
    x = d.gamma * x;
  }
  return out;
}

std::vector<Rational> moments(const UnitaryLieElement& x, const EVec& w, std::size_t count) {
  std::vector<Rational> out;
  EVec y = w;
  for (std::size_t i = 0; i < count; ++i) {
    EVal s = x.space().form(w, y);
    if (s.b != 0) throw std::logic_error("unitary moment outside F");
    out.push_back(s.a);
    y = e_apply(x.matrix(), y, x.space().spec().tau());
  }
  return out;
}

namespace {

std::vector<Rational> low_coeffs(const Poly& cp, std::size_t n) {
  std::vector<Rational> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(cp.coeff(static_cast<int>(i)));
  return a;
}

Rational hankel_det(const std::vector<Rational>& b, std::size_t n) {
  QMat h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = b[i + j];
  return h.det();
}

}  // namespace

InvariantVector invariants(const GLTriple& d) {
  std::size_t n = d.dim();
  return {low_coeffs(orbint::char_poly(d.gamma), n), moments(d, n)};
}

InvariantVector invariants(const UnitaryLieElement& x, const EVec& w) {
  std::size_t n = x.dim();
  return {low_coeffs(x.char_poly(), n), moments(x, w, n)};
}

Rational delta_value(const GLTriple& d) { return hankel_det(moments(d, 2 * d.dim() - 1), d.dim()); }

Rational delta_value(const UnitaryLieElement& x, const EVec& w) {
  return hankel_det(moments(x, w, 2 * x.dim() - 1), x.dim());
}

int omega(const GLTriple& d, const LocalFieldSpec& spec) {
  std::size_t n = d.dim();
  QMat k(n, n);
  std::vector<Rational> x = d.v;
  for (std::size_t j = 0; j < n; ++j) {
    k.set_col(j, x);
    x = d.gamma * x;
  }
  Rational det = k.det();
  if (det == 0) throw std::domain_error("omega: v is not a cyclic vector");
  return chi(det, spec);
}

bool match_predicate(const GLTriple& d, const UnitaryLieElement& x, const EVec& w) {
  if (d.dim() != x.dim()) return false;
  return invariants(d) == invariants(x, w);
}

UnitaryOrbit construct_unitary_match(const GLTriple& d, const LocalFieldSpec& spec) {
  std::size_t n = d.dim();
  if (delta_value(d) == 0) throw std::domain_error("construct_unitary_match: input not regular semisimple");
  auto b = moments(d, 2 * n - 1);
  EMat h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j).a = b[i + j];
  HermitianSpace w(h, spec);
  EVec e1(n);
  e1[0].a = 1;
  int bit = w.class_bit();
  return {UnitaryLieElement(w, EMat::from_rational(companion(orbint::char_poly(d.gamma)))), e1, bit};
}

GLTriple construct_gl_match(const UnitaryLieElement& x, const EVec& w) {
  std::size_t n = x.dim();
  GLTriple d;
  d.gamma = companion(x.char_poly());
  d.v.assign(n, Rational(0));
  d.v[0] = 1;
  d.vstar = moments(x, w, n);
  return d;
}

Rational d_delta(const Poly& p1, const Poly& p2) {
  if (poly_gcd(p1, p2).degree() > 0) throw std::domain_error("d_delta: characteristic polynomials not coprime");
  return resultant(p1.monic(), p2.monic());
}

Rational endoscopic_factor(const Rational& d, const LocalFieldSpec& spec, int kappa_sign) {
  if (d == 0) throw std::domain_error("endoscopic_factor: D = 0");
  return Rational(chi(d, spec) * kappa_sign) * abs_p(d, spec.p());
}

UnitaryLieElement nice_matching_embed(const UnitaryLieElement& d1, const UnitaryLieElement& d2) {
  HermitianSpace w(e_block_diag(d1.space().gram(), d2.space().gram()), d1.space().spec());
  return UnitaryLieElement(w, e_block_diag(d1.matrix(), d2.matrix()));
}

std::optional<EVec> cyclic_vector(const UnitaryLieElement& x) {
  std::size_t n = x.dim();
  // coefficients in {0, 1, 2} per coordinate, first entry 1
  std::size_t total = 1;
  for (std::size_t i = 1; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    EVec w(n);
    w[0].a = 1;
    std::size_t c = code;
    for (std::size_t i = 1; i < n; ++i, c /= 3) w[i].a = static_cast<long>(c % 3);
    if (delta_value(x, w) != 0) return w;
  }
  for (std::size_t i = 0; i < n; ++i) {
    EVec w(n);
    w[i].a = 1;
    if (i + 1 < n) w[i + 1].b = 1;
    if (delta_value(x, w) != 0) return w;
  }
  return std::nullopt;
}

GLTriple block_triple(const GLTriple& d1, const GLTriple& d2) {
  GLTriple d;
  d.gamma = block_diag(d1.gamma, d2.gamma);
  d.v = d1.v;
  d.v.insert(d.v.end(), d2.v.begin(), d2.v.end());
  d.vstar = d1.vstar;
  d.vstar.insert(d.vstar.end(), d2.vstar.begin(), d2.vstar.end());
  return d;
}

}  // namespace orbint
