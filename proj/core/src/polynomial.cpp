#include "orbint/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace orbint {

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(r);
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(r);
}

Poly Poly::scaled(const Rational& s) const {
  Poly r = *this;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = c_;
  int dd = d.degree();
  if (degree() < dd) return {Poly(), *this};
  std::vector<Rational> q(degree() - dd + 1, Rational(0));
  Rational inv = Rational(1) / d.lead();
  for (int i = degree(); i >= dd; --i) {
    Rational f = rem[i] * inv;
    q[i - dd] = f;
    if (f == 0) continue;
    for (int k = 0; k <= dd; ++k) rem[i - dd + k] -= f * d.c_[k];
  }
  return {Poly(q), Poly(rem)};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / lead());
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(r);
}

Rational Poly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

QMat Poly::eval(const QMat& m) const {
  QMat r(m.rows(), m.cols());
  QMat id = QMat::identity(m.rows());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * m + id.scaled(*it);
  return r;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i > 0) os << "x^" << i;
  }
  return os.str();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x.divmod(y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

Bezout poly_ext_gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b, s0 = Poly::constant(1), s1, t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  Rational inv = Rational(1) / r0.lead();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly char_poly(const QMat& a) {
  std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("char_poly: non-square");
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  QMat mk(n, n);
  QMat id = QMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + id.scaled(c[n - k + 1]);
    QMat am = a * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return Poly(c);
}

QMat companion(const Poly& f) {
  Poly m = f.monic();
  int n = m.degree();
  QMat c(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -m.coeff(i);
  return c;
}

QMat sylvester(const Poly& f, const Poly& g) {
  int m = f.degree(), n = g.degree();
  QMat s(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(i, i + j) = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(n + i, i + j) = g.coeff(n - j);
  return s;
}

Rational resultant(const Poly& f, const Poly& g) {
  if (f.degree() <= 0 || g.degree() <= 0) throw std::invalid_argument("resultant: need positive degrees");
  return sylvester(f, g).det();
}

Rational rationalize(long double x, long max_den) {
  // continued fraction convergents
  long double y = x;
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    long double a = std::floor(y);
    if (std::fabs(a) > 1e15L) break;
    Integer ai = static_cast<long>(a);
    Integer h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double frac = y - a;
    if (std::fabs(frac) < 1e-12L) break;
    y = 1.0L / frac;
  }
  if (k1 == 0) return Rational(0);
  Rational r(h1, k1);
  r.canonicalize();
  return r;
}

namespace {

std::vector<std::complex<long double>> numeric_roots(const Poly& f) {
  Poly m = f.monic();
  int n = m.degree();
  std::vector<std::complex<long double>> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = static_cast<long double>(m.coeff(i).get_d());
  auto ev = [&](std::complex<long double> z) {
    std::complex<long double> r = 0;
    for (int i = n; i >= 0; --i) r = r * z + c[i];
    return r;
  };
  long double bound = 1;
  for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(c[i]));
  std::vector<std::complex<long double>> z(n);
  std::complex<long double> seed(0.4L, 0.9L);
  for (int i = 0; i < n; ++i) z[i] = std::pow(seed, i) * (bound * 0.5L);
  for (int it = 0; it < 5000; ++it) {
    long double delta = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (std::abs(den) == 0) den = 1e-18L;
      std::complex<long double> step = ev(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-17L) break;
  }
  return z;
}

bool divides(const Poly& d, const Poly& f) { return f.divmod(d).second.is_zero(); }

}  // namespace

std::vector<Poly> factor_deg_le2(const Poly& f0) {
  std::vector<Poly> out;
  Poly f = f0.monic();
  while (f.degree() > 0) {
    if (f.degree() <= 2) {
      if (f.degree() == 2) {
        // may still split over Q
        auto z = numeric_roots(f);
        bool split = false;
        for (auto r : z) {
          if (std::fabs(r.imag()) > 1e-9L) continue;
          Rational q = rationalize(r.real());
          Poly lin({-q, Rational(1)});
          if (divides(lin, f)) {
            out.push_back(lin);
            out.push_back(f.divmod(lin).first.monic());
            split = true;
            break;
          }
        }
        if (!split) out.push_back(f);
      } else {
        out.push_back(f);
      }
      break;
    }
    auto z = numeric_roots(f);
    bool found = false;
    for (auto r : z) {
      if (std::fabs(r.imag()) > 1e-9L) continue;
      Rational q = rationalize(r.real());
      Poly lin({-q, Rational(1)});
      if (divides(lin, f)) {
        out.push_back(lin);
        f = f.divmod(lin).first.monic();
        found = true;
        break;
      }
    }
    if (found) continue;
    for (std::size_t i = 0; i < z.size() && !found; ++i)
      for (std::size_t j = i + 1; j < z.size() && !found; ++j) {
        std::complex<long double> s = z[i] + z[j], pr = z[i] * z[j];
        if (std::fabs(s.imag()) > 1e-9L || std::fabs(pr.imag()) > 1e-9L) continue;
        Poly quad({rationalize(pr.real()), -rationalize(s.real()), Rational(1)});
        if (divides(quad, f)) {
          out.push_back(quad);
          f = f.divmod(quad).first.monic();
          found = true;
        }
      }
    if (!found) throw std::domain_error("characteristic polynomial has a factor of degree >= 3");
  }
  return out;
}

}  // namespace orbint
