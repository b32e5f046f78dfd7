#include "orbint/cohomology.hpp"

#include <stdexcept>

namespace orbint {

H1Class h1_add(const H1Class& x, const H1Class& y) {
  if (x.size() != y.size()) throw std::invalid_argument("H1Class: index mismatch");
  H1Class r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] ^ y[i];
  return r;
}

int h1_weight(const H1Class& x) {
  int w = 0;
  for (int b : x) w += b;
  return w;
}

std::pair<EtaleAlgebra, AlgElement> canonical_algebra(const Poly& char_poly, const LocalFieldSpec& spec) {
  return decompose(companion(char_poly), spec);
}

namespace {

QuadFactor::Elem elem_pow(const QuadFactor& f, const QuadFactor::Elem& x, std::size_t k) {
  QuadFactor::Elem r{Rational(1), Rational(0)};
  for (std::size_t i = 0; i < k; ++i) r = f.mul(r, x);
  return r;
}

// Solve Tr_{A/F}(c gamma^k) = b_k for c.
AlgElement solve_form(const EtaleAlgebra& a, const AlgElement& g, const std::vector<Rational>& b) {
  std::size_t n = static_cast<std::size_t>(a.dimension());
  QMat m(n, n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const QuadFactor& f = a.factor(i);
    for (int j = 0; j < f.degree(); ++j, ++col) {
      QuadFactor::Elem e{Rational(j == 0 ? 1 : 0), Rational(j == 1 ? 1 : 0)};
      for (std::size_t k = 0; k < n; ++k) m(k, col) = f.trace(f.mul(e, elem_pow(f, g[i], k)));
    }
  }
  std::vector<Rational> c = solve(m, b);
  std::vector<QuadFactor::Elem> comps;
  col = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.factor(i).degree() == 1) {
      comps.push_back({c[col], Rational(0)});
      col += 1;
    } else {
      comps.push_back({c[col], c[col + 1]});
      col += 2;
    }
  }
  return AlgElement(comps);
}

}  // namespace

AlgElement form_element(const UnitaryLieElement& x, const EVec& w) {
  auto [a, g] = canonical_algebra(x.char_poly(), x.space().spec());
  return solve_form(a, g, moments(x, w, x.dim()));
}

AlgElement form_element(const GLTriple& d, const LocalFieldSpec& spec) {
  auto [a, g] = canonical_algebra(char_poly(d.gamma), spec);
  return solve_form(a, g, moments(d, d.dim()));
}

H1Class rho(const UnitaryLieElement& x) {
  auto w = cyclic_vector(x);
  if (!w) throw std::domain_error("rho: element is not regular semisimple");
  const LocalFieldSpec& spec = x.space().spec();
  auto [a, g] = canonical_algebra(x.char_poly(), spec);
  AlgElement c = solve_form(a, g, moments(x, *w, x.dim()));
  H1Class r;
  for (std::size_t i : a.S1()) r.push_back(chi_factor(a.factor(i), c[i], spec) < 0 ? 1 : 0);
  return r;
}

H1Class inv(const UnitaryLieElement& d1, const UnitaryLieElement& d2) {
  if (d1.char_poly() != d2.char_poly()) throw std::invalid_argument("inv: not in the same stable class");
  return h1_add(rho(d1), rho(d2));
}

int pairing(const std::vector<bool>& lambda, const H1Class& x) {
  if (lambda.size() != x.size()) throw std::invalid_argument("pairing: index mismatch");
  int s = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!lambda[i] && x[i]) s = -s;
  return s;
}

int kappa(const std::vector<bool>& support, const H1Class& x) {
  if (support.size() != x.size()) throw std::invalid_argument("kappa: index mismatch");
  int s = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (support[i] && x[i]) s = -s;
  return s;
}

std::vector<Rational> twist_vstar(const GLTriple& d, const EtaleAlgebra& a, const AlgElement& x) {
  QMat xm = element_matrix(a, x, d.gamma);
  std::size_t n = d.dim();
  std::vector<Rational> r(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) r[j] += d.vstar[i] * xm(i, j);
  return r;
}

std::vector<DeltaX> delta_x_family(const GLTriple& d, const LocalFieldSpec& spec) {
  auto [a, g] = decompose(d.gamma, spec);
  std::size_t s1 = a.S1().size();
  std::vector<DeltaX> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s1); ++mask) {
    H1Class bits(s1);
    for (std::size_t j = 0; j < s1; ++j) bits[j] = static_cast<int>(mask >> j & 1);
    AlgElement x = norm_class_rep(a, bits);
    GLTriple dx = d;
    dx.vstar = twist_vstar(d, a, x);
    out.push_back({bits, x, construct_unitary_match(dx, spec)});
  }
  return out;
}

}  // namespace orbint
