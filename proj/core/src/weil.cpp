#include "orbint/weil.hpp"

#include <stdexcept>

namespace orbint {

CycScalar weil_index(const Rational& a, long p) {
  if (a == 0) throw std::invalid_argument("weil_index: a = 0");
  long e = valuation(a, p);
  if (e % 2 == 0) return CycScalar(1);
  long u = unit_residue(a / p_pow_q(p, e), p);
  // int over p^{-1}O of psi(a x^2) is the residue sum; larger shells cancel.
  std::vector<Rational> b(p, Rational(0));
  for (long t = 0; t < p; ++t) b[(u * t % p) * t % p] += 1;
  return CycScalar::from_buckets(p, b) / sqrt_p(p);
}

CycScalar weil_index(const QuadFormDiag& q, long p) {
  CycScalar g(1);
  for (const auto& c : q.coeffs) g *= weil_index(c, p);
  return g;
}

std::vector<Rational> diagonalize_symmetric(const QMat& gram) {
  std::size_t n = gram.rows();
  QMat g = gram;
  std::vector<Rational> out;
  // Congruence reduction: pick a pivot with nonzero diagonal, clear its row and column.
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && g(i, i) != 0) piv = i;
    if (piv == n) {
      // all remaining diagonal entries vanish: replace e_i by e_i + e_j
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[i] && !done[j] && g(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == n) break;  // radical
      for (std::size_t k = 0; k < n; ++k) g(bi, k) += g(bj, k);
      for (std::size_t k = 0; k < n; ++k) g(k, bi) += g(k, bj);
      piv = bi;
    }
    done[piv] = true;
    Rational d = g(piv, piv);
    out.push_back(d);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || g(i, piv) == 0) continue;
      Rational c = g(i, piv) / d;
      for (std::size_t k = 0; k < n; ++k) g(i, k) -= c * g(piv, k);
      for (std::size_t k = 0; k < n; ++k) g(k, i) -= c * g(k, piv);
    }
  }
  return out;
}

namespace {

EMat unflatten(const std::vector<Rational>& x, std::size_t n) {
  EMat m(n);
  for (std::size_t k = 0; k < n * n; ++k) m.a[k] = {x[2 * k], x[2 * k + 1]};
  return m;
}

EVal trace(const EMat& m) {
  EVal t;
  for (std::size_t i = 0; i < m.n; ++i) t = e_add(t, m(i, i));
  return t;
}

}  // namespace

std::vector<EMat> twisted_lie_basis(const HermitianSpace& w) {
  std::size_t n = w.dim(), d = 2 * n * n;
  const Rational& tau = w.spec().tau();
  QMat lin(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> e(d, Rational(0));
    e[k] = 1;
    EMat x = unflatten(e, n);
    EMat r = e_sub(e_mul(e_conj_transpose(x), w.gram(), tau), e_mul(w.gram(), x, tau));
    for (std::size_t j = 0; j < n * n; ++j) {
      lin(2 * j, k) = r.a[j].a;
      lin(2 * j + 1, k) = r.a[j].b;
    }
  }
  QMat ker = lin.kernel();
  std::vector<EMat> out;
  for (std::size_t c = 0; c < ker.cols(); ++c) out.push_back(unflatten(ker.col(c), n));
  return out;
}

QuadFormDiag diagonalize_trace_form(const HermitianSpace& w) {
  std::size_t n = w.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !w.gram()(i, j).is_zero())
        throw std::invalid_argument("diagonalize_trace_form: Gram matrix not diagonal");
  auto basis = twisted_lie_basis(w);
  const Rational& tau = w.spec().tau();
  QMat g(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      EVal t = trace(e_mul(basis[i], basis[j], tau));
      if (t.b != 0) throw std::logic_error("diagonalize_trace_form: trace outside F");
      g(i, j) = t.a;
    }
  QuadFormDiag q;
  q.coeffs = diagonalize_symmetric(g);
  if (q.coeffs.size() != basis.size()) throw std::logic_error("diagonalize_trace_form: degenerate form");
  q.tag = "u(W)";
  return q;
}

namespace {

HermitianSpace diag_space(std::size_t n, const Rational& lambda, const LocalFieldSpec& spec) {
  EMat h = EMat::identity(n);
  h(n - 1, n - 1) = {lambda, 0};
  return HermitianSpace(h, spec);
}

}  // namespace

SignIdentityReport verify_sign_identity(const LocalFieldSpec& spec, std::size_t max_n) {
  long p = spec.p();
  SignIdentityReport rep;
  rep.p = p;
  rep.x = spec.tau();
  rep.a1_ok = true;
  const Rational& x = spec.tau();
  for (int c = 0; c < 4; ++c) {
    Rational a = class_representative(static_cast<SquareClass>(c), p);
    if (chi(a, spec) != -1) continue;
    SignIdentityRow row;
    row.a = a;
    row.lhs = weil_index(a, p) * weil_index(-x * a, p);
    row.rhs = weil_index(Rational(1), p) * weil_index(-x, p);
    row.ratio = row.lhs / row.rhs;
    if (row.ratio != CycScalar(-1) || hilbert_symbol(a, x, p) != -1) rep.a1_ok = false;
    rep.rows.push_back(row);
  }

  rep.c_ok = true;
  rep.lambda_independent = true;
  for (std::size_t n = 1; n <= max_n; ++n) {
    // gamma of the trace form for every square class of lambda, grouped by the class of W
    CycScalar g[2];
    bool seen[2] = {false, false};
    for (int c = 0; c < 4; ++c) {
      Rational lambda = class_representative(static_cast<SquareClass>(c), p);
      HermitianSpace w = diag_space(n, lambda, spec);
      CycScalar gw = weil_index(diagonalize_trace_form(w), p);
      int bit = w.class_bit();
      if (!seen[bit]) {
        g[bit] = gw;
        seen[bit] = true;
      } else if (g[bit] != gw) {
        rep.lambda_independent = false;
      }
    }
    CycScalar cn = g[1] / g[0];
    rep.c_by_n.push_back(cn);
    if (cn != CycScalar(n % 2 == 1 ? 1 : -1)) rep.c_ok = false;
  }
  return rep;
}

}  // namespace orbint
