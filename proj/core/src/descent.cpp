#include "orbint/descent.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace orbint {

std::size_t gl_triple_dim(std::size_t n) { return n * n + 2 * n; }

QMat gl_action_matrix(const QMat& k) {
  std::size_t n = k.rows(), d = gl_triple_dim(n);
  QMat ki = k.inverse();
  QMat a(d, d);
  // (k X k^{-1})_{ij} = sum_{r,s} k_{ir} X_{rs} ki_{sj}
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) a(i * n + j, r * n + s) = k(i, r) * ki(s, j);
  std::size_t ov = n * n, ow = n * n + n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(ov + i, ov + j) = k(i, j);
      a(ow + j, ow + i) = ki(i, j);  // (v* k^{-1})_j = sum_i v*_i ki_{ij}
    }
  return a;
}

namespace {

// blocks of the gl_n x V x V* coordinates
std::vector<std::pair<std::size_t, std::size_t>> blocks(std::size_t n) {
  return {{0, n * n}, {n * n, n * n + n}, {n * n + n, n * n + 2 * n}};
}

long coord_floor(const Box& b, std::size_t j, long p) {
  if (b.center[j] == 0) return b.level[j];
  return std::min(b.level[j], valuation(b.center[j], p));
}

// Split every term so each block is a cube (equal levels inside the block).
std::vector<Term> block_cubes(const StepFunction& f, std::size_t n) {
  long p = f.p();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    std::vector<Term> cur{t};
    for (auto [lo, hi] : blocks(n)) {
      long top = LONG_MIN;
      for (std::size_t j = lo; j < hi; ++j) top = std::max(top, t.box.level[j]);
      for (std::size_t j = lo; j < hi; ++j) {
        long gap = top - t.box.level[j];
        if (gap == 0) continue;
        std::vector<Term> nxt;
        Rational step = p_pow_q(p, t.box.level[j]);
        long cnt = p_pow(p, gap).get_si();
        for (const auto& c : cur)
          for (long r = 0; r < cnt; ++r) {
            Term s = c;
            s.box.center[j] = c.box.center[j] + step * r;
            s.box.level[j] = top;
            nxt.push_back(std::move(s));
          }
        cur = std::move(nxt);
      }
    }
    for (auto& c : cur) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

long k_average_level(const StepFunction& f, std::size_t n) {
  long p = f.p(), need = 1;
  for (const auto& t : f.terms())
    for (auto [lo, hi] : blocks(n)) {
      long fl = LONG_MAX, top = LONG_MIN, ph = LONG_MAX;
      for (std::size_t j = lo; j < hi; ++j) {
        fl = std::min(fl, coord_floor(t.box, j, p));
        top = std::max(top, t.box.level[j]);
        if (t.phase[j] != 0) ph = std::min(ph, valuation(t.phase[j], p));
      }
      need = std::max(need, top - fl);
      if (ph != LONG_MAX) need = std::max(need, -ph - fl);
    }
  return need;
}

std::vector<QMat> gl_residue_reps(std::size_t n, long p, long level) {
  long m = p_pow(p, level).get_si();
  std::size_t cells = n * n;
  std::vector<long> digits(cells, 0);
  std::vector<QMat> out;
  while (true) {
    QMat k(n, n);
    for (std::size_t c = 0; c < cells; ++c) k(c / n, c % n) = digits[c];
    if (valuation(k.det() == 0 ? Rational(p) : k.det(), p) == 0) out.push_back(k);
    std::size_t c = 0;
    while (c < cells && ++digits[c] == m) digits[c++] = 0;
    if (c == cells) break;
  }
  return out;
}

StepFunction k_average(const StepFunction& f, std::size_t n, const LocalFieldSpec& spec, long level) {
  std::size_t d = gl_triple_dim(n);
  if (f.dim() != d) throw std::invalid_argument("k_average: dimension is not n^2 + 2n");
  long p = f.p();
  if (level <= 0) level = k_average_level(f, n);
  auto cubes = block_cubes(f, n);
  auto reps = gl_residue_reps(n, p, level);
  StepFunction acc(d, p);
  Rational w = Rational(1) / Rational(static_cast<long>(reps.size()));
  for (const auto& k : reps) {
    int c = chi(k.det(), spec);
    QMat a = gl_action_matrix(k);
    QMat ainv = a.inverse();
    QMat at = a.transpose();
    for (const auto& t : cubes) {
      Box nb{ainv * t.box.center, t.box.level};
      acc.add_term(std::move(nb), at * t.phase, t.coeff * CycScalar(w * c));
    }
  }
  return acc.compressed();
}

StepFunction parabolic_descent(const StepFunction& f, const LocalFieldSpec& spec, long level) {
  if (f.dim() != 8) throw std::invalid_argument("parabolic_descent: expects gl_2 x V x V*");
  StepFunction fk = k_average(f, 2, spec, level);
  // (m1, x, m2, v1, v2, w1, w2) -> (m1, x, 0, m2, v, w), then integrate x out
  std::vector<Subst> subs(8);
  subs[0] = {0, 1, 0};
  subs[1] = {1, 1, 0};
  subs[2] = {-1, 0, 0};
  for (int j = 3; j < 8; ++j) subs[j] = {j - 1, 1, 0};
  StepFunction g = fk.substitute(subs, 7);
  std::vector<bool> drop(7, false);
  drop[1] = true;
  StepFunction h = g.fiber_integrate(drop).compressed();
  return h;
}

StepFunction fourier_gl2(const StepFunction& f) {
  std::vector<bool> mask(8, false);
  for (int j = 0; j < 4; ++j) mask[j] = true;
  QMat g(4, 4);
  g(0, 0) = 1;
  g(1, 2) = 1;  // tr(XY) pairs X12 with Y21
  g(2, 1) = 1;
  g(3, 3) = 1;
  return f.fourier(mask, g);
}

StepFunction fourier_levi(const StepFunction& fp) {
  std::vector<bool> mask(6, false);
  mask[0] = mask[1] = true;
  return fp.fourier(mask, QMat::identity(2));
}

}  // namespace orbint
