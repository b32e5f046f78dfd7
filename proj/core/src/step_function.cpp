#include "orbint/step_function.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "orbint/scalar.hpp"

namespace orbint {

namespace {

// 1-D ball c + p^k Z_p
struct Ball {
  Rational c;
  long k;
};

bool ball_contains(const Ball& big, const Ball& small, long p) {
  return big.k <= small.k && in_pk(small.c - big.c, p, big.k);
}

// Intersection of two balls (nested or disjoint).
bool ball_meet(const Ball& a, const Ball& b, long p, Ball& out) {
  if (ball_contains(a, b, p)) {
    out = b;
    return true;
  }
  if (ball_contains(b, a, p)) {
    out = a;
    return true;
  }
  return false;
}

// Reduce centers and phases; fold characters that are constant on the box
// into the coefficient.
void normalize_term(Term& t, long p) {
  Rational folded = 0;
  for (std::size_t j = 0; j < t.box.dim(); ++j) {
    long k = t.box.level[j];
    t.box.center[j] = modrep(t.box.center[j], p, k);
    Rational& a = t.phase[j];
    if (a == 0) continue;
    Rational ar = in_pk(a, p, -k) ? Rational(0) : modrep(a, p, -k);
    folded += (a - ar) * t.box.center[j];
    a = ar;
  }
  if (folded != 0) t.coeff *= psi_value(folded, p);
}

std::string term_key(const Term& t) {
  std::string k = t.box.key();
  for (const auto& a : t.phase) k += a.get_str() + ",";
  return k;
}

bool zero_phase(const Term& t) {
  for (const auto& a : t.phase)
    if (a != 0) return false;
  return true;
}

}  // namespace

bool Box::contains(const std::vector<Rational>& x, long p) const {
  if (x.size() != center.size()) throw std::invalid_argument("Box::contains: dimension mismatch");
  for (std::size_t j = 0; j < center.size(); ++j)
    if (!in_pk(x[j] - center[j], p, level[j])) return false;
  return true;
}

long Box::total_level() const {
  long s = 0;
  for (long k : level) s += k;
  return s;
}

void Box::reduce(long p) {
  for (std::size_t j = 0; j < center.size(); ++j) center[j] = modrep(center[j], p, level[j]);
}

std::string Box::key() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < center.size(); ++j) os << center[j].get_str() << '@' << level[j] << ';';
  return os.str();
}

bool intersect(const Box& a, const Box& b, long p, Box& out) {
  out.center.resize(a.dim());
  out.level.resize(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Ball r;
    if (!ball_meet({a.center[j], a.level[j]}, {b.center[j], b.level[j]}, p, r)) return false;
    out.center[j] = r.c;
    out.level[j] = r.k;
  }
  return true;
}

StepFunction StepFunction::box(const Box& b, long p, const CycScalar& c) {
  StepFunction f(b.dim(), p);
  f.add_term(b, c);
  return f;
}

StepFunction StepFunction::lattice(std::size_t dim, long p, long k) {
  Box b{std::vector<Rational>(dim, Rational(0)), std::vector<long>(dim, k)};
  return box(b, p);
}

void StepFunction::add_term(Box b, const CycScalar& c) {
  add_term(std::move(b), std::vector<Rational>(dim_, Rational(0)), c);
}

void StepFunction::add_term(Box b, std::vector<Rational> phase, const CycScalar& c) {
  if (b.dim() != dim_ || b.level.size() != dim_ || phase.size() != dim_)
    throw std::invalid_argument("StepFunction: term dimension mismatch");
  if (c.is_zero()) return;
  Term t{std::move(b), std::move(phase), c};
  normalize_term(t, p_);
  terms_.push_back(std::move(t));
}

StepFunction StepFunction::operator+(const StepFunction& o) const {
  if (o.dim_ != dim_ || o.p_ != p_) throw std::invalid_argument("StepFunction: ambient mismatch");
  StepFunction r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  return r;
}

StepFunction StepFunction::operator-(const StepFunction& o) const { return *this + o.scaled(CycScalar(-1)); }

StepFunction StepFunction::scaled(const CycScalar& c) const {
  StepFunction r(dim_, p_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.box, t.phase, t.coeff * c});
  return r;
}

StepFunction StepFunction::operator*(const StepFunction& o) const {
  if (o.dim_ != dim_ || o.p_ != p_) throw std::invalid_argument("StepFunction: ambient mismatch");
  StepFunction r(dim_, p_);
  Box b;
  for (const auto& s : terms_)
    for (const auto& t : o.terms_)
      if (intersect(s.box, t.box, p_, b)) {
        std::vector<Rational> ph(dim_);
        for (std::size_t j = 0; j < dim_; ++j) ph[j] = s.phase[j] + t.phase[j];
        r.add_term(b, std::move(ph), s.coeff * t.coeff);
      }
  return r;
}

StepFunction StepFunction::conj() const {
  StepFunction r = *this;
  for (auto& t : r.terms_) {
    t.coeff = t.coeff.conj();
    for (auto& a : t.phase) a = -a;
    normalize_term(t, p_);
  }
  return r;
}

CycScalar StepFunction::evaluate(const std::vector<Rational>& x) const {
  CycScalar s(0);
  for (const auto& t : terms_) {
    if (!t.box.contains(x, p_)) continue;
    Rational ph = 0;
    for (std::size_t j = 0; j < dim_; ++j) ph += t.phase[j] * x[j];
    s += ph == 0 ? t.coeff : t.coeff * psi_value(ph, p_);
  }
  return s;
}

CycScalar StepFunction::integrate() const {
  // group by total level so each power of p is formed once
  std::map<long, CycScalar> by_level;
  for (const auto& t : terms_)
    if (zero_phase(t)) by_level[t.box.total_level()] += t.coeff;
  CycScalar s(0);
  for (const auto& [k, c] : by_level) s += c * CycScalar(p_pow_q(p_, -k));
  return s;
}

StepFunction StepFunction::compressed() const {
  std::map<std::string, std::size_t> index;
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto [it, fresh] = index.emplace(term_key(t), out.size());
    if (fresh)
      out.push_back(t);
    else
      out[it->second].coeff += t.coeff;
  }
  StepFunction r(dim_, p_);
  for (auto& t : out)
    if (!t.coeff.is_zero()) r.terms_.push_back(std::move(t));
  return r;
}

namespace {

// Zero test by sweeping one coordinate at a time. Characters in coordinate j
// are first refined away on their own boxes. For coordinate j the
// projected balls form a forest; a point whose ball-membership pattern is
// "inside beta but in none of beta's strict sub-balls" exists iff the maximal
// sub-balls do not cover beta. Each such pattern is checked recursively.
bool zero_rec(std::vector<Term> ts, std::size_t j, std::size_t dim, long p) {
  if (ts.empty()) return true;
  if (j == dim) {
    CycScalar s(0);
    for (const Term& t : ts) s += t.coeff;
    return s.is_zero();
  }
  // make coordinate j character-free by refining where needed
  {
    std::vector<Term> flat;
    for (auto& t : ts) {
      if (t.phase[j] == 0) {
        flat.push_back(std::move(t));
        continue;
      }
      long k = t.box.level[j];
      long m = -valuation(t.phase[j], p);
      long cnt = p_pow(p, m - k).get_si();
      for (long r = 0; r < cnt; ++r) {
        Term c = t;
        c.box.center[j] = t.box.center[j] + Rational(r) * p_pow_q(p, k);
        c.box.level[j] = m;
        c.coeff *= psi_value(t.phase[j] * c.box.center[j], p);
        c.box.center[j] = modrep(c.box.center[j], p, m);
        c.phase[j] = 0;
        flat.push_back(std::move(c));
      }
    }
    ts = std::move(flat);
  }
  std::vector<Ball> balls;
  {
    std::set<std::pair<long, std::string>> seen;
    for (const Term& t : ts) {
      Ball b{t.box.center[j], t.box.level[j]};
      if (seen.insert({b.k, b.c.get_str()}).second) balls.push_back(b);
    }
  }
  std::sort(balls.begin(), balls.end(), [](const Ball& a, const Ball& b) { return a.k < b.k; });
  for (std::size_t bi = 0; bi < balls.size(); ++bi) {
    const Ball& beta = balls[bi];
    // maximal strict sub-balls of beta
    std::vector<std::size_t> kids;
    for (std::size_t ci = bi + 1; ci < balls.size(); ++ci) {
      if (balls[ci].k == beta.k || !ball_contains(beta, balls[ci], p)) continue;
      bool maximal = true;
      for (std::size_t di : kids)
        if (ball_contains(balls[di], balls[ci], p)) {
          maximal = false;
          break;
        }
      if (maximal) kids.push_back(ci);
    }
    Rational covered = 0;
    for (std::size_t ci : kids) covered += p_pow_q(p, beta.k - balls[ci].k);
    if (covered == 1) continue;
    std::vector<Term> active;
    for (const Term& t : ts)
      if (ball_contains({t.box.center[j], t.box.level[j]}, beta, p)) active.push_back(t);
    if (!zero_rec(std::move(active), j + 1, dim, p)) return false;
  }
  return true;
}

}  // namespace

bool StepFunction::is_zero() const {
  return zero_rec(compressed().terms_, 0, dim_, p_);
}

std::vector<std::vector<Rational>> lattice_quotient_reps(const QMat& l, long p, long r) {
  std::size_t n = l.rows(), m = l.cols();
  std::vector<long> e(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    long mv = kInfVal;
    for (std::size_t i = 0; i < n; ++i) mv = std::min(mv, valuation(l(i, j), p));
    if (mv != kInfVal) e[j] = std::max(0L, r - mv);
  }
  std::set<std::string> seen;
  std::vector<std::vector<Rational>> out;
  std::vector<long> a(m, 0), lim(m);
  for (std::size_t j = 0; j < m; ++j) lim[j] = p_pow(p, e[j]).get_si();
  while (true) {
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t j = 0; j < m; ++j)
      if (a[j])
        for (std::size_t i = 0; i < n; ++i) x[i] += l(i, j) * a[j];
    std::string key;
    for (auto& xi : x) {
      xi = modrep(xi, p, r);
      key += xi.get_str() + ";";
    }
    if (seen.insert(key).second) out.push_back(std::move(x));
    std::size_t j = 0;
    while (j < m && ++a[j] == lim[j]) a[j++] = 0;
    if (j == m) break;
  }
  return out;
}

StepFunction StepFunction::pullback(const QMat& m, const std::vector<Rational>& b) const {
  if (m.rows() != dim_ || m.cols() != dim_ || b.size() != dim_)
    throw std::invalid_argument("pullback: shape mismatch");
  Rational d = m.det();
  if (d == 0) throw std::domain_error("pullback: singular matrix");
  StepFunction r(dim_, p_);
  QMat mt = m.transpose();
  auto new_phase = [&](const Term& t, Rational& shift) {
    shift = 0;
    for (std::size_t i = 0; i < dim_; ++i) shift += t.phase[i] * b[i];
    return mt * t.phase;
  };

  // monomial fast path: box to box
  std::vector<int> sigma(dim_, -1);
  bool monomial = true;
  for (std::size_t i = 0; i < dim_ && monomial; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (m(i, j) != 0) {
        if (sigma[i] != -1) {
          monomial = false;
          break;
        }
        sigma[i] = static_cast<int>(j);
      }
  if (monomial) {
    for (const auto& t : terms_) {
      Box nb{std::vector<Rational>(dim_), std::vector<long>(dim_)};
      for (std::size_t i = 0; i < dim_; ++i) {
        const Rational& a = m(i, sigma[i]);
        nb.center[sigma[i]] = (t.box.center[i] - b[i]) / a;
        nb.level[sigma[i]] = t.box.level[i] - valuation(a, p_);
      }
      Rational shift;
      auto ph = new_phase(t, shift);
      r.add_term(std::move(nb), std::move(ph), shift == 0 ? t.coeff : t.coeff * psi_value(shift, p_));
    }
    return r;
  }

  QMat minv = m.inverse();
  bool integral = valuation(d, p_) == 0;
  for (std::size_t i = 0; i < dim_ && integral; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (valuation(m(i, j), p_) < 0) {
        integral = false;
        break;
      }
  for (const auto& t : terms_) {
    std::vector<Rational> shift_v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) shift_v[i] = t.box.center[i] - b[i];
    std::vector<Rational> c0 = minv * shift_v;
    Rational shift;
    auto ph = new_phase(t, shift);
    CycScalar coeff = shift == 0 ? t.coeff : t.coeff * psi_value(shift, p_);
    bool cube = std::all_of(t.box.level.begin(), t.box.level.end(), [&](long k) { return k == t.box.level[0]; });
    if (integral && cube) {
      r.add_term(Box{c0, t.box.level}, ph, coeff);
      continue;
    }
    // general: the lattice M^{-1} D Z^n, cut into cubes p^r Z^n
    QMat l = minv;
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) l(i, j) *= p_pow_q(p_, t.box.level[j]);
    long rr = LONG_MIN;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        Rational x = m(i, j) / p_pow_q(p_, t.box.level[i]);
        if (x != 0) rr = std::max(rr, -valuation(x, p_));
      }
    for (auto& rep : lattice_quotient_reps(l, p_, rr)) {
      std::vector<Rational> c(dim_);
      for (std::size_t i = 0; i < dim_; ++i) c[i] = c0[i] + rep[i];
      r.add_term(Box{c, std::vector<long>(dim_, rr)}, ph, coeff);
    }
  }
  return r;
}

StepFunction StepFunction::translate(const std::vector<Rational>& a) const {
  return pullback(QMat::identity(dim_), a);
}

StepFunction StepFunction::reflect() const {
  return pullback(QMat::identity(dim_).scaled(Rational(-1)), std::vector<Rational>(dim_, Rational(0)));
}

StepFunction StepFunction::substitute(const std::vector<Subst>& subs, std::size_t new_dim) const {
  if (subs.size() != dim_) throw std::invalid_argument("substitute: need one entry per coordinate");
  std::vector<bool> used(new_dim, false);
  for (const auto& s : subs) {
    if (s.var >= static_cast<int>(new_dim)) throw std::invalid_argument("substitute: variable out of range");
    if (s.var >= 0 && s.scale != 0) used[s.var] = true;
  }
  for (bool u : used)
    if (!u) throw std::domain_error("substitute: a variable is unconstrained (support not compact)");
  StepFunction r(new_dim, p_);
  for (const auto& t : terms_) {
    std::vector<Ball> cons(new_dim);
    std::vector<bool> have(new_dim, false);
    std::vector<Rational> ph(new_dim, Rational(0));
    Rational shift = 0;
    bool ok = true;
    for (std::size_t j = 0; j < dim_ && ok; ++j) {
      const Subst& s = subs[j];
      shift += t.phase[j] * s.offset;
      if (s.var < 0 || s.scale == 0) {
        ok = in_pk(s.offset - t.box.center[j], p_, t.box.level[j]);
        continue;
      }
      ph[s.var] += t.phase[j] * s.scale;
      Ball b{(t.box.center[j] - s.offset) / s.scale, t.box.level[j] - valuation(s.scale, p_)};
      if (!have[s.var]) {
        cons[s.var] = b;
        have[s.var] = true;
      } else {
        Ball out;
        ok = ball_meet(cons[s.var], b, p_, out);
        cons[s.var] = out;
      }
    }
    if (!ok) continue;
    Box nb{std::vector<Rational>(new_dim), std::vector<long>(new_dim)};
    for (std::size_t v = 0; v < new_dim; ++v) {
      nb.center[v] = cons[v].c;
      nb.level[v] = cons[v].k;
    }
    r.add_term(std::move(nb), std::move(ph), shift == 0 ? t.coeff : t.coeff * psi_value(shift, p_));
  }
  return r;
}

StepFunction StepFunction::restrict_coords(const std::vector<bool>& fixed, const std::vector<Rational>& vals) const {
  std::vector<Subst> subs(dim_);
  std::size_t nd = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (fixed[j])
      subs[j] = {-1, Rational(0), vals[j]};
    else
      subs[j] = {static_cast<int>(nd++), Rational(1), Rational(0)};
  }
  return substitute(subs, nd);
}

StepFunction StepFunction::fiber_integrate(const std::vector<bool>& drop) const {
  std::size_t nd = 0;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!drop[j]) ++nd;
  StepFunction r(nd, p_);
  for (const auto& t : terms_) {
    Box nb;
    std::vector<Rational> ph;
    long lv = 0;
    bool vanishes = false;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (drop[j]) {
        if (t.phase[j] != 0) vanishes = true;  // nontrivial character on the fiber box
        lv += t.box.level[j];
      } else {
        nb.center.push_back(t.box.center[j]);
        nb.level.push_back(t.box.level[j]);
        ph.push_back(t.phase[j]);
      }
    }
    if (vanishes) continue;
    r.add_term(std::move(nb), std::move(ph), t.coeff * CycScalar(p_pow_q(p_, -lv)));
  }
  return r;
}

StepFunction StepFunction::tensor(const StepFunction& o) const {
  if (o.p_ != p_) throw std::invalid_argument("tensor: prime mismatch");
  StepFunction r(dim_ + o.dim_, p_);
  for (const auto& s : terms_)
    for (const auto& t : o.terms_) {
      Term nt{s.box, s.phase, s.coeff * t.coeff};
      nt.box.center.insert(nt.box.center.end(), t.box.center.begin(), t.box.center.end());
      nt.box.level.insert(nt.box.level.end(), t.box.level.begin(), t.box.level.end());
      nt.phase.insert(nt.phase.end(), t.phase.begin(), t.phase.end());
      r.terms_.push_back(std::move(nt));
    }
  return r;
}

StepFunction StepFunction::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != dim_) throw std::invalid_argument("permuted: size mismatch");
  StepFunction r(dim_, p_);
  for (const auto& t : terms_) {
    Term nt{Box{std::vector<Rational>(dim_), std::vector<long>(dim_)}, std::vector<Rational>(dim_), t.coeff};
    for (std::size_t i = 0; i < dim_; ++i) {
      nt.box.center[i] = t.box.center[perm[i]];
      nt.box.level[i] = t.box.level[perm[i]];
      nt.phase[i] = t.phase[perm[i]];
    }
    r.terms_.push_back(std::move(nt));
  }
  return r;
}

StepFunction StepFunction::fourier(const QMat& gram) const {
  return fourier(std::vector<bool>(dim_, true), gram);
}

StepFunction StepFunction::fourier(const std::vector<bool>& mask, const QMat& gram) const {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < dim_; ++j)
    if (mask[j]) idx.push_back(j);
  std::size_t s = idx.size();
  if (gram.rows() != s || gram.cols() != s) throw std::invalid_argument("fourier: Gram size mismatch");
  // sigma[a] = column of the nonzero entry in row a
  std::vector<std::size_t> sigma(s);
  std::vector<bool> hit(s, false);
  for (std::size_t a = 0; a < s; ++a) {
    int found = -1;
    for (std::size_t b = 0; b < s; ++b)
      if (gram(a, b) != 0) {
        if (found != -1) throw std::domain_error("fourier: Gram matrix must be monomial");
        found = static_cast<int>(b);
      }
    if (found == -1 || hit[found]) throw std::domain_error("fourier: degenerate Gram matrix");
    hit[found] = true;
    sigma[a] = static_cast<std::size_t>(found);
  }
  // int_{c+L} psi(alpha.y + x^t G y) dy = vol(L) psi((alpha + G^t x).c) 1[alpha + G^t x in L^*]
  StepFunction r(dim_, p_);
  for (const auto& t : terms_) {
    long vol_level = 0;
    Rational shift = 0;
    for (std::size_t j : idx) {
      vol_level += t.box.level[j];
      shift += t.phase[j] * t.box.center[j];
    }
    Box nb = t.box;
    std::vector<Rational> ph = t.phase;
    for (std::size_t a = 0; a < s; ++a) {
      std::size_t src = idx[sigma[a]];
      const Rational& g = gram(a, sigma[a]);
      nb.center[idx[a]] = -t.phase[src] / g;
      nb.level[idx[a]] = -t.box.level[src] - valuation(g, p_);
      ph[idx[a]] = g * t.box.center[src];
    }
    CycScalar c = t.coeff * CycScalar(p_pow_q(p_, -vol_level));
    if (shift != 0) c *= psi_value(shift, p_);
    r.add_term(std::move(nb), std::move(ph), c);
  }
  return r;
}

long StepFunction::support_floor(std::size_t j) const {
  long m = kInfVal;
  for (const auto& t : terms_) {
    const Rational& c = t.box.center[j];
    long v = c == 0 ? t.box.level[j] : std::min(t.box.level[j], valuation(c, p_));
    m = std::min(m, v);
  }
  return m;
}

long StepFunction::constancy_level(std::size_t j) const {
  long m = LONG_MIN;
  for (const auto& t : terms_) {
    long k = t.box.level[j];
    if (t.phase[j] != 0) k = std::max(k, -valuation(t.phase[j], p_));
    m = std::max(m, k);
  }
  return m;
}

}  // namespace orbint
