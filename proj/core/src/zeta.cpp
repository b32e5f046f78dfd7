#include "orbint/zeta.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "orbint/scalar.hpp"

namespace orbint {

ZetaElement::ZetaElement(const CycScalar& c) {
  if (!c.is_zero()) num_[0] = c;
}

ZetaElement ZetaElement::monomial(const CycScalar& c, long k) {
  ZetaElement z;
  if (!c.is_zero()) z.num_[k] = c;
  return z;
}

ZetaElement ZetaElement::geometric_tail(const CycScalar& a, long start, int sign) {
  // sign +1: (a u)^start / (1 - a u)
  // sign -1: (a/u)^start / (1 - a/u) = -a^{start+1} u^{1-start} / (1 - a^{-1} u)
  ZetaElement z;
  CycScalar ap(1);
  long n = start >= 0 ? start : -start;
  CycScalar base = start >= 0 ? a : a.inverse();
  for (long i = 0; i < n; ++i) ap *= base;
  if (sign > 0) {
    z.num_[start] = ap;
    z.den_.push_back(a);
  } else {
    z.num_[1 - start] = -(ap * a);
    z.den_.push_back(a.inverse());
  }
  z.trim();
  return z;
}

namespace {

using Laurent = std::map<long, CycScalar>;

Laurent times_linear(const Laurent& n, const CycScalar& a) {  // n * (1 - a u)
  Laurent r = n;
  for (const auto& [k, c] : n) r[k + 1] -= a * c;
  return r;
}

// Divide by (1 - a u) if exact.
bool divide_linear(const Laurent& n, const CycScalar& a, Laurent& q) {
  q.clear();
  if (n.empty()) return true;
  long lo = n.begin()->first, hi = n.rbegin()->first;
  CycScalar prev(0);
  for (long i = lo; i < hi; ++i) {
    auto it = n.find(i);
    CycScalar cur = (it == n.end() ? CycScalar(0) : it->second) + a * prev;
    if (!cur.is_zero()) q[i] = cur;
    prev = cur;
  }
  CycScalar last = n.at(hi) + a * prev;
  if (!last.is_zero()) {
    q.clear();
    return false;
  }
  return true;
}

void drop_zeros(Laurent& n) {
  for (auto it = n.begin(); it != n.end();)
    it = it->second.is_zero() ? n.erase(it) : std::next(it);
}

}  // namespace

void ZetaElement::trim() {
  drop_zeros(num_);
  if (num_.empty()) {
    den_.clear();
    return;
  }
  for (std::size_t i = 0; i < den_.size();) {
    Laurent q;
    if (divide_linear(num_, den_[i], q)) {
      num_ = std::move(q);
      den_.erase(den_.begin() + static_cast<long>(i));
      if (num_.empty()) {
        den_.clear();
        return;
      }
    } else {
      ++i;
    }
  }
}

ZetaElement ZetaElement::operator+(const ZetaElement& o) const {
  // common denominator: multiset union (max multiplicity)
  std::vector<CycScalar> mine = den_, theirs = o.den_, common;
  Laurent a = num_, b = o.num_;
  std::vector<bool> used(theirs.size(), false);
  for (const auto& r : mine) {
    bool found = false;
    for (std::size_t j = 0; j < theirs.size(); ++j)
      if (!used[j] && theirs[j] == r) {
        used[j] = true;
        found = true;
        break;
      }
    common.push_back(r);
    if (!found) b = times_linear(b, r);
  }
  for (std::size_t j = 0; j < theirs.size(); ++j)
    if (!used[j]) {
      common.push_back(theirs[j]);
      a = times_linear(a, theirs[j]);
    }
  ZetaElement z;
  z.num_ = a;
  for (const auto& [k, c] : b) z.num_[k] += c;
  z.den_ = common;
  z.trim();
  return z;
}

ZetaElement ZetaElement::operator-(const ZetaElement& o) const { return *this + o.scaled(CycScalar(-1)); }

ZetaElement ZetaElement::operator*(const ZetaElement& o) const {
  ZetaElement z;
  for (const auto& [i, a] : num_)
    for (const auto& [j, b] : o.num_) z.num_[i + j] += a * b;
  z.den_ = den_;
  z.den_.insert(z.den_.end(), o.den_.begin(), o.den_.end());
  z.trim();
  return z;
}

ZetaElement ZetaElement::scaled(const CycScalar& c) const {
  ZetaElement z = *this;
  for (auto& [k, v] : z.num_) v *= c;
  z.trim();
  return z;
}

bool ZetaElement::operator==(const ZetaElement& o) const { return (*this - o).is_zero(); }

bool ZetaElement::is_zero() const {
  for (const auto& [k, c] : num_)
    if (!c.is_zero()) return false;
  return true;
}

int ZetaElement::pole_order_at_one() const {
  int n = 0;
  for (const auto& a : den_)
    if (a == CycScalar(1)) ++n;
  return n;
}

CycScalar ZetaElement::at_one() const {
  if (pole_order_at_one() > 0) throw std::domain_error("ZetaElement: pole at s = 0");
  return at(CycScalar(1));
}

CycScalar ZetaElement::at(const CycScalar& x) const {
  CycScalar n(0), d(1);
  CycScalar xi = x.inverse();
  for (const auto& [k, c] : num_) {
    CycScalar pw(1);
    const CycScalar& b = k >= 0 ? x : xi;
    for (long i = 0; i < (k >= 0 ? k : -k); ++i) pw *= b;
    n += c * pw;
  }
  for (const auto& a : den_) d *= CycScalar(1) - a * x;
  if (d.is_zero()) throw std::domain_error("ZetaElement: evaluation at a pole");
  return n / d;
}

std::string ZetaElement::to_string() const {
  std::ostringstream os;
  if (num_.empty()) return "0";
  os << "(";
  bool first = true;
  for (const auto& [k, c] : num_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.to_string() << "]u^" << k;
  }
  os << ")";
  for (const auto& a : den_) os << " / (1 - [" << a.to_string() << "]u)";
  return os.str();
}

// ---------------------------------------------------------------------------

long unit_count(const QuadFactor& f, long m) { return static_cast<long>(unit_reps(f, m).size()); }

const std::vector<QuadFactor::Elem>& unit_reps(const QuadFactor& f, long m) {
  if (m < 1) throw std::invalid_argument("unit_reps: level must be >= 1");
  static std::mutex mu;
  static std::map<std::string, std::vector<QuadFactor::Elem>> cache;
  long p = f.p();
  std::string key = f.poly().to_string() + "|" + std::to_string(p) + "|" + std::to_string(m);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<QuadFactor::Elem> out;
  if (f.degree() == 1) {
    long n = p_pow(p, m).get_si();
    for (long c = 0; c < n; ++c)
      if (c % p) out.push_back({Rational(c), Rational(0)});
  } else {
    long n0, n1;
    if (f.e() == 1) {
      n0 = n1 = p_pow(p, m).get_si();
    } else {
      n0 = p_pow(p, (m + 1) / 2).get_si();
      n1 = p_pow(p, m / 2).get_si();
    }
    for (long c0 = 0; c0 < n0; ++c0)
      for (long c1 = 0; c1 < n1; ++c1) {
        bool unit = f.e() == 1 ? (c0 % p != 0 || c1 % p != 0) : (c0 % p != 0);
        if (unit) out.push_back(f.from_integral(Rational(c0), Rational(c1)));
      }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

QuadFactor::Elem uniformizer_power(const QuadFactor& f, long w) {
  QuadFactor::Elem pi = f.uniformizer();
  if (w < 0) pi = f.inv(pi);
  QuadFactor::Elem r{Rational(1), Rational(0)};
  for (long i = 0; i < (w < 0 ? -w : w); ++i) r = f.mul(r, pi);
  return r;
}

namespace {

long coord_floor(const Rational& c, long k, long p) { return c == 0 ? k : std::min(k, valuation(c, p)); }

// exponents (a0, a1) with pi^w O_i = p^{a0} Z_p + p^{a1} Z_p eta'
std::pair<long, long> shell_lattice(const QuadFactor& f, long w) {
  if (f.degree() == 1 || f.e() == 1) return {w, w};
  long hi = (w >= 0) ? (w + 1) / 2 : -((-w) / 2);  // ceil(w/2)
  long lo = (w >= 0) ? w / 2 : -((-w + 1) / 2);    // floor(w/2)
  return {hi, lo};
}

}  // namespace

long box_val_floor(const QuadFactor& f, const Box& b, std::size_t off) {
  long p = f.p();
  long m0 = coord_floor(b.center[off], b.level[off], p);
  if (f.degree() == 1) return m0;
  long m1 = coord_floor(b.center[off + 1], b.level[off + 1], p);
  if (f.e() == 1) return std::min(m0, m1);
  return std::min(2 * m0, 2 * m1 + 1);
}

FactorSlice FactorSlice::from_term(const Term& t, std::size_t off, std::size_t n) {
  FactorSlice s;
  for (std::size_t j = 0; j < n; ++j) {
    s.box.center.push_back(t.box.center[off + j]);
    s.box.level.push_back(t.box.level[off + j]);
    s.phase.push_back(t.phase[off + j]);
  }
  return s;
}

std::string FactorSlice::key() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < box.dim(); ++j)
    os << box.center[j].get_str() << '@' << box.level[j] << '~' << phase[j].get_str() << ';';
  return os.str();
}

bool FactorSlice::absorbed(const QuadFactor& f, long w) const {
  auto [a0, a1] = shell_lattice(f, w);
  long ex[2] = {a0, a1};
  for (std::size_t j = 0; j < box.dim(); ++j) {
    if (ex[j] < box.level[j]) return false;
    if (phase[j] != 0 && valuation(phase[j], f.p()) + ex[j] < 0) return false;
  }
  return true;
}

bool FactorSlice::has_zero(long p) const {
  for (std::size_t j = 0; j < box.dim(); ++j)
    if (!in_pk(box.center[j], p, box.level[j])) return false;
  return true;
}

long FactorSlice::val_floor(const QuadFactor& f) const { return box_val_floor(f, box, 0); }

long FactorSlice::val_end(const QuadFactor& f) const {
  long w_end = LONG_MAX;
  for (std::size_t j = 0; j < box.dim(); ++j) {
    if (box.center[j] == 0) continue;  // reduced center 0: this coordinate's ball contains 0
    long v = valuation(box.center[j], f.p());
    long vi = (f.degree() == 1 || f.e() == 1) ? v : 2 * v + static_cast<long>(j);
    w_end = std::min(w_end, vi + 1);
  }
  return w_end;
}

long FactorSlice::zero_radius(const QuadFactor& f) const {
  if (!has_zero(f.p())) return val_end(f);
  long w = val_floor(f);
  while (!absorbed(f, w)) ++w;
  return w;
}

long FactorSlice::unit_level(const QuadFactor& f, long w) const {
  long m = 1;
  while (!absorbed(f, w + m)) ++m;
  return m;
}

CycScalar FactorSlice::value(const QuadFactor& f, const QuadFactor::Elem& t) const {
  auto c = f.to_integral(t);
  std::vector<Rational> x{c.first};
  if (f.degree() == 2) x.push_back(c.second);
  if (!box.contains(x, f.p())) return CycScalar(0);
  Rational ph = 0;
  for (std::size_t j = 0; j < x.size(); ++j) ph += phase[j] * x[j];
  return psi_value(ph, f.p());
}

CycScalar shell_integral(const QuadFactor& f, const FactorSlice& s, long w, bool with_chi, const LocalFieldSpec& spec) {
  // pi^w O_i^x is the union of the cells pi^w r + pi^{w+1} O_i over residues r;
  // chi is constant on each cell, so each piece is an additive box integral.
  long p = spec.p();
  std::size_t n = static_cast<std::size_t>(f.degree());
  StepFunction g(n, p);
  g.add_term(s.box, s.phase, CycScalar(1));
  auto [a0, a1] = shell_lattice(f, w + 1);
  std::vector<long> level{a0};
  if (n == 2) level.push_back(a1);
  long total_level = n == 2 ? a0 + a1 : a0;
  const auto& reps = unit_reps(f, 1);
  QuadFactor::Elem pw = uniformizer_power(f, w);
  CycScalar total(0);
  for (const auto& r : reps) {
    QuadFactor::Elem t = f.mul(pw, r);
    auto c = f.to_integral(t);
    Box cell;
    cell.center.push_back(c.first);
    if (n == 2) cell.center.push_back(c.second);
    cell.level = level;
    CycScalar v = (g * StepFunction::box(cell, p)).integrate();
    if (v.is_zero()) continue;
    total += (with_chi && chi_factor(f, t, spec) < 0) ? -v : v;
  }
  return total * CycScalar(p_pow_q(p, total_level) / Rational(static_cast<long>(reps.size())));
}

bool chi_trivial_on_units(const QuadFactor& f, const LocalFieldSpec& spec) {
  for (const auto& u : unit_reps(f, 1))
    if (chi_factor(f, u, spec) != 1) return false;
  return true;
}

namespace {

ZetaElement slice_zeta(const QuadFactor& f, const FactorSlice& s, bool with_chi, int sign, const LocalFieldSpec& spec) {
  long w_lo = s.val_floor(f);
  bool has_zero = s.has_zero(spec.p());
  long w_end = s.zero_radius(f);  // exclusive end of the enumerated range
  ZetaElement z;
  for (long w = w_lo; w < w_end; ++w) {
    CycScalar val = shell_integral(f, s, w, with_chi, spec);
    if (!val.is_zero()) z = z + ZetaElement::monomial(val, sign * w);
  }
  if (has_zero && (!with_chi || chi_trivial_on_units(f, spec))) {
    // tail: whole shells pi^w O_i^x with psi trivial
    int cpi = with_chi ? chi_factor(f, f.uniformizer(), spec) : 1;
    z = z + ZetaElement::geometric_tail(CycScalar(cpi), w_end, sign);
  }
  return z;
}

}  // namespace

ZetaElement mult_zeta(const StepFunction& fn, const std::vector<ZetaFactor>& layout, const LocalFieldSpec& spec) {
  std::vector<std::size_t> off;
  std::size_t d = 0;
  for (const auto& zf : layout) {
    off.push_back(d);
    d += static_cast<std::size_t>(zf.f.degree());
  }
  if (d != fn.dim()) throw std::invalid_argument("mult_zeta: layout dimension mismatch");
  std::vector<std::map<std::string, ZetaElement>> cache(layout.size());
  ZetaElement total;
  for (const auto& t : fn.terms()) {
    ZetaElement prod(t.coeff);
    for (std::size_t i = 0; i < layout.size() && !prod.is_zero(); ++i) {
      FactorSlice s = FactorSlice::from_term(t, off[i], static_cast<std::size_t>(layout[i].f.degree()));
      std::string key = s.key();
      auto it = cache[i].find(key);
      if (it == cache[i].end())
        it = cache[i].emplace(key, slice_zeta(layout[i].f, s, layout[i].with_chi, layout[i].sign, spec)).first;
      prod = prod * it->second;
    }
    total = total + prod;
  }
  return total;
}

}  // namespace orbint
