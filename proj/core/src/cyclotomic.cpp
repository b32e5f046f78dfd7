#include "orbint/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "orbint/linalg.hpp"

namespace orbint {

long euler_phi(long m) {
  long r = m, n = m;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    r -= r / d;
  }
  if (n > 1) r -= r / n;
  return r;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

namespace {

struct Tables {
  long m = 1;
  long phi = 1;
  std::vector<long> cyc;
  // pow_red[j] = sparse reduction of x^j mod Phi_M, j in [0, M)
  std::vector<std::vector<std::pair<int, long>>> pow_red;
};

std::mutex g_mutex;
std::map<long, std::vector<long>> g_cyc;
std::map<long, std::unique_ptr<Tables>> g_tables;

std::vector<long> compute_cyclotomic(long m) {
  // (x^m - 1) / prod_{d | m, d < m} Phi_d
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d) continue;
    std::vector<long> den;
    auto it = g_cyc.find(d);
    if (it == g_cyc.end()) {
      den = compute_cyclotomic(d);
      g_cyc[d] = den;
    } else {
      den = it->second;
    }
    long dn = static_cast<long>(den.size()) - 1;
    long nn = static_cast<long>(num.size()) - 1;
    std::vector<long> q(nn - dn + 1, 0);
    for (long i = nn; i >= dn; --i) {
      long c = num[i];  // den monic
      q[i - dn] = c;
      if (c == 0) continue;
      for (long k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
    }
    num = q;
  }
  return num;
}

const Tables& tables(long m) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = g_tables.find(m);
  if (it != g_tables.end()) return *it->second;
  auto t = std::make_unique<Tables>();
  t->m = m;
  auto cit = g_cyc.find(m);
  if (cit == g_cyc.end()) {
    g_cyc[m] = compute_cyclotomic(m);
    cit = g_cyc.find(m);
  }
  t->cyc = cit->second;
  t->phi = static_cast<long>(t->cyc.size()) - 1;
  long phi = t->phi;
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  t->pow_red.resize(m);
  for (long j = 0; j < m; ++j) {
    auto& sp = t->pow_red[j];
    for (long k = 0; k < phi; ++k)
      if (cur[k] != 0) sp.emplace_back(static_cast<int>(k), cur[k]);
    // multiply by x
    long top = cur[phi - 1];
    for (long k = phi - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (top != 0)
      for (long k = 0; k < phi; ++k) cur[k] -= top * t->cyc[k];
  }
  auto& ref = *t;
  g_tables[m] = std::move(t);
  return ref;
}

long smallest_prime_factor(long n) {
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

}  // namespace

const std::vector<long>& cyclotomic_poly(long m) { return tables(m).cyc; }

CycScalar CycScalar::from_buckets(long m, const std::vector<Rational>& b) {
  if (m == 1) {
    Rational s = 0;
    for (const auto& x : b) s += x;
    return CycScalar(s);
  }
  const Tables& t = tables(m);
  std::vector<Rational> c(t.phi, Rational(0));
  for (long j = 0; j < m && j < static_cast<long>(b.size()); ++j) {
    if (b[j] == 0) continue;
    for (const auto& [k, v] : t.pow_red[j]) c[k] += b[j] * v;
  }
  CycScalar out;
  out.m_ = m;
  out.c_ = std::move(c);
  out.normalize();
  return out;
}

CycScalar CycScalar::from_coords(long m, std::vector<Rational> coords) {
  if (static_cast<long>(coords.size()) != euler_phi(m))
    throw std::invalid_argument("CycScalar: coordinate count must equal phi(M)");
  CycScalar out;
  out.m_ = m;
  out.c_ = std::move(coords);
  out.normalize();
  return out;
}

CycScalar CycScalar::root_of_unity(long m, long j) {
  if (m <= 0) throw std::invalid_argument("root_of_unity: bad order");
  j %= m;
  if (j < 0) j += m;
  std::vector<Rational> b(m, Rational(0));
  b[j] = 1;
  return from_buckets(m, b);
}

void CycScalar::normalize() {
  bool changed = true;
  while (changed && m_ > 1) {
    changed = false;
    bool rational = true;
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) {
        rational = false;
        break;
      }
    if (rational) {
      c_.resize(1);
      m_ = 1;
      return;
    }
    if (m_ % 4 == 2) {
      // Q(zeta_{2n}) = Q(zeta_n) for odd n, with zeta_{2n} = -zeta_n^{(n+1)/2}
      long n = m_ / 2;
      std::vector<Rational> b(n, Rational(0));
      long h = (n + 1) / 2;
      for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        long e = (static_cast<long>(k) * h) % n;
        if (k % 2) b[e] -= c_[k];
        else b[e] += c_[k];
      }
      *this = from_buckets(n, b);
      return;
    }
    // descend by a prime l with l^2 | M when only multiples of l carry weight
    long n = m_;
    while (n > 1) {
      long l = smallest_prime_factor(n);
      while (n % l == 0) n /= l;
      if (m_ % (l * l) != 0) continue;
      bool ok = true;
      for (std::size_t k = 0; k < c_.size(); ++k)
        if (k % l != 0 && c_[k] != 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::vector<Rational> nc;
      for (std::size_t k = 0; k < c_.size(); k += l) nc.push_back(c_[k]);
      m_ /= l;
      c_ = std::move(nc);
      changed = true;
      break;
    }
  }
  if (m_ == 1 && c_.empty()) c_.push_back(Rational(0));
}

bool CycScalar::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

const Rational& CycScalar::rational_value() const {
  if (m_ != 1) throw std::domain_error("CycScalar is not rational");
  return c_[0];
}

std::vector<Rational> CycScalar::buckets(long m) const {
  if (m % m_ != 0) throw std::invalid_argument("CycScalar: bad lift conductor");
  std::vector<Rational> b(m, Rational(0));
  long step = m / m_;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) b[(static_cast<long>(k) * step) % m] += c_[k];
  return b;
}

CycScalar CycScalar::lifted(long m) const {
  if (m == m_) return *this;
  const Tables& t = tables(m);
  std::vector<Rational> c(t.phi, Rational(0));
  long step = m / m_;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    for (const auto& [i, v] : t.pow_red[(static_cast<long>(k) * step) % m]) c[i] += c_[k] * v;
  }
  CycScalar out;
  out.m_ = m;
  out.c_ = std::move(c);
  return out;  // deliberately not normalized
}

CycScalar CycScalar::operator-() const {
  CycScalar o = *this;
  for (auto& x : o.c_) x = -x;
  return o;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  if (o.m_ == 1) {
    c_[0] += o.c_[0];
    if (m_ > 1) normalize();
    return *this;
  }
  if (m_ == o.m_) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
  }
  long l = lcm_long(m_, o.m_);
  CycScalar a = lifted(l);
  CycScalar b = o.lifted(l);
  for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
  a.normalize();
  *this = std::move(a);
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  if (o.m_ == 1) {
    for (auto& x : c_) x *= o.c_[0];
    if (o.c_[0] == 0) {
      m_ = 1;
      c_.assign(1, Rational(0));
    }
    return *this;
  }
  if (m_ == 1) {
    Rational s = c_[0];
    *this = o;
    for (auto& x : c_) x *= s;
    if (s == 0) {
      m_ = 1;
      c_.assign(1, Rational(0));
    }
    return *this;
  }
  long l = lcm_long(m_, o.m_);
  long sa = l / m_, sb = l / o.m_;
  std::vector<Rational> b(l, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long ei = static_cast<long>(i) * sa;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      b[(ei + static_cast<long>(j) * sb) % l] += c_[i] * o.c_[j];
    }
  }
  *this = from_buckets(l, b);
  return *this;
}

bool CycScalar::operator==(const CycScalar& o) const {
  if (m_ == o.m_) {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != o.c_[k]) return false;
    return true;
  }
  long l = lcm_long(m_, o.m_);
  CycScalar a = lifted(l), b = o.lifted(l);
  return a.c_ == b.c_;
}

CycScalar CycScalar::conj() const {
  if (m_ == 1) return *this;
  std::vector<Rational> b(m_, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) b[(m_ - static_cast<long>(k)) % m_] += c_[k];
  return from_buckets(m_, b);
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw std::domain_error("CycScalar: division by zero");
  if (m_ == 1) return CycScalar(Rational(1) / c_[0]);
  int nz = 0;
  std::size_t at = 0;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) {
      ++nz;
      at = k;
    }
  if (nz == 1) {
    std::vector<Rational> b(m_, Rational(0));
    b[(m_ - static_cast<long>(at)) % m_] = Rational(1) / c_[at];
    return from_buckets(m_, b);
  }
  // Solve (multiplication by this) * y = e_0.
  long phi = static_cast<long>(c_.size());
  QMat a(phi, phi);
  for (long j = 0; j < phi; ++j) {
    CycScalar col = *this * root_of_unity(m_, j);
    CycScalar lc = col.lifted(m_);
    for (long i = 0; i < phi; ++i) a(i, j) = lc.c_[i];
  }
  QVec e(phi, Rational(0));
  e[0] = 1;
  QVec y = solve(a, e);
  return from_coords(m_, y);
}

std::complex<double> CycScalar::to_complex() const {
  std::complex<double> s = 0;
  const double two_pi = 6.283185307179586476925;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    double ang = two_pi * static_cast<double>(k) / static_cast<double>(m_);
    s += c_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string CycScalar::to_string() const {
  if (m_ == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].get_str() << ")";
    if (k > 0) os << "*z" << m_ << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace orbint
