#include "orbint/scalar.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace orbint {

std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::One: return "1";
    case SquareClass::U: return "u";
    case SquareClass::P: return "p";
    case SquareClass::UP: return "up";
  }
  return "?";
}

long smallest_nonresidue(long p) {
  for (long a = 2; a < p; ++a)
    if (legendre(Integer(a), p) == -1) return a;
  throw std::invalid_argument("no nonresidue");
}

LocalFieldSpec::LocalFieldSpec(long p, const Rational& tau) : p_(p) {
  if (p <= 2 || !is_prime(p)) throw std::invalid_argument("LocalFieldSpec: p must be an odd prime");
  if (tau == 0) throw std::invalid_argument("LocalFieldSpec: tau must be nonzero");
  long v = valuation(tau, p);
  long shift = v >= 0 ? (v / 2) * 2 : -(((-v) + 1) / 2) * 2;
  tau_ = tau / p_pow_q(p, shift);
  if (is_square(tau_, p)) throw std::invalid_argument("LocalFieldSpec: tau is a square in Q_p");
  ramified_ = valuation(tau_, p) % 2 != 0;
  u_ = smallest_nonresidue(p);
}

SquareClass square_class(const Rational& x, long p) {
  if (x == 0) throw std::invalid_argument("square_class of zero");
  long v = valuation(x, p);
  long r = unit_residue(x, p);
  bool nonres = legendre(Integer(r), p) == -1;
  bool odd = (v % 2) != 0;
  if (!odd) return nonres ? SquareClass::U : SquareClass::One;
  return nonres ? SquareClass::UP : SquareClass::P;
}

Rational class_representative(SquareClass c, long p) {
  long u = smallest_nonresidue(p);
  switch (c) {
    case SquareClass::One: return Rational(1);
    case SquareClass::U: return Rational(u);
    case SquareClass::P: return Rational(p);
    case SquareClass::UP: return Rational(u * p);
  }
  return Rational(1);
}

bool is_square(const Rational& x, long p) { return x != 0 && square_class(x, p) == SquareClass::One; }

int hilbert_symbol(const Rational& a, const Rational& b, long p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
  long al = valuation(a, p), be = valuation(b, p);
  long ua = unit_residue(a, p), ub = unit_residue(b, p);
  int s = 1;
  if ((al % 2 != 0) && (be % 2 != 0) && ((p - 1) / 2) % 2 != 0) s = -s;
  if (be % 2 != 0) s *= static_cast<int>(legendre(Integer(ua), p));
  if (al % 2 != 0) s *= static_cast<int>(legendre(Integer(ub), p));
  return s;
}

int chi(const Rational& x, const LocalFieldSpec& s) {
  if (x == 0) return 0;
  return hilbert_symbol(x, s.tau(), s.p());
}

CycScalar psi_value(const Rational& x, long p) {
  if (x == 0) return CycScalar(1);
  long v = valuation(x, p);
  if (v >= 0) return CycScalar(1);
  long k = -v;
  Rational r = modrep(x, p, 0) * Rational(p_pow(p, k));
  long m = p_pow(p, k).get_si();
  return CycScalar::root_of_unity(m, r.get_num().get_si());
}

CycScalar sqrt_p(long p) {
  static std::mutex mu;
  static std::map<long, CycScalar> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
  }
  std::vector<Rational> b(p, Rational(0));
  for (long t = 1; t < p; ++t) b[t] = Rational(legendre(Integer(t), p));
  CycScalar g = CycScalar::from_buckets(p, b);  // g^2 = (-1/p) p
  CycScalar r = g;
  if (p % 4 == 3) r = -CycScalar::root_of_unity(4, 1) * g;
  std::lock_guard<std::mutex> lock(mu);
  cache[p] = r;
  return r;
}

Rational abs_p(const Rational& x, long p) {
  if (x == 0) return Rational(0);
  return p_pow_q(p, -valuation(x, p));
}

}  // namespace orbint
