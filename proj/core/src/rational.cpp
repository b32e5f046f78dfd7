#include "orbint/rational.hpp"

#include <stdexcept>

namespace orbint {

long valuation(const Integer& x, long p) {
  if (x == 0) return kInfVal;
  Integer t = x;
  Integer pp = p;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rational& x, long p) {
  if (x == 0) return kInfVal;
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational rpow(const Rational& base, long e) {
  if (e >= 0) {
    Rational r(ipow(base.get_num(), e), ipow(base.get_den(), e));
    r.canonicalize();
    return r;
  }
  if (base == 0) throw std::domain_error("rpow: zero to a negative power");
  Rational r(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
  r.canonicalize();
  return r;
}

Integer p_pow(long p, long k) {
  if (k < 0) throw std::invalid_argument("p_pow: negative exponent");
  return ipow(Integer(p), static_cast<unsigned long>(k));
}

Rational p_pow_q(long p, long k) {
  if (k >= 0) return Rational(p_pow(p, k));
  return Rational(Integer(1), p_pow(p, -k));
}

Rational modrep(const Rational& x, long p, long k) {
  if (x == 0) return Rational(0);
  long vd = valuation(x.get_den(), p);
  Integer pe = p_pow(p, vd);
  Integer bprime = x.get_den() / pe;  // p-adic unit part of the denominator
  long top = k + vd;
  if (top <= 0) return Rational(0);
  Integer mod = p_pow(p, top);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), bprime.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::domain_error("modrep: denominator not a p-adic unit");
  Integer m = (x.get_num() * inv) % mod;
  if (m < 0) m += mod;
  Rational r(m, pe);
  r.canonicalize();
  return r;
}

bool in_pk(const Rational& x, long p, long k) {
  return x == 0 || valuation(x, p) >= k;
}

long unit_residue(const Rational& x, long p) {
  if (x == 0) throw std::domain_error("unit_residue of zero");
  long v = valuation(x, p);
  Rational u = x / p_pow_q(p, v);
  Rational r = modrep(u, p, 1);
  return r.get_num().get_si();
}

long legendre(const Integer& a, long p) {
  Integer pp = p;
  return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long mod_inverse(long a, long m) {
  a %= m;
  if (a < 0) a += m;
  for (long t = 1; t < m; ++t)
    if ((a * t) % m == 1) return t;
  throw std::domain_error("mod_inverse: not invertible");
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::vector<Rational> parse_rationals(const std::vector<std::string>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

}  // namespace orbint
