#include "orbint/harness.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <stdexcept>

#include "orbint/integrals.hpp"
#include "orbint/json_io.hpp"
#include "orbint/polynomial.hpp"

namespace orbint {

NormalizationLedger::NormalizationLedger() {
  measures_ = {
      {"additive", "vol(Z_p^n) = 1; psi trivial on Z_p with psi(1/p^k) = exp(2 pi i / p^k); self-dual"},
      {"units", "vol(O_i^x) = 1 on every factor of F[gamma]"},
      {"compact", "vol GL_n(Z_p) = 1, vol U(1) = 1, vol T(Z_p) = 1"},
      {"quotients", "G/T carries dk dn for G = K N T; U(W)/T is a point at n = 1"},
      {"absolute value", "|pi_i|_i = 1/q on every factor"},
  };
}

std::optional<CycScalar> NormalizationLedger::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

bool NormalizationLedger::calibrate(const std::string& name, const CycScalar& c) {
  auto [it, fresh] = constants_.emplace(name, c);
  return fresh || it->second == c;
}

nlohmann::json NormalizationLedger::to_json() const {
  nlohmann::json j;
  j["measures"] = measures_;
  nlohmann::json cs = nlohmann::json::object();
  for (const auto& [k, v] : constants_) cs[k] = orbint::to_json(v);
  j["constants"] = cs;
  return j;
}

NormalizationLedger NormalizationLedger::from_json(const nlohmann::json& j) {
  NormalizationLedger l;
  if (j.contains("constants"))
    for (const auto& [k, v] : j.at("constants").items()) l.constants_[k] = cyc_from_json(v);
  return l;
}

std::string NormalizationLedger::default_path() {
  const char* e = std::getenv("ORBINT_LEDGER");
  return e ? std::string(e) : std::string();
}

void VerificationReport::record(InstanceRecord r) {
  ++instances;
  if (r.pass) {
    ++passed;
    return;
  }
  failures.push_back(std::move(r));
  std::stable_sort(failures.begin(), failures.end(), [](const InstanceRecord& a, const InstanceRecord& b) {
    return a.input.dump().size() < b.input.dump().size();
  });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["identity"] = identity;
  j["instances"] = instances;
  j["passed"] = passed;
  j["nontrivial"] = nontrivial;
  j["ok"] = ok();
  j["seconds"] = seconds;
  if (calibration) j["calibration"] = orbint::to_json(*calibration);
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : failures) fs.push_back({{"label", f.label}, {"detail", f.detail}, {"input", f.input}});
  j["failures"] = fs;
  j["certificates"] = certificates;
  return j;
}

std::vector<LocalFieldSpec> specs_for(long p, const std::optional<Rational>& tau) {
  if (tau) return {LocalFieldSpec(p, *tau)};
  return {LocalFieldSpec(p, Rational(smallest_nonresidue(p))), LocalFieldSpec(p, Rational(p))};
}

long Generator::uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

StepFunction Generator::step_function(std::size_t dim, long p, int terms, long max_level) {
  StepFunction f(dim, p);
  for (int t = 0; t < terms; ++t) {
    Box b;
    std::vector<Rational> ph(dim, Rational(0));
    for (std::size_t j = 0; j < dim; ++j) {
      long l = uniform(-1, max_level);
      b.level.push_back(l);
      b.center.push_back(uniform(0, 3) == 0 ? Rational(uniform(0, 8)) * p_pow_q(p, l - 1) : Rational(0));
      if (uniform(0, 3) == 0) ph[j] = Rational(uniform(0, 8)) * p_pow_q(p, -l - 1);
    }
    long c = uniform(-3, 3);
    f.add_term(b, ph, CycScalar(c == 0 ? 1 : c));
  }
  return f;
}

StepFunction Generator::block_step_function(const std::vector<std::size_t>& blocks, long p, int terms,
                                            long max_level) {
  std::size_t dim = 0;
  for (auto b : blocks) dim += b;
  StepFunction f(dim, p);
  for (int t = 0; t < terms; ++t) {
    Box b;
    for (auto sz : blocks) {
      long l = uniform(0, max_level);
      long m = p_pow(p, l).get_si();
      for (std::size_t j = 0; j < sz; ++j) {
        b.level.push_back(l);
        b.center.push_back(Rational(uniform(0, m - 1)));
      }
    }
    long c = uniform(-3, 3);
    f.add_term(b, CycScalar(c == 0 ? 1 : c));
  }
  return f;
}

QMat Generator::conjugate(const QMat& m) {
  std::size_t n = m.rows();
  for (;;) {
    QMat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = uniform(-2, 2);
    if (g.det() != 0) return g * m * g.inverse();
  }
}

GLTriple Generator::triple(const std::vector<Poly>& factors, const LocalFieldSpec& spec) {
  QMat m;
  for (const auto& f : factors) m = m.rows() ? block_diag(m, companion(f)) : companion(f);
  GLTriple d;
  d.gamma = conjugate(m);
  for (;;) {
    d.v.clear();
    d.vstar.clear();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      d.v.push_back(uniform(-3, 3));
      d.vstar.push_back(uniform(-3, 3));
    }
    if (!is_rss(d)) continue;
    try {
      omega(d, spec);
      return d;
    } catch (const std::exception&) {
    }
  }
}

std::vector<std::vector<int>> factor_mixes(std::size_t max_m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_m) return;
    for (int t = from; t < 3; ++t) {
      cur.push_back(t);
      self(self, t);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Poly> realize_mix(const std::vector<int>& mix, const LocalFieldSpec& spec) {
  long p = spec.p();
  Rational other = spec.ramified() ? Rational(smallest_nonresidue(p)) : Rational(p);
  int used[3] = {0, 0, 0};
  std::vector<Poly> out;
  for (int t : mix) {
    long k = used[t]++;
    if (t == 0) out.push_back(Poly({Rational(-k), Rational(1)}));
    else {
      Rational c = (t == 1 ? spec.tau() : other) * Rational((k + 1) * (k + 1));
      out.push_back(Poly({-c, Rational(0), Rational(1)}));
    }
  }
  return out;
}

CycScalar TransferN1::value(int cls, const Rational& delta, const EVal& w, const Rational& tau) const {
  return inv[cls].evaluate({delta, lambda[cls] * e_norm(w, tau)});
}

CycScalar TransferN1::at_zero(int cls, const Rational& delta) const {
  return inv[cls].evaluate({delta, Rational(0)});
}

namespace {

long min_floor(const StepFunction& f, std::size_t j) { return f.support_floor(j); }

Rational non_norm_rep(const LocalFieldSpec& spec) {
  for (int c = 1; c < 4; ++c) {
    Rational a = class_representative(static_cast<SquareClass>(c), spec.p());
    if (chi(a, spec) == -1) return a;
  }
  throw std::logic_error("no non-norm square class");
}

}  // namespace

TransferN1 construct_jr_transfer_n1(const StepFunction& f, const LocalFieldSpec& spec, std::uint64_t seed) {
  if (f.dim() != 3) throw std::invalid_argument("construct_jr_transfer_n1: f must live on gl_1 x V x V*");
  long p = spec.p();
  TransferN1 tr;
  tr.lambda[0] = 1;
  tr.lambda[1] = non_norm_rep(spec);
  tr.inv[0] = tr.inv[1] = StepFunction(2, p);
  tr.certified = true;
  if (f.terms().empty()) return tr;

  // cells in the gamma coordinate: maximal X-balls cut to the finest relevant level
  long lx = LONG_MIN;
  for (const auto& t : f.terms()) {
    lx = std::max(lx, t.box.level[0]);
    if (t.phase[0] != 0) lx = std::max(lx, -valuation(t.phase[0], p));
  }
  std::vector<std::pair<Rational, long>> balls;
  for (const auto& t : f.terms()) balls.push_back({t.box.center[0], t.box.level[0]});
  auto inside = [&](const std::pair<Rational, long>& a, const std::pair<Rational, long>& b) {
    return a.second >= b.second && in_pk(a.first - b.first, p, b.second);
  };
  std::vector<std::pair<Rational, long>> maximal;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < balls.size() && !dominated; ++j) {
      if (i == j || !inside(balls[i], balls[j])) continue;
      dominated = !inside(balls[j], balls[i]) || j < i;
    }
    if (!dominated) maximal.push_back(balls[i]);
  }

  const EtaleAlgebra a = EtaleAlgebra::from_factors({Poly::x()}, spec);
  Generator gen(seed);
  for (const auto& [c, l] : maximal) {
    long cnt = p_pow(p, lx - l).get_si();
    for (long r = 0; r < cnt; ++r) {
      Rational d0 = c + p_pow_q(p, l) * r;
      StepFunction g = f.restrict_coords({true, false, false}, {d0, 0, 0}).compressed();
      if (g.terms().empty()) continue;
      GermExpansion ge = germ_extract(a, g);
      if (!ge.certified) tr.certified = false;
      long rad = ge.radius;
      long blo = min_floor(g, 0) + min_floor(g, 1);
      long m = std::max<long>(1, g.constancy_level(1) - min_floor(g, 1));
      TorusIntegrator ti(a, g);
      long pm = p_pow(p, m).get_si();
      Box cell{{d0, Rational(0)}, {lx, rad}};
      for (int cls = 0; cls < 2; ++cls) {
        CycScalar deep = ge.c_empty({cls});
        if (!deep.is_zero()) tr.inv[cls].add_term(cell, deep);
      }
      for (long j = blo; j < rad; ++j)
        for (long u = 1; u < pm; ++u) {
          if (u % p == 0) continue;
          Rational b = p_pow_q(p, j) * u;
          int cls = chi(b, spec) == chi(tr.lambda[0], spec) ? 0 : 1;
          CycScalar v = ti(AlgElement(std::vector<QuadFactor::Elem>{{b, Rational(0)}}));
          if (!v.is_zero()) tr.inv[cls].add_term(Box{{d0, b}, {lx, j + m}}, v);
        }
      tr.radius = std::max(tr.radius, rad);

      // local constancy samples: perturb delta inside the cell and b inside its class box
      for (int s = 0; s < 4; ++s) {
        Rational d1 = d0 + p_pow_q(p, lx) * gen.uniform(0, 2 * p);
        StepFunction g1 = f.restrict_coords({true, false, false}, {d1, 0, 0});
        long j = gen.uniform(std::min(blo, rad) - 1, rad + 2);
        long u = gen.uniform(1, pm - 1);
        if (u % p == 0) ++u;
        Rational b = p_pow_q(p, j) * Rational(u) * (1 + p_pow_q(p, m) * gen.uniform(0, 2 * p));
        int cls = chi(b, spec) == chi(tr.lambda[0], spec) ? 0 : 1;
        CycScalar direct = torus_orbit_integral(a, g1, AlgElement(std::vector<QuadFactor::Elem>{{b, Rational(0)}}));
        if (direct != tr.inv[cls].evaluate({d1, b})) tr.certified = false;
        ++tr.checks;
      }
    }
  }
  tr.inv[0] = tr.inv[0].compressed();
  tr.inv[1] = tr.inv[1].compressed();
  return tr;
}

int hilbert_by_search(const Rational& a, const Rational& b, long p) {
  auto normalize = [p](const Rational& x) {
    long e = valuation(x, p);
    Rational u = x / p_pow_q(p, e);
    Integer m = p_pow(p, 3);
    Integer r = (Integer(u.get_num()) * Integer(u.get_den())) % m;
    if (r < 0) r += m;
    return std::pair<long, long>{((e % 2) + 2) % 2, r.get_si()};
  };
  auto [ea, ua] = normalize(a);
  auto [eb, ub] = normalize(b);
  long m = p_pow(p, 3).get_si();
  long A = (ea ? p : 1) * ua % m, B = (eb ? p : 1) * ub % m;
  auto val = [p](long x) {
    if (x == 0) return 3L;
    long v = 0;
    while (x % p == 0 && v < 3) x /= p, ++v;
    return v;
  };
  auto ok = [&](long x, long y, long z) {
    long q = ((z * z - A * x % m * x - B * y % m * y) % m + 2 * m) % m;
    long mv = std::min({val(2 * A * x % m), val(2 * B * y % m), val(2 * z % m)});
    if (mv > 1) return false;
    long need = 2 * mv + 1;  // Q = 0 mod p^{2 mv + 1} lifts
    long pk = 1;
    for (long i = 0; i < need; ++i) pk *= p;
    return q % pk == 0;
  };
  for (long s = 0; s < m; ++s)
    for (long t = 0; t < m; ++t)
      if (ok(1, s, t) || ok(s, 1, t) || ok(s, t, 1)) return 1;
  return -1;
}

}  // namespace orbint
