#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "orbint/cohomology.hpp"
#include "orbint/descent.hpp"
#include "orbint/harness.hpp"
#include "orbint/integrals.hpp"
#include "orbint/json_io.hpp"
#include "orbint/orbits.hpp"
#include "orbint/zeta.hpp"

using namespace orbint;
using nlohmann::json;

namespace {

struct Globals {
  std::vector<long> primes;
  std::string tau;
  std::uint64_t seed = 1;
  long instances = 0;
  long max_level = 2;
  std::string ledger;
  std::string out;
};

SuiteOptions options(const Globals& g, std::vector<long> dflt = {3, 5}) {
  SuiteOptions o;
  o.primes = g.primes.empty() ? dflt : g.primes;
  if (!g.tau.empty()) o.tau = parse_rational(g.tau);
  o.seed = g.seed;
  o.instances = g.instances;
  o.max_level = g.max_level;
  return o;
}

long single_prime(const Globals& g) { return g.primes.empty() ? 3 : g.primes.front(); }

LocalFieldSpec single_spec(const Globals& g) {
  long p = single_prime(g);
  return LocalFieldSpec(p, g.tau.empty() ? Rational(smallest_nonresidue(p)) : parse_rational(g.tau));
}

json read_json(const std::string& arg) {
  // a path, or the JSON text itself
  std::ifstream in(arg);
  if (in) return json::parse(in);
  return json::parse(arg);
}

void emit(const Globals& g, const json& j) {
  if (!g.out.empty()) std::ofstream(g.out) << j.dump(1) << "\n";
}

NormalizationLedger load_ledger(const Globals& g) {
  std::string path = g.ledger.empty() ? NormalizationLedger::default_path() : g.ledger;
  if (!path.empty()) {
    std::ifstream in(path);
    if (in) return NormalizationLedger::from_json(json::parse(in));
  }
  return NormalizationLedger();
}

void save_ledger(const Globals& g, const NormalizationLedger& l) {
  std::string path = g.ledger.empty() ? NormalizationLedger::default_path() : g.ledger;
  if (!path.empty()) std::ofstream(path) << l.to_json().dump(1) << "\n";
}

int finish(const Globals& g, const VerificationReport& r) {
  std::printf("%s: %ld/%ld passed, %ld nontrivial, %.2fs", r.identity.c_str(), r.passed, r.instances, r.nontrivial,
              r.seconds);
  if (r.calibration) std::printf(", constant %s", r.calibration->to_string().c_str());
  std::printf("\n");
  for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i)
    std::printf("  fail %s: %s\n", r.failures[i].label.c_str(), r.failures[i].detail.c_str());
  json j = r.to_json();
  j["options"] = {{"seed", g.seed}, {"instances", g.instances}, {"max_level", g.max_level}, {"tau", g.tau}};
  emit(g, j);
  return r.ok() ? 0 : 1;
}

LocalFieldSpec spec_from(const json& j) {
  return LocalFieldSpec(j.at("p").get<long>(), rational_from_json(j.at("tau")));
}

// Recompute one serialized instance; true when it now passes.
bool replay_one(const std::string& identity, const json& in, const NormalizationLedger& ledger) {
  LocalFieldSpec spec = spec_from(in.at("spec"));
  if (identity == "torus germ expansion") {
    EtaleAlgebra a = EtaleAlgebra::from_factors(realize_mix(in.at("mix").get<std::vector<int>>(), spec), spec);
    StepFunction f = step_function_from_json(in.at("f"));
    GermExpansion g = germ_extract(a, f);
    std::printf("certified %d radius %ld\n", g.certified, g.radius);
    if (!g.certified) return false;
    TorusIntegrator ti(a, f);
    for (const auto& eps : germ_grid(a, g.radius, 3))
      if (ti(eps) != g.predict(a, eps)) return false;
    return true;
  }
  if (identity == "parabolic descent") {
    StepFunction f = step_function_from_json(in.at("f"));
    GLTriple d = triple_from_json(in.at("triple"));
    CycScalar lhs = nilpotent_orbit_integral_gl(f, d, spec);
    CycScalar rhs = levi_nilpotent_orbit_integral(parabolic_descent(f, spec), d, spec) *
                    CycScalar(p_pow_q(spec.p(), valuation(d.gamma(0, 0) - d.gamma(1, 1), spec.p())));
    std::printf("Orb %s, |D|^-1 Orb(f^P) %s\n", lhs.to_string().c_str(), rhs.to_string().c_str());
    return lhs == rhs;
  }
  if (identity == "descent commutes with Fourier") {
    StepFunction f = step_function_from_json(in.at("f"));
    return parabolic_descent(fourier_gl2(f), spec).equals(fourier_levi(parabolic_descent(f, spec)));
  }
  if (identity == "nilpotent orbit identity, rank one") {
    StepFunction f = step_function_from_json(in.at("f"));
    GLTriple d = triple_from_json(in.at("triple"));
    TransferN1 tr = construct_jr_transfer_n1(f, spec);
    auto c = ledger.constant("nilpotent-identity/n=1");
    bool ok = tr.certified;
    for (int lam = 0; lam < 2; ++lam) {
      GLTriple nd{d.gamma, {lam ? d.v[0] : Rational(0)}, {lam ? Rational(0) : d.vstar[0]}};
      CycScalar lhs = CycScalar(omega(d, spec)) * nilpotent_orbit_integral_gl(f, nd, spec);
      CycScalar rhs(0);
      for (const auto& e : delta_x_family(d, spec))
        rhs += CycScalar(pairing({lam == 1}, e.bits)) * tr.at_zero(e.orbit.class_bit, d.gamma(0, 0));
      std::printf("Lambda %s: left %s right %s\n", lam ? "S1" : "empty", lhs.to_string().c_str(),
                  rhs.to_string().c_str());
      if (c) ok = ok && rhs == lhs * *c;
    }
    return ok;
  }
  if (identity == "fundamental lemma, rank one") {
    GLTriple d = triple_from_json(in.at("triple"));
    int cls = in.at("class").get<int>();
    EVal w = eval_from_json(in.at("w"));
    StepFunction one = StepFunction::lattice(3, spec.p(), 0);
    CycScalar go = CycScalar(omega(d, spec)) * gl_orbit_integral(one, d, spec);
    CycScalar uo = cls == 0 ? unitary_orbit_integral(one, d.gamma(0, 0), w, spec) : CycScalar(0);
    std::printf("GL %s unitary %s\n", go.to_string().c_str(), uo.to_string().c_str());
    return go == uo;
  }
  throw std::invalid_argument("replay: no replay for identity '" + identity + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbit integral identities over p-adic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--p", g.primes, "prime(s)")->delimiter(',');
  app.add_option("--tau", g.tau, "E = F(sqrt(tau)); both extensions when omitted");
  app.add_option("--seed", g.seed);
  app.add_option("--instances", g.instances, "per-suite instance count (0: suite default)");
  app.add_option("--max-level", g.max_level);
  app.add_option("--ledger", g.ledger, "normalization ledger JSON (default: $ORBINT_LEDGER)");
  app.add_option("--out", g.out, "write the report as JSON");

  int rc = 0;
  auto* germ = app.add_subcommand("germ-verify", "torus germ expansion");
  germ->callback([&] { rc = finish(g, verify_torus_germ(options(g))); });

  auto* m1 = app.add_subcommand("m1-closed-forms", "rank-one closed forms");
  m1->callback([&] { rc = finish(g, verify_m1_closed_forms(options(g))); });

  auto* four = app.add_subcommand("fourier", "Fourier involution");
  four->callback([&] { rc = finish(g, verify_fourier_involution(options(g, {3}))); });

  auto* nil = app.add_subcommand("nilpotent-identity", "nilpotent identity, rank one");
  nil->callback([&] {
    NormalizationLedger l = load_ledger(g);
    rc = finish(g, verify_nilpotent_identity(options(g), l));
    save_ledger(g, l);
  });

  auto* desc = app.add_subcommand("descent-verify", "parabolic descent at n = 2");
  desc->callback([&] { rc = finish(g, verify_descent(options(g, {3}))); });

  auto* df = app.add_subcommand("descent-fourier", "descent commutes with Fourier");
  df->callback([&] { rc = finish(g, verify_descent_fourier(options(g, {3}))); });

  int fl_n = 1;
  auto* fl = app.add_subcommand("fl-check", "fundamental lemma");
  fl->add_option("--n", fl_n)->check(CLI::IsMember({1}));
  fl->callback([&] {
    SuiteOptions o = options(g);
    rc = finish(g, verify_fl_n1(o));
  });

  auto* weil = app.add_subcommand("weil-sign", "Weil index relations and the sign identity");
  weil->callback([&] { rc = finish(g, verify_weil(options(g, {3, 5, 7}))); });

  auto* tf = app.add_subcommand("transfer-factor", "block factorization of omega");
  tf->callback([&] { rc = finish(g, verify_transfer_factor_algebra(options(g))); });

  auto* coh = app.add_subcommand("cohomology", "norm-class torsor and kappa pullback");
  coh->callback([&] { rc = finish(g, verify_cohomology(options(g))); });

  std::string ha, hb;
  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (a, b); the oracle suite when a, b are omitted");
  hil->add_option("a", ha);
  hil->add_option("b", hb);
  hil->callback([&] {
    if (ha.empty() || hb.empty()) {
      rc = finish(g, verify_hilbert(options(g, {3, 5, 7})));
      return;
    }
    long p = single_prime(g);
    Rational a = parse_rational(ha), b = parse_rational(hb);
    int h = hilbert_symbol(a, b, p), s = hilbert_by_search(a, b, p);
    std::printf("(%s, %s)_%ld = %d (search %d)\n", ha.c_str(), hb.c_str(), p, h, s);
    emit(g, {{"a", ha}, {"b", hb}, {"p", p}, {"value", h}, {"search", s}});
    rc = h == s ? 0 : 1;
  });

  std::vector<std::string> diag;
  std::string gram;
  auto* ch = app.add_subcommand("classify-hermitian", "class of a Hermitian space");
  ch->add_option("--diag", diag, "diagonal Gram entries in F")->delimiter(',');
  ch->add_option("--gram", gram, "Gram matrix JSON: rows of [a, b] = a + b sqrt(tau)");
  ch->callback([&] {
    LocalFieldSpec s = single_spec(g);
    EMat h;
    if (!gram.empty()) {
      json j = read_json(gram);
      h = EMat(j.size());
      for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t k = 0; k < j.size(); ++k) h(i, k) = eval_from_json(j[i][k]);
    } else {
      h = EMat(diag.size());
      for (std::size_t i = 0; i < diag.size(); ++i) h(i, i) = EVal{parse_rational(diag[i]), Rational(0)};
    }
    HermitianSpace w(h, s);
    std::printf("dim %zu det %s class %d (%s)\n", w.dim(), to_string(w.det()).c_str(), w.class_bit(),
                w.class_bit() ? "non-split" : "split");
    emit(g, {{"dim", w.dim()}, {"det", to_string(w.det())}, {"class", w.class_bit()}});
  });

  std::string triple;
  auto* mo = app.add_subcommand("match-orbit", "invariants, omega and the matching unitary orbits");
  mo->add_option("--triple", triple, "triple JSON {gamma, v, vstar} or a file")->required();
  mo->callback([&] {
    LocalFieldSpec s = single_spec(g);
    GLTriple d = triple_from_json(read_json(triple));
    InvariantVector iv = invariants(d);
    json out = {{"rss", is_rss(d)}};
    json a = json::array(), b = json::array();
    for (const auto& x : iv.a) a.push_back(to_string(x));
    for (const auto& x : iv.b) b.push_back(to_string(x));
    out["a"] = a;
    out["b"] = b;
    std::printf("a = %s  b = %s  rss %d\n", a.dump().c_str(), b.dump().c_str(), is_rss(d));
    if (is_rss(d)) {
      out["omega"] = omega(d, s);
      json fam = json::array();
      for (const auto& e : delta_x_family(d, s)) {
        fam.push_back({{"bits", e.bits}, {"class", e.orbit.class_bit}});
        std::printf("x bits %s -> class %d\n", json(e.bits).dump().c_str(), e.orbit.class_bit);
      }
      out["family"] = fam;
      std::printf("omega %d\n", out["omega"].get<int>());
    }
    emit(g, out);
  });

  std::string fjson, poly;
  bool no_chi = false;
  int sign = 1;
  auto* ze = app.add_subcommand("zeta", "zeta integral of f against one factor, continued to s = 0");
  ze->add_option("--f", fjson, "step function JSON or a file")->required();
  ze->add_option("--poly", poly, "factor polynomial coefficients, constant first (default x)");
  ze->add_flag("--no-chi", no_chi);
  ze->add_option("--sign", sign)->check(CLI::IsMember({1, -1}));
  ze->callback([&] {
    LocalFieldSpec s = single_spec(g);
    StepFunction f = step_function_from_json(read_json(fjson));
    Poly q = Poly::x();
    if (!poly.empty()) {
      std::vector<Rational> c;
      for (const auto& x : read_json(poly)) c.push_back(rational_from_json(x));
      q = Poly(c);
    }
    ZetaElement z = mult_zeta(f, {ZetaFactor{QuadFactor(q, s), !no_chi, sign}}, s);
    std::printf("Z(u) = %s\npole order at s = 0: %d\n", z.to_string().c_str(), z.pole_order_at_one());
    json out = {{"zeta", z.to_string()}, {"pole_order", z.pole_order_at_one()}};
    if (z.pole_order_at_one() == 0) {
      out["value"] = to_json(z.at_one());
      std::printf("value %s\n", z.at_one().to_string().c_str());
    }
    emit(g, out);
  });

  std::string witness;
  auto* rp = app.add_subcommand("replay", "recompute the failures recorded in a report");
  rp->add_option("report", witness)->required();
  rp->callback([&] {
    json r = read_json(witness);
    NormalizationLedger l = load_ledger(g);
    std::string id = r.at("identity").get<std::string>();
    int bad = 0;
    for (const auto& f : r.at("failures")) {
      bool ok = replay_one(id, f.at("input"), l);
      std::printf("%s: %s\n", f.value("label", std::string("instance")).c_str(), ok ? "passes now" : "fails");
      bad += !ok;
    }
    rc = bad ? 1 : 0;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return rc;
}
