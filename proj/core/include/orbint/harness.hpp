#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbint/etale.hpp"
#include "orbint/scalar.hpp"
#include "orbint/spaces.hpp"
#include "orbint/step_function.hpp"

namespace orbint {

// Haar normalizations every identity is asserted under, plus calibration
// constants measured once per identity and then frozen.
class NormalizationLedger {
 public:
  NormalizationLedger();

  const std::map<std::string, std::string>& measures() const { return measures_; }
  const std::map<std::string, CycScalar>& constants() const { return constants_; }
  std::optional<CycScalar> constant(const std::string& name) const;
  // Record c for name if none is frozen yet; otherwise report whether it agrees.
  bool calibrate(const std::string& name, const CycScalar& c);

  nlohmann::json to_json() const;
  static NormalizationLedger from_json(const nlohmann::json& j);
  // Path from ORBINT_LEDGER, empty when unset.
  static std::string default_path();

 private:
  std::map<std::string, std::string> measures_;
  std::map<std::string, CycScalar> constants_;
};

struct InstanceRecord {
  std::string label;
  bool pass = true;
  std::string detail;
  nlohmann::json input;  // enough to replay the instance
};

struct VerificationReport {
  std::string identity;
  long instances = 0;
  long passed = 0;
  long nontrivial = 0;  // instances where the compared values were not all zero
  std::optional<CycScalar> calibration;
  double seconds = 0;
  std::vector<InstanceRecord> failures;  // smallest input first
  nlohmann::json certificates = nlohmann::json::object();

  bool ok() const { return instances > 0 && passed == instances; }
  void record(InstanceRecord r);
  nlohmann::json to_json() const;
};

struct SuiteOptions {
  std::vector<long> primes{3, 5};
  std::optional<Rational> tau;  // both ramification types when unset
  std::uint64_t seed = 1;
  long instances = 0;  // 0: suite default
  long max_level = 2;
};

// Both quadratic extensions of Q_p used by the suites: unramified first.
std::vector<LocalFieldSpec> specs_for(long p, const std::optional<Rational>& tau);

// Random inputs from the exactness-preserving class.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}
  long uniform(long lo, long hi);
  // terms boxes with levels in [-1, max_level], sparse centers and phases
  StepFunction step_function(std::size_t dim, long p, int terms, long max_level = 2);
  // phase-free boxes with every coordinate of a block at one level in [0, max_level]
  StepFunction block_step_function(const std::vector<std::size_t>& blocks, long p, int terms, long max_level);
  QMat conjugate(const QMat& m);
  // rss triple whose gamma has the given irreducible factors
  GLTriple triple(const std::vector<Poly>& factors, const LocalFieldSpec& spec);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Factor-type mixes for the torus suites: each entry lists 0 = F, 1 = E-isomorphic,
// 2 = the other quadratic field, and realize() picks distinct polynomials.
std::vector<std::vector<int>> factor_mixes(std::size_t max_m);
std::vector<Poly> realize_mix(const std::vector<int>& mix, const LocalFieldSpec& spec);

// Rank-one transfer pair. U(1)-invariant functions on u(W_i) x W_i are functions
// of (delta, <w, w>); inv[i] is that function as a step function on F^2.
struct TransferN1 {
  StepFunction inv[2];
  Rational lambda[2];  // W_i = E with form lambda_i conj(x) y
  long radius = 0;     // below valuation radius of b the germ constant is used
  long checks = 0;     // local constancy samples that agreed
  bool certified = false;

  // f_i(delta, w) = inv[i](delta, lambda_i Nm w)
  CycScalar value(int cls, const Rational& delta, const EVal& w, const Rational& tau) const;
  CycScalar at_zero(int cls, const Rational& delta) const;
};

TransferN1 construct_jr_transfer_n1(const StepFunction& f, const LocalFieldSpec& spec, std::uint64_t seed = 1);

// Brute-force Hilbert symbol: search for a primitive solution of z^2 = a x^2 + b y^2
// modulo p^3 that Hensel-lifts.
int hilbert_by_search(const Rational& a, const Rational& b, long p);

VerificationReport verify_torus_germ(const SuiteOptions& o, long per_mix = 50);
VerificationReport verify_m1_closed_forms(const SuiteOptions& o);
VerificationReport verify_fourier_involution(const SuiteOptions& o);
VerificationReport verify_descent(const SuiteOptions& o);
VerificationReport verify_descent_fourier(const SuiteOptions& o);
VerificationReport verify_weil(const SuiteOptions& o);
VerificationReport verify_hilbert(const SuiteOptions& o);
VerificationReport verify_cohomology(const SuiteOptions& o);
VerificationReport verify_transfer_factor_algebra(const SuiteOptions& o);
VerificationReport verify_nilpotent_identity(const SuiteOptions& o, NormalizationLedger& ledger);
VerificationReport verify_fl_n1(const SuiteOptions& o);

}  // namespace orbint
