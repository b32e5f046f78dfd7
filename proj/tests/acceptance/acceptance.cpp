// Runs the acceptance suites and prints one line per criterion.
// Exit status is 0 iff criteria 1-10 pass; criterion 11 is reported only.
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "orbint/harness.hpp"

using namespace orbint;

namespace {

struct Criterion {
  int id;
  std::string name;
  std::function<VerificationReport()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::string out = argc > 1 ? argv[1] : "";
  SuiteOptions base;
  NormalizationLedger ledger;
  std::string lp = NormalizationLedger::default_path();
  if (!lp.empty()) {
    std::ifstream in(lp);
    if (in) ledger = NormalizationLedger::from_json(nlohmann::json::parse(in));
  }

  std::vector<Criterion> cs = {
      {1, "torus germ expansion", [&] { return verify_torus_germ(base, 50); }},
      {2, "rank-one closed forms", [&] { return verify_m1_closed_forms(base); }},
      {3, "Fourier involution", [&] {
         SuiteOptions o = base;
         o.primes = {3};
         return verify_fourier_involution(o);
       }},
      {4, "parabolic descent", [&] { return verify_descent(base); }},
      {5, "descent and Fourier", [&] { return verify_descent_fourier(base); }},
      {6, "Weil index", [&] { return verify_weil(base); }},
      {7, "Hilbert symbol oracle", [&] { return verify_hilbert(base); }},
      {8, "cohomology torsor", [&] { return verify_cohomology(base); }},
      {9, "nilpotent identity n=1", [&] { return verify_nilpotent_identity(base, ledger); }},
      {10, "fundamental lemma n=1", [&] { return verify_fl_n1(base); }},
  };

  nlohmann::json report = nlohmann::json::array();
  bool all = true;
  for (const auto& c : cs) {
    VerificationReport r = c.run();
    bool ok = r.ok();
    all = all && ok;
    std::string extra;
    if (r.calibration) extra = " constant " + r.calibration->to_string();
    std::printf("criterion %2d %-4s %-26s %ld/%ld passed, %ld nontrivial, %.1fs%s\n", c.id, ok ? "PASS" : "FAIL",
                c.name.c_str(), r.passed, r.instances, r.nontrivial, r.seconds, extra.c_str());
    for (std::size_t i = 0; i < r.failures.size() && i < 3; ++i)
      std::printf("    %s: %s\n", r.failures[i].label.c_str(), r.failures[i].detail.c_str());
    std::fflush(stdout);
    nlohmann::json j = r.to_json();
    j["criterion"] = c.id;
    report.push_back(std::move(j));
  }
  // Only the n = 2 descent configuration of the nilpotent GL integral exists;
  // the anisotropic unitary side at n = 2 has no integrator.
  std::printf("criterion 11 FAIL stretch, n=2 anisotropic   not implemented (non-blocking)\n");
  report.push_back({{"criterion", 11}, {"ok", false}, {"detail", "not implemented"}});

  if (!out.empty()) std::ofstream(out) << report.dump(1) << "\n";
  if (!lp.empty()) std::ofstream(lp) << ledger.to_json().dump(1) << "\n";
  std::printf("%s\n", all ? "criteria 1-10 pass" : "some required criterion failed");
  return all ? 0 : 1;
}
