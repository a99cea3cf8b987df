#pragma once

#include <string>
#include <vector>

namespace squeezeion::oracle {

// One entry of the closed-form-vs-oracle coverage manifest.
struct CheckResult {
  std::string name;
  double max_deviation{};
  double tolerance{};
  int cases{};
  bool passed{};
  double seconds{};
};

// Names of every registered check, in manifest order:
//   strobo-bright-fraction: phase-scan closed form vs Fock-space sequence
//   amplification-identity: S^dag D(beta) S = D(stretched beta) operator identity
//   continuous-bright-fraction: echo closed form vs full spin-motion evolution
//   continuous-decoupling-loop: motional return after one closed loop
//   ising-coherence: dissipation-free correlator vs unitary spin-motion oracle
//   lindblad-xi2: squeezing pipeline vs master-equation integration (random draws)
//   lindblad-dephasing: pure elastic channel against its analytic decay
//   moments-assembly: collective moments vs density-matrix expectation values
std::vector<std::string> oracle_check_names();

// Run one registered check by name; throws config-error for unknown names.
CheckResult run_oracle_check(const std::string& name);

// Run the full manifest (checks execute independently and may run in
// parallel; each is internally deterministic).
std::vector<CheckResult> run_oracle_checks();

}  // namespace squeezeion::oracle
