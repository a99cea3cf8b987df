#pragma once

#include <stdexcept>
#include <string>

namespace squeezeion {

// Machine-parsable failure categories. Every library invariant violation maps to
// one of these; the CLI prints "error: <tag>: <message>" on stderr and converts
// the category to a process exit code (see tools/).
enum class errc {
  config_error,        // malformed/unknown/missing configuration
  invalid_trap,        // trap parameters give no radial confinement
  unstable_regime,     // parametric drive at or beyond the instability threshold
  domain_error,        // argument outside a function's mathematical domain
  fit_failure,         // fit did not converge / data uninformative / boundary hit
  rejected_fraction,   // too many noise samples rejected during averaging
  degenerate_contrast, // vanishing mean spin length; squeezing parameter undefined
  degenerate_design,   // calibration design matrix is singular
  truncation_leakage,  // certified Fock-space truncation bound exceeded
  step_failure,        // integrator step-halving did not converge
  oracle_failure,      // reference-oracle cross-check exceeded tolerance
  io_error,            // file read/write failure
};

// Stable one-word tag for an error category (e.g. "unstable-regime").
const char* tag(errc code) noexcept;

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

  // One-line machine-parsable form: "error: <tag>: <message>".
  std::string tagged() const {
    return std::string("error: ") + tag(code_) + ": " + what();
  }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace squeezeion
