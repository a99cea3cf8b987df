#include "squeezeion/errors.hpp"

namespace squeezeion {

const char* tag(errc code) noexcept {
  switch (code) {
    case errc::config_error: return "config-error";
    case errc::invalid_trap: return "invalid-trap";
    case errc::unstable_regime: return "unstable-regime";
    case errc::domain_error: return "domain-error";
    case errc::fit_failure: return "fit-failure";
    case errc::rejected_fraction: return "rejected-fraction";
    case errc::degenerate_contrast: return "degenerate-contrast";
    case errc::degenerate_design: return "degenerate-design";
    case errc::truncation_leakage: return "truncation-leakage";
    case errc::step_failure: return "step-failure";
    case errc::oracle_failure: return "oracle-failure";
    case errc::io_error: return "io-error";
  }
  return "unknown-error";
}

}  // namespace squeezeion
