#pragma once

#include <vector>

namespace squeezeion {

// Inputs for the single-shot displacement-sensing variance model with
// pre-measurement parametric amplification and Gaussian drive-frequency noise.
struct SensitivityParams {
  double f{};         // ODF coupling rate, rad/s
  double g{};         // parametric rate, rad/s (required > 0 when sigma > 0 and r > 0)
  double sigma{};     // rms drive-frequency fluctuation, rad/s
  double gamma{};     // spin decoherence rate, 1/s
  double nbar{};      // thermal occupation of the sensing mode
  double r{};         // amplification parameter
  double sql_var{0.25};  // standard-quantum-limit reference variance

  void validate() const;  // throws config-error / domain-error
};

// Single-shot displacement variance (Delta beta)^2 at interrogation time tau
// with amplification r (params.r) and with the frequency-noise corrections.
double displacement_variance(const SensitivityParams& params, double tau);

// Same quantity for the unamplified protocol (r = 0); independently coded
// closed form, used as the gain reference.
double displacement_variance_r0(const SensitivityParams& params, double tau);

struct SensitivityPoint {
  double tau_s{};
  double var_r{};        // amplified variance
  double var_r0{};       // unamplified reference variance
  double gain_db{};      // 10 log10(var_r0 / var_r) at this tau
  double db_below_sql{}; // 10 log10(sql_var / var_r)
};

struct SensitivityScan {
  std::vector<SensitivityPoint> points;
  double tau_opt_r{};        // argmin of var_r (parabolic-refined)
  double tau_opt_r0{};       // argmin of var_r0
  double var_min_r{};
  double var_min_r0{};
  double gain_optimal_db{};  // 10 log10(var_min_r0 / var_min_r), each at its own tau
};

// Evaluate both variance curves over a tau grid and locate their optima.
SensitivityScan sensitivity_scan(const SensitivityParams& params,
                                 const std::vector<double>& taus);

}  // namespace squeezeion
