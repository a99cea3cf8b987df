#pragma once

#include <Eigen/Dense>

#include "squeezeion/spin_squeezing.hpp"
#include "squeezeion/types.hpp"

// Brute-force master-equation reference for the dissipative Ising dynamics on
// 1..3 spins: H = (J/N) sum_{i<j} sigma^z_i sigma^z_j with single-spin
// channels D[sigma^-] at gamma_ud, D[sigma^+] at gamma_du, and D[sigma^z] at
// gamma_el/4. The residual spin-motion displacement acts afterwards as a
// collective dephasing of the spin coherences.
namespace squeezeion::oracle {

using Mat = Eigen::MatrixXcd;

// Density matrix of |+x>^N.
Mat plus_x_density(int n_spins);

// Integrate the master equation for time t (RK4, step-halving convergence to
// 1e-11 max-element difference). Throws step-failure when halving stalls or
// the trace drifts beyond 1e-9.
Mat lindblad_evolve(const Mat& rho0, double J, const DecoherenceRates& rates,
                    double t, int n_spins);

// Multiply coherences by exp(-kappa/2 (W_s - W_s')^2), kappa = |alpha|^2 (2 nbar + 1).
void apply_spin_motion_dephasing(Mat& rho, double kappa, int n_spins);

cd lindblad_sigma_plus(const Mat& rho, int n_spins, int site);

SpinMoments lindblad_moments(const Mat& rho, int n_spins);

// Full pipeline: evolve |+x>^N, fold in the spin-motion dephasing, and return
// the Ramsey squeezing parameter.
RamseyXi2 lindblad_xi2(int n_spins, double J, const DecoherenceRates& rates,
                       cd alpha, double nbar, double t);

}  // namespace squeezeion::oracle
