#pragma once

#include <Eigen/Dense>

#include "squeezeion/continuous.hpp"
#include "squeezeion/types.hpp"

// Brute-force reference implementations on a truncated Fock space. Everything
// here trades speed for transparency: dense operators, exact Hermitian
// eigendecomposition for time evolution, explicit thermal mixtures. Closed
// forms elsewhere in the library are validated against these.
namespace squeezeion::oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Population ceiling allowed in the top two Fock levels of any state the
// oracle touches (two levels: squeezing populates alternating parity, so the
// topmost level alone can alias to zero).
inline constexpr double leakage_ceiling = 1e-8;

struct HilbertConfig {
  int n_spins{1};   // 1..3 spins
  int fock_dim{64}; // >= 2 motional levels

  void validate() const;  // throws config-error
};

// Composite states are indexed [spin_index * fock_dim + n] with spin basis
// index s encoding bit i = 0 for spin-up at site i; W(s) = sum_i sigma^z_i.
int spin_weight(int s, int n_spins);

Mat destroy(int fock_dim);

// Reusable Hermitian eigendecomposition; evolve() applies exp(-i H t).
struct HermitianExp {
  Eigen::VectorXd eigenvalues;
  Mat eigenvectors;

  explicit HermitianExp(const Mat& h);
  Mat unitary(double t) const;
  Vec evolve(const Vec& psi, double t) const;
};

// Motional gate unitaries (exact on the truncated space).
Mat displacement_op(int fock_dim, cd alpha);            // exp(alpha a^dag - alpha* a)
Mat squeeze_op(int fock_dim, cd xi);                     // exp((xi* a^2 - xi a^dag^2)/2)
Eigen::Matrix2cd rotation_2x2(double theta_r, double phi_r);

// Full-register operators for an n_spins x fock_dim register.
Mat spin_rotation_full(const HilbertConfig& h, double theta_r, double phi_r);
Mat motional_full(const HilbertConfig& h, const Mat& motional_op);
// Spin-dependent displacement: branch s receives D(W(s) * alpha).
Mat spin_dependent_displacement_full(const HilbertConfig& h, cd alpha);

// Fraction of population in the top two Fock levels across all spin branches.
double top_leakage(const HilbertConfig& h, const Vec& psi);
// Throws truncation-leakage above leakage_ceiling.
void certify_leakage(const HilbertConfig& h, const Vec& psi);

// Apply `gate` to `psi` and certify the truncation afterwards.
Vec apply_gate(const HilbertConfig& h, const Mat& gate, const Vec& psi);

// Coherent state |gamma> truncated to fock_dim levels.
Vec coherent_state(int fock_dim, cd gamma);

// Smallest dimension from {64, 96, 128, 192, 256, 384, 512} whose projected
// occupancy covers squeezing r, displacement scale, and thermal cut nbar.
// Throws truncation-leakage when even 512 cannot.
int auto_fock_dim(double r, double displacement, double nbar);

// Spin-motion Hamiltonian of the continuously driven protocol:
//   H = (f / 2 sqrt N) sum_i sigma^z_i (a e^{-i phi_odf} + a^dag e^{i phi_odf})
//       - delta a^dag a + i (g/2)(a^2 e^{-i theta} - a^dag^2 e^{i theta}).
Mat drive_hamiltonian(const HilbertConfig& h, double f, double delta, double g,
                      double theta, double phi_odf);

// exp(-i H t) for the block-diagonal drive Hamiltonian (one Hermitian
// eigensolve per distinct spin weight).
Mat drive_unitary(const HilbertConfig& h, double f, double delta, double g,
                  double theta, double phi_odf, double t);

// Stroboscopic sequence bright fraction for a single ion:
// |up>|thermal(nbar)> -> S(r e^{i theta}) -> R(pi/2,0) -> D_sd(alpha) ->
// R(pi/2,0) -> P(up), with alpha = -i (f tau / 2) e^{i phi_odf} and
// phi_odf = (theta - pi - delta_phi)/2. Thermal weights are cut at 1e-10 and
// the dropped tail contributes its asymptotic bright fraction of 1/2. The
// truncation certificate is thermal-weighted across the mixture columns.
double strobo_bright_fraction_oracle(double r, double theta, double delta_phi,
                                     double f_tau, double nbar, int fock_dim);

// Batch form sharing one squeeze/displacement eigensolve across phase points.
std::vector<double> strobo_phase_scan_oracle(double r, double theta,
                                             const std::vector<double>& delta_phis,
                                             double f_tau, double nbar,
                                             int fock_dim);

// Full spin-echo sequence of the continuous protocol on 1..3 spins, averaged
// over a displaced thermal mixture (deterministic Gauss-Laguerre x phase
// quadrature, >= 500 nodes when both nbar and |beta| are nonzero). The noise
// model in `config` is ignored: the oracle evaluates one fixed detuning.
double continuous_bright_fraction_oracle(const ContinuousConfig& config,
                                         int fock_dim);

// Motional return fidelity deficit 1 - <gamma| rho_motion |gamma> after one
// echo arm of exactly one loop (delta' tau = 2 pi k) from |+x>^N (x) |gamma>.
double decoupling_loop_deficit(const ContinuousConfig& config, int k, cd gamma,
                               int fock_dim);

// <sigma^+_1> after evolving |+x>^N (x) thermal(nbar) under the drive
// Hamiltonian for time t (no echo, no rotations) — the unitary Ising limit.
cd ising_sigma_plus_oracle(int n_spins, int fock_dim, double f, double delta,
                           double g, double nbar, double t);

}  // namespace squeezeion::oracle
