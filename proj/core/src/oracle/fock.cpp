#include "squeezeion/oracle/fock.hpp"

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "squeezeion/core_model.hpp"
#include "squeezeion/errors.hpp"
#include "squeezeion/math.hpp"
#include "squeezeion/units.hpp"

namespace squeezeion::oracle {

void HilbertConfig::validate() const {
  require(n_spins >= 1 && n_spins <= 3, errc::config_error,
          "oracle: n_spins must be in [1, 3]");
  require(fock_dim >= 2, errc::config_error, "oracle: fock_dim must be >= 2");
}

int spin_weight(int s, int n_spins) {
  int w = 0;
  for (int i = 0; i < n_spins; ++i) w += (s >> i) & 1 ? -1 : 1;
  return w;
}

Mat destroy(int fock_dim) {
  Mat a = Mat::Zero(fock_dim, fock_dim);
  for (int n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

HermitianExp::HermitianExp(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  require(solver.info() == Eigen::Success, errc::oracle_failure,
          "Hermitian eigendecomposition failed");
  eigenvalues = solver.eigenvalues();
  eigenvectors = solver.eigenvectors();
}

Mat HermitianExp::unitary(double t) const {
  const Eigen::Index n = eigenvalues.size();
  Vec phases(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phases(k) = std::exp(cd(0.0, -eigenvalues(k) * t));
  return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

Vec HermitianExp::evolve(const Vec& psi, double t) const {
  Vec coefficients = eigenvectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < coefficients.size(); ++k)
    coefficients(k) *= std::exp(cd(0.0, -eigenvalues(k) * t));
  return eigenvectors * coefficients;
}

Mat displacement_op(int fock_dim, cd alpha) {
  const Mat a = destroy(fock_dim);
  // exp(alpha a^dag - alpha* a) = exp(-i H), H = i(alpha a^dag - alpha* a).
  const Mat h = cd(0.0, 1.0) * (alpha * a.adjoint() - std::conj(alpha) * a);
  return HermitianExp(h).unitary(1.0);
}

Mat squeeze_op(int fock_dim, cd xi) {
  const Mat a = destroy(fock_dim);
  const Mat a2 = a * a;
  const Mat h = cd(0.0, 0.5) * (std::conj(xi) * a2 - xi * a2.adjoint());
  return HermitianExp(h).unitary(1.0);
}

Eigen::Matrix2cd rotation_2x2(double theta_r, double phi_r) {
  const double c = std::cos(0.5 * theta_r), s = std::sin(0.5 * theta_r);
  Eigen::Matrix2cd rot;
  rot << cd(c, 0.0), -std::exp(cd(0.0, -phi_r)) * s,
      std::exp(cd(0.0, phi_r)) * s, cd(c, 0.0);
  return rot;
}

namespace {

// kron(spin_matrix, I_fock) placed into a full register operator.
Mat kron_with_identity(const Mat& spin_matrix, int fock_dim) {
  const Eigen::Index ns = spin_matrix.rows();
  Mat full = Mat::Zero(ns * fock_dim, ns * fock_dim);
  for (Eigen::Index s = 0; s < ns; ++s)
    for (Eigen::Index sp = 0; sp < ns; ++sp)
      if (spin_matrix(s, sp) != cd(0.0, 0.0))
        full.block(s * fock_dim, sp * fock_dim, fock_dim, fock_dim) =
            spin_matrix(s, sp) * Mat::Identity(fock_dim, fock_dim);
  return full;
}

Mat spin_kron_power(const Eigen::Matrix2cd& one, int n_spins) {
  Mat out = Mat::Ones(1, 1);
  for (int i = 0; i < n_spins; ++i) {
    Mat next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < 2; ++r)
      for (Eigen::Index c = 0; c < 2; ++c)
        next.block(r * out.rows(), c * out.cols(), out.rows(), out.cols()) =
            one(r, c) * out;
    out = std::move(next);
  }
  return out;
}

}  // namespace

Mat spin_rotation_full(const HilbertConfig& h, double theta_r, double phi_r) {
  h.validate();
  return kron_with_identity(spin_kron_power(rotation_2x2(theta_r, phi_r), h.n_spins),
                            h.fock_dim);
}

Mat motional_full(const HilbertConfig& h, const Mat& motional_op) {
  h.validate();
  require(motional_op.rows() == h.fock_dim && motional_op.cols() == h.fock_dim,
          errc::domain_error, "motional operator dimension mismatch");
  const int ns = 1 << h.n_spins;
  Mat full = Mat::Zero(ns * h.fock_dim, ns * h.fock_dim);
  for (int s = 0; s < ns; ++s)
    full.block(s * h.fock_dim, s * h.fock_dim, h.fock_dim, h.fock_dim) = motional_op;
  return full;
}

Mat spin_dependent_displacement_full(const HilbertConfig& h, cd alpha) {
  h.validate();
  const int ns = 1 << h.n_spins;
  Mat full = Mat::Zero(ns * h.fock_dim, ns * h.fock_dim);
  std::map<int, Mat> by_weight;
  for (int s = 0; s < ns; ++s) {
    const int w = spin_weight(s, h.n_spins);
    auto it = by_weight.find(w);
    if (it == by_weight.end())
      it = by_weight.emplace(w, displacement_op(h.fock_dim, static_cast<double>(w) * alpha)).first;
    full.block(s * h.fock_dim, s * h.fock_dim, h.fock_dim, h.fock_dim) = it->second;
  }
  return full;
}

double top_leakage(const HilbertConfig& h, const Vec& psi) {
  h.validate();
  require(psi.size() == static_cast<Eigen::Index>((1 << h.n_spins) * h.fock_dim),
          errc::domain_error, "state dimension mismatch");
  double leak = 0.0;
  const int ns = 1 << h.n_spins;
  for (int s = 0; s < ns; ++s) {
    leak += std::norm(psi(s * h.fock_dim + h.fock_dim - 1));
    leak += std::norm(psi(s * h.fock_dim + h.fock_dim - 2));
  }
  return leak;
}

void certify_leakage(const HilbertConfig& h, const Vec& psi) {
  const double leak = top_leakage(h, psi);
  require(leak <= leakage_ceiling, errc::truncation_leakage,
          "population " + format_double(leak) +
              " in the top two Fock levels exceeds the certified ceiling");
}

Vec apply_gate(const HilbertConfig& h, const Mat& gate, const Vec& psi) {
  require(gate.rows() == psi.size() && gate.cols() == psi.size(),
          errc::domain_error, "gate dimension mismatch");
  Vec out = gate * psi;
  certify_leakage(h, out);
  return out;
}

Vec coherent_state(int fock_dim, cd gamma) {
  require(fock_dim >= 2, errc::domain_error, "coherent_state: fock_dim >= 2");
  Vec psi(fock_dim);
  psi(0) = std::exp(-0.5 * std::norm(gamma));
  for (int n = 1; n < fock_dim; ++n)
    psi(n) = psi(n - 1) * gamma / std::sqrt(static_cast<double>(n));
  return psi;
}

int auto_fock_dim(double r, double displacement, double nbar) {
  require(r >= 0.0 && displacement >= 0.0 && nbar >= 0.0, errc::domain_error,
          "auto_fock_dim: arguments must be >= 0");
  // Occupancy is projected from the 1e-3 Boltzmann quantile: the far thermal
  // tail carries so little weight that the (weighted) leakage certification
  // tolerates it, and sizing on the 1e-10 cut would overflow the cap.
  int n_sig = 0;
  if (nbar > 0.0) {
    double p = 1.0 / (1.0 + nbar);
    const double ratio = nbar / (1.0 + nbar);
    while (p >= 1e-3) {
      p *= ratio;
      ++n_sig;
    }
  }
  const double spread = std::sqrt(static_cast<double>(n_sig) + 1.0) + displacement;
  const double occupancy = std::exp(2.0 * r) * spread * spread;
  const double needed = occupancy + 4.5 * std::sqrt(occupancy + 1.0) + 24.0;
  for (int dim : {64, 96, 128, 192, 256, 384, 512})
    if (static_cast<double>(dim) >= needed) return dim;
  require(needed <= 512.0, errc::truncation_leakage,
          "projected occupancy exceeds the 512-level truncation cap");
  return 512;
}

Mat drive_hamiltonian(const HilbertConfig& h, double f, double delta, double g,
                      double theta, double phi_odf) {
  h.validate();
  const Mat a = destroy(h.fock_dim);
  const Mat x = a * std::exp(cd(0.0, -phi_odf)) + a.adjoint() * std::exp(cd(0.0, phi_odf));
  const Mat a2 = a * a;
  const Mat quad = -delta * (a.adjoint() * a) +
                   cd(0.0, 0.5 * g) * (a2 * std::exp(cd(0.0, -theta)) -
                                       a2.adjoint() * std::exp(cd(0.0, theta)));
  const int ns = 1 << h.n_spins;
  const double scale = f / (2.0 * std::sqrt(static_cast<double>(h.n_spins)));
  Mat full = Mat::Zero(ns * h.fock_dim, ns * h.fock_dim);
  for (int s = 0; s < ns; ++s)
    full.block(s * h.fock_dim, s * h.fock_dim, h.fock_dim, h.fock_dim) =
        quad + scale * static_cast<double>(spin_weight(s, h.n_spins)) * x;
  return full;
}

Mat drive_unitary(const HilbertConfig& h, double f, double delta, double g,
                  double theta, double phi_odf, double t) {
  h.validate();
  require(t >= 0.0, errc::domain_error, "drive_unitary: t must be >= 0");
  const Mat a = destroy(h.fock_dim);
  const Mat x = a * std::exp(cd(0.0, -phi_odf)) + a.adjoint() * std::exp(cd(0.0, phi_odf));
  const Mat a2 = a * a;
  const Mat quad = -delta * (a.adjoint() * a) +
                   cd(0.0, 0.5 * g) * (a2 * std::exp(cd(0.0, -theta)) -
                                       a2.adjoint() * std::exp(cd(0.0, theta)));
  const double scale = f / (2.0 * std::sqrt(static_cast<double>(h.n_spins)));
  const int ns = 1 << h.n_spins;
  std::map<int, Mat> block_by_weight;  // one eigensolve per distinct spin weight
  Mat full = Mat::Zero(ns * h.fock_dim, ns * h.fock_dim);
  for (int s = 0; s < ns; ++s) {
    const int w = spin_weight(s, h.n_spins);
    auto it = block_by_weight.find(w);
    if (it == block_by_weight.end()) {
      const Mat block = quad + scale * static_cast<double>(w) * x;
      it = block_by_weight.emplace(w, HermitianExp(block).unitary(t)).first;
    }
    full.block(s * h.fock_dim, s * h.fock_dim, h.fock_dim, h.fock_dim) = it->second;
  }
  return full;
}

std::vector<double> strobo_phase_scan_oracle(double r, double theta,
                                             const std::vector<double>& delta_phis,
                                             double f_tau, double nbar,
                                             int fock_dim) {
  require(r >= 0.0 && nbar >= 0.0, errc::domain_error,
          "strobo oracle: r and nbar must be >= 0");
  require(fock_dim >= 8, errc::domain_error, "strobo oracle: fock_dim too small");

  // Thermal Boltzmann weights cut at 1e-10; the dropped tail reports the
  // asymptotic bright fraction of 1/2.
  std::vector<double> weights;
  {
    double p = 1.0 / (1.0 + nbar);
    const double ratio = nbar > 0.0 ? nbar / (1.0 + nbar) : 0.0;
    while (p >= 1e-10) {
      weights.push_back(p);
      if (ratio == 0.0) break;
      p *= ratio;
    }
  }
  const int n_cut = static_cast<int>(weights.size());
  require(n_cut + 2 < fock_dim, errc::truncation_leakage,
          "strobo oracle: thermal cut exceeds the Fock dimension");

  const Mat squeeze = squeeze_op(fock_dim, r * std::exp(cd(0.0, theta)));
  const Mat squeezed_cols = squeeze.leftCols(n_cut);
  // D(|a| e^{i phi}) = P D(|a|) P^dag with P = diag(e^{i phi n}): a single
  // eigensolve serves every phase point of the scan.
  const Mat d0 = displacement_op(fock_dim, std::abs(0.5 * f_tau));

  std::vector<double> out;
  out.reserve(delta_phis.size());
  for (double delta_phi : delta_phis) {
    const double phi_odf = 0.5 * (theta - pi - delta_phi);
    const cd alpha = cd(0.0, -1.0) * (0.5 * f_tau) * std::exp(cd(0.0, phi_odf));
    const double phase = std::arg(alpha);
    Vec rot(fock_dim);
    for (int n = 0; n < fock_dim; ++n) rot(n) = std::exp(cd(0.0, phase * n));
    const Mat displaced = rot.asDiagonal() * d0 * rot.conjugate().asDiagonal();

    const Mat branch_up = displaced * squeezed_cols;
    const Mat branch_down = displaced.adjoint() * squeezed_cols;

    // Thermal-weighted truncation certificate over all intermediate states.
    auto column_leak = [&](const Mat& m, int col) {
      return std::norm(m(fock_dim - 1, col)) + std::norm(m(fock_dim - 2, col));
    };
    double weighted_leak = 0.0;
    double bright = 0.0;
    double total_weight = 0.0;
    for (int n = 0; n < n_cut; ++n) {
      const double leak = std::max({column_leak(squeezed_cols, n),
                                    column_leak(branch_up, n),
                                    column_leak(branch_down, n)});
      weighted_leak += weights[static_cast<std::size_t>(n)] * leak;
      const double p_up =
          0.25 * (branch_up.col(n) - branch_down.col(n)).squaredNorm();
      bright += weights[static_cast<std::size_t>(n)] * p_up;
      total_weight += weights[static_cast<std::size_t>(n)];
    }
    require(weighted_leak <= leakage_ceiling, errc::truncation_leakage,
            "strobo oracle: thermal-weighted population " +
                format_double(weighted_leak) +
                " in the top two Fock levels exceeds the certified ceiling");
    bright += (1.0 - total_weight) * 0.5;  // asymptotic tail
    out.push_back(bright);
  }
  return out;
}

double strobo_bright_fraction_oracle(double r, double theta, double delta_phi,
                                     double f_tau, double nbar, int fock_dim) {
  return strobo_phase_scan_oracle(r, theta, {delta_phi}, f_tau, nbar,
                                  fock_dim)[0];
}

namespace {

struct QuadratureNode {
  cd gamma;
  double weight;
};

// Displaced-thermal mixture as deterministic coherent-state nodes:
// Gauss-Laguerre in the thermal radial coordinate, uniform phases for both the
// thermal circle and the sensed displacement.
std::vector<QuadratureNode> displaced_thermal_nodes(double nbar, double beta_abs) {
  const int k_radial = nbar > 0.0 ? 24 : 1;
  const int m_beta = beta_abs > 0.0 ? 24 : 1;
  const int m_thermal = nbar > 0.0 ? (m_beta > 1 ? 24 : 48) : 1;

  std::vector<double> nodes{0.0}, weights{1.0};
  if (nbar > 0.0) gauss_laguerre(k_radial, nodes, weights);

  std::vector<QuadratureNode> out;
  double kept = 0.0;
  for (int j = 0; j < static_cast<int>(nodes.size()); ++j) {
    if (weights[static_cast<std::size_t>(j)] < 1e-15) continue;
    const double amp = std::sqrt(nbar * nodes[static_cast<std::size_t>(j)]);
    for (int mt = 0; mt < m_thermal; ++mt) {
      const cd thermal = amp * std::exp(cd(0.0, two_pi * mt / m_thermal));
      for (int mb = 0; mb < m_beta; ++mb) {
        const cd displaced =
            thermal + beta_abs * std::exp(cd(0.0, two_pi * mb / m_beta));
        const double w =
            weights[static_cast<std::size_t>(j)] / (m_thermal * m_beta);
        out.push_back({displaced, w});
        kept += w;
      }
    }
  }
  for (auto& node : out) node.weight /= kept;
  return out;
}

}  // namespace

double continuous_bright_fraction_oracle(const ContinuousConfig& config,
                                         int fock_dim) {
  config.validate();
  require(config.n_ions <= 3, errc::config_error,
          "continuous oracle supports at most 3 spins");
  require(config.drive.gamma == 0.0, errc::domain_error,
          "continuous oracle is unitary; requires gamma == 0");
  const HilbertConfig h{config.n_ions, fock_dim};
  h.validate();
  const auto& d = config.drive;
  const double theta = d.delta_phi_c + 2.0 * d.phi_odf + 0.5 * pi;

  const Mat u_arm = drive_unitary(h, d.f, d.delta, d.g, theta, d.phi_odf, d.tau);
  const Mat u_gap = drive_unitary(h, 0.0, d.delta, d.g, theta, d.phi_odf, d.t_pi);
  const Mat ry = spin_rotation_full(h, 0.5 * pi, 0.0);
  const Mat rx = spin_rotation_full(h, pi, 0.5 * pi);
  const Mat u = ry * u_arm * rx * u_gap * u_arm * ry;

  // Bright fraction observable (1/N) sum_i (1 + sigma^z_i)/2, conjugated back
  // to t = 0 so every mixture node costs one quadratic form.
  const int ns = 1 << h.n_spins;
  Vec obs(ns * h.fock_dim);
  for (int s = 0; s < ns; ++s) {
    const double val = 0.5 + static_cast<double>(spin_weight(s, h.n_spins)) /
                                 (2.0 * h.n_spins);
    for (int n = 0; n < h.fock_dim; ++n) obs(s * h.fock_dim + n) = val;
  }
  const Mat conjugated = u.adjoint() * (obs.asDiagonal() * u);
  const Mat block = conjugated.block(0, 0, h.fock_dim, h.fock_dim);  // spin all-up

  const auto nodes =
      displaced_thermal_nodes(config.motion.nbar, std::abs(config.motion.beta));

  // Certify the truncation on the evolved worst-case node.
  double max_abs = 0.0;
  cd worst = 0.0;
  for (const auto& node : nodes)
    if (std::abs(node.gamma) > max_abs) {
      max_abs = std::abs(node.gamma);
      worst = node.gamma;
    }
  {
    Vec psi = Vec::Zero(ns * h.fock_dim);
    psi.segment(0, h.fock_dim) = coherent_state(h.fock_dim, worst);
    certify_leakage(h, psi);
    const Vec evolved = u * psi;
    certify_leakage(h, evolved);
  }

  double bright = 0.0;
  for (const auto& node : nodes) {
    const Vec x = coherent_state(h.fock_dim, node.gamma);
    bright += node.weight * (x.adjoint() * (block * x))(0, 0).real();
  }
  return bright;
}

double decoupling_loop_deficit(const ContinuousConfig& config, int k, cd gamma,
                               int fock_dim) {
  config.validate();
  require(config.n_ions <= 3, errc::config_error,
          "decoupling-loop oracle supports at most 3 spins");
  require(k >= 1, errc::domain_error, "decoupling loop: k must be >= 1");
  const HilbertConfig h{config.n_ions, fock_dim};
  h.validate();
  const auto& d = config.drive;
  const BogoliubovFrame frame =
      bogoliubov_frame(d.delta, d.g, d.f, d.delta_phi_c);
  const double t_loop = two_pi * static_cast<double>(k) / frame.delta_prime;
  const double theta = d.delta_phi_c + 2.0 * d.phi_odf + 0.5 * pi;

  const int ns = 1 << h.n_spins;
  Vec psi = Vec::Zero(ns * h.fock_dim);
  psi.segment(0, h.fock_dim) = coherent_state(h.fock_dim, gamma);
  psi = spin_rotation_full(h, 0.5 * pi, 0.0) * psi;  // all spins to +x
  certify_leakage(h, psi);

  const Mat u_arm = drive_unitary(h, d.f, d.delta, d.g, theta, d.phi_odf, t_loop);
  const Vec evolved = apply_gate(h, u_arm, psi);

  const Vec target = coherent_state(h.fock_dim, gamma);
  double fidelity = 0.0;
  for (int s = 0; s < ns; ++s)
    fidelity += std::norm(
        (target.adjoint() * evolved.segment(s * h.fock_dim, h.fock_dim))(0, 0));
  return 1.0 - fidelity;
}

cd ising_sigma_plus_oracle(int n_spins, int fock_dim, double f, double delta,
                           double g, double nbar, double t) {
  const HilbertConfig h{n_spins, fock_dim};
  h.validate();
  require(n_spins >= 2, errc::domain_error, "ising oracle: n_spins must be >= 2");
  const Mat u = drive_unitary(h, f, delta, g, 0.5 * pi, 0.0, t);

  // sigma^+ on site 0: maps spin index s (bit0 = 1, spin-down) to s & ~1.
  const int ns = 1 << n_spins;
  Mat sigma_plus = Mat::Zero(ns, ns);
  for (int s = 0; s < ns; ++s)
    if (s & 1) sigma_plus(s & ~1, s) = 1.0;
  const Mat obs_full = kron_with_identity(sigma_plus, h.fock_dim);
  const Mat conjugated = u.adjoint() * obs_full * u;

  // Initial spins |+x>^N: uniform amplitudes. Contract the spin indices once.
  const double amp = 1.0 / std::sqrt(static_cast<double>(ns));
  Mat contracted = Mat::Zero(h.fock_dim, h.fock_dim);
  for (int s = 0; s < ns; ++s)
    for (int sp = 0; sp < ns; ++sp)
      contracted += (amp * amp) *
                    conjugated.block(s * h.fock_dim, sp * h.fock_dim,
                                     h.fock_dim, h.fock_dim);

  const auto nodes = displaced_thermal_nodes(nbar, 0.0);
  cd value = 0.0;
  for (const auto& node : nodes) {
    const Vec x = coherent_state(h.fock_dim, node.gamma);
    value += node.weight * (x.adjoint() * (contracted * x))(0, 0);
  }
  return value;
}

}  // namespace squeezeion::oracle
