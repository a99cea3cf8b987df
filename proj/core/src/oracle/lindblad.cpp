#include "squeezeion/oracle/lindblad.hpp"

#include <cmath>
#include <vector>

#include "squeezeion/errors.hpp"
#include "squeezeion/oracle/fock.hpp"

namespace squeezeion::oracle {

namespace {

Mat single_site(int n_spins, int site, const Eigen::Matrix2cd& op) {
  Mat out = Mat::Ones(1, 1);
  for (int i = n_spins - 1; i >= 0; --i) {
    const Eigen::Matrix2cd factor =
        i == site ? op : Eigen::Matrix2cd::Identity();
    Mat next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        next.block(r * out.rows(), c * out.cols(), out.rows(), out.cols()) =
            factor(r, c) * out;
    out = std::move(next);
  }
  return out;
}

// Lindblad generator assembled from dense operators; n_spins <= 3 keeps the
// register at 8x8, so clarity wins over sparsity.
struct Generator {
  Mat hamiltonian;
  std::vector<Mat> jump_ops;
  std::vector<double> rates;
  std::vector<Mat> jump_sq;  // L^dag L per channel

  Mat apply(const Mat& rho) const {
    Mat out = cd(0.0, -1.0) * (hamiltonian * rho - rho * hamiltonian);
    for (std::size_t k = 0; k < jump_ops.size(); ++k) {
      if (rates[k] == 0.0) continue;
      out += rates[k] * (jump_ops[k] * rho * jump_ops[k].adjoint() -
                         0.5 * (jump_sq[k] * rho + rho * jump_sq[k]));
    }
    return out;
  }
};

Generator build_generator(int n_spins, double J, const DecoherenceRates& rates) {
  Eigen::Matrix2cd sz, sminus, splus;
  sz << 1.0, 0.0, 0.0, -1.0;     // basis bit 0 = spin-up
  sminus << 0.0, 0.0, 1.0, 0.0;  // |down><up|
  splus << 0.0, 1.0, 0.0, 0.0;

  Generator gen;
  const int dim = 1 << n_spins;
  gen.hamiltonian = Mat::Zero(dim, dim);
  std::vector<Mat> sz_site(static_cast<std::size_t>(n_spins));
  for (int i = 0; i < n_spins; ++i)
    sz_site[static_cast<std::size_t>(i)] = single_site(n_spins, i, sz);
  for (int i = 0; i < n_spins; ++i)
    for (int j = i + 1; j < n_spins; ++j)
      gen.hamiltonian += (J / n_spins) * sz_site[static_cast<std::size_t>(i)] *
                         sz_site[static_cast<std::size_t>(j)];

  for (int i = 0; i < n_spins; ++i) {
    gen.jump_ops.push_back(single_site(n_spins, i, sminus));
    gen.rates.push_back(rates.gamma_ud);
    gen.jump_ops.push_back(single_site(n_spins, i, splus));
    gen.rates.push_back(rates.gamma_du);
    gen.jump_ops.push_back(sz_site[static_cast<std::size_t>(i)]);
    gen.rates.push_back(0.25 * rates.gamma_el);
  }
  for (const Mat& op : gen.jump_ops) gen.jump_sq.push_back(op.adjoint() * op);
  return gen;
}

Mat rk4_run(const Generator& gen, const Mat& rho0, double t, int steps) {
  Mat rho = rho0;
  const double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Mat k1 = gen.apply(rho);
    const Mat k2 = gen.apply(rho + 0.5 * dt * k1);
    const Mat k3 = gen.apply(rho + 0.5 * dt * k2);
    const Mat k4 = gen.apply(rho + dt * k3);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace

Mat plus_x_density(int n_spins) {
  require(n_spins >= 1 && n_spins <= 3, errc::domain_error,
          "plus_x_density: n_spins must be in [1, 3]");
  const int dim = 1 << n_spins;
  return Mat::Constant(dim, dim, cd(1.0 / dim, 0.0));
}

Mat lindblad_evolve(const Mat& rho0, double J, const DecoherenceRates& rates,
                    double t, int n_spins) {
  require(n_spins >= 1 && n_spins <= 3, errc::domain_error,
          "lindblad_evolve: n_spins must be in [1, 3]");
  require(t >= 0.0, errc::domain_error, "lindblad_evolve: t must be >= 0");
  rates.validate();
  const int dim = 1 << n_spins;
  require(rho0.rows() == dim && rho0.cols() == dim, errc::domain_error,
          "lindblad_evolve: density matrix dimension mismatch");
  if (t == 0.0) return rho0;

  const Generator gen = build_generator(n_spins, J, rates);
  Mat coarse = rk4_run(gen, rho0, t, 512);
  for (int steps = 1024; steps <= 65536; steps *= 2) {
    const Mat fine = rk4_run(gen, rho0, t, steps);
    const double diff = (fine - coarse).cwiseAbs().maxCoeff();
    if (diff <= 1e-11) {
      const double trace_drift = std::abs(fine.trace() - cd(1.0, 0.0));
      require(trace_drift <= 1e-9, errc::step_failure,
              "lindblad_evolve: trace drift exceeds 1e-9");
      return fine;
    }
    coarse = fine;
  }
  fail(errc::step_failure, "lindblad_evolve: step halving did not converge");
}

void apply_spin_motion_dephasing(Mat& rho, double kappa, int n_spins) {
  require(kappa >= 0.0, errc::domain_error, "dephasing weight must be >= 0");
  const int dim = 1 << n_spins;
  require(rho.rows() == dim && rho.cols() == dim, errc::domain_error,
          "dephasing: density matrix dimension mismatch");
  for (int s = 0; s < dim; ++s)
    for (int sp = 0; sp < dim; ++sp) {
      const double dw = static_cast<double>(spin_weight(s, n_spins) -
                                            spin_weight(sp, n_spins));
      rho(s, sp) *= std::exp(-0.5 * kappa * dw * dw);
    }
}

cd lindblad_sigma_plus(const Mat& rho, int n_spins, int site) {
  require(site >= 0 && site < n_spins, errc::domain_error, "site out of range");
  Eigen::Matrix2cd splus;
  splus << 0.0, 1.0, 0.0, 0.0;
  return (single_site(n_spins, site, splus) * rho).trace();
}

SpinMoments lindblad_moments(const Mat& rho, int n_spins) {
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << cd(0.0, 0.0), cd(0.0, -1.0), cd(0.0, 1.0), cd(0.0, 0.0);
  sz << 1.0, 0.0, 0.0, -1.0;
  const int dim = 1 << n_spins;
  Mat big_sx = Mat::Zero(dim, dim), big_sy = big_sx, big_sz = big_sx;
  for (int i = 0; i < n_spins; ++i) {
    big_sx += 0.5 * single_site(n_spins, i, sx);
    big_sy += 0.5 * single_site(n_spins, i, sy);
    big_sz += 0.5 * single_site(n_spins, i, sz);
  }
  SpinMoments mom;
  mom.sx = (big_sx * rho).trace().real();
  mom.sy = (big_sy * rho).trace().real();
  mom.sz = (big_sz * rho).trace().real();
  mom.var_sy = (big_sy * big_sy * rho).trace().real() - mom.sy * mom.sy;
  mom.var_sz = (big_sz * big_sz * rho).trace().real() - mom.sz * mom.sz;
  mom.cov_yz =
      (0.5 * (big_sy * big_sz + big_sz * big_sy) * rho).trace().real() -
      mom.sy * mom.sz;
  return mom;
}

RamseyXi2 lindblad_xi2(int n_spins, double J, const DecoherenceRates& rates,
                       cd alpha, double nbar, double t) {
  require(n_spins >= 2 && n_spins <= 3, errc::domain_error,
          "lindblad_xi2: n_spins must be 2 or 3");
  require(nbar >= 0.0, errc::domain_error, "lindblad_xi2: nbar must be >= 0");
  Mat rho = lindblad_evolve(plus_x_density(n_spins), J, rates, t, n_spins);
  const double kappa = std::norm(alpha) * (2.0 * nbar + 1.0);
  apply_spin_motion_dephasing(rho, kappa, n_spins);
  return ramsey_xi2(lindblad_moments(rho, n_spins), n_spins);
}

}  // namespace squeezeion::oracle
