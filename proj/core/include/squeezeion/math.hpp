#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace squeezeion {

using cd = std::complex<double>;

// sin(x)/x with the removable singularity filled in.
double sinc(double x);
cd sinc(cd z);

// Regular Bessel function of the first kind, order zero.
double bessel_j0(double x);

// base^n for integer n (exact handling of signs/zero; n may be negative).
double powi(double base, long long n);
cd cpowi(cd base, long long n);

// Vertex of the parabola through (x0,y0),(x1,y1),(x2,y2); falls back to x1
// when the points are collinear or the curvature is non-positive.
double parabolic_vertex(double x0, double x1, double x2,
                        double y0, double y1, double y2);

// n logarithmically spaced points on [lo, hi] inclusive (lo, hi > 0).
std::vector<double> log_grid(double lo, double hi, int n);

// Gauss-Laguerre nodes/weights on [0, inf) with weight e^{-x}
// (Golub-Welsch on the symmetric tridiagonal Jacobi matrix).
void gauss_laguerre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct NelderMeadResult {
  Eigen::VectorXd x;
  double fmin{};
  int iterations{};
  bool converged{};
};

// Downhill-simplex minimizer with relative simplex-size/function-spread
// termination. Deterministic for fixed inputs.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                             const Eigen::VectorXd& start,
                             const Eigen::VectorXd& step,
                             double rel_tol = 1e-8,
                             int max_iterations = 5000);

// FNV-1a 64-bit hash of a byte string (used for config fingerprints).
std::uint64_t fnv1a64(std::string_view bytes);

// Shortest decimal string that round-trips to the same double ('.' decimal
// separator, no locale dependence). Used by all emitters for determinism.
std::string format_double(double v);

// Deterministic index-ordered parallel loop: body(i) for i in [0, n).
// Worker count honors the SQUEEZEION_THREADS environment cap; every body(i)
// must write only to slot i of pre-sized outputs, so results are independent
// of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Threads that parallel_for will use for `n` independent items.
int effective_thread_count(std::size_t n);

}  // namespace squeezeion
