#include "squeezeion/math.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "squeezeion/errors.hpp"

namespace squeezeion {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

cd sinc(cd z) {
  if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

double powi(double base, long long n) {
  if (n < 0) return 1.0 / powi(base, -n);
  double result = 1.0;
  double acc = base;
  for (long long k = n; k > 0; k >>= 1) {
    if (k & 1) result *= acc;
    if (k > 1) acc *= acc;
  }
  return result;
}

cd cpowi(cd base, long long n) {
  if (n < 0) return 1.0 / cpowi(base, -n);
  cd result = 1.0;
  cd acc = base;
  for (long long k = n; k > 0; k >>= 1) {
    if (k & 1) result *= acc;
    if (k > 1) acc *= acc;
  }
  return result;
}

double parabolic_vertex(double x0, double x1, double x2,
                        double y0, double y1, double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (!(curvature > 0.0)) return x1;
  const double vertex = 0.5 * (x0 + x1 - d01 / curvature);
  // Keep the refinement inside the bracket.
  return std::clamp(vertex, std::min(x0, x2), std::max(x0, x2));
}

std::vector<double> log_grid(double lo, double hi, int n) {
  require(lo > 0.0 && hi > lo && n >= 2, errc::domain_error,
          "log_grid requires 0 < lo < hi and n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

void gauss_laguerre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  require(n >= 1, errc::domain_error, "gauss_laguerre requires n >= 1");
  // Jacobi matrix for Laguerre polynomials: diag 2i+1, offdiag i.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = 2.0 * i + 1.0;
    if (i + 1 < n) {
      J(i, i + 1) = static_cast<double>(i + 1);
      J(i + 1, i) = static_cast<double>(i + 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[static_cast<std::size_t>(i)] = v0 * v0;  // total weight integrates e^{-x} to 1
  }
}

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                             const Eigen::VectorXd& start,
                             const Eigen::VectorXd& step,
                             double rel_tol,
                             int max_iterations) {
  const int dim = static_cast<int>(start.size());
  require(dim >= 1 && step.size() == start.size(), errc::domain_error,
          "nelder_mead dimension mismatch");
  const int m = dim + 1;
  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(m), start);
  std::vector<double> value(static_cast<std::size_t>(m));
  for (int i = 0; i < dim; ++i) simplex[static_cast<std::size_t>(i + 1)](i) += step(i);
  for (int i = 0; i < m; ++i) value[static_cast<std::size_t>(i)] = fn(simplex[static_cast<std::size_t>(i)]);

  auto order = [&] {
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return value[static_cast<std::size_t>(a)] < value[static_cast<std::size_t>(b)];
    });
    std::vector<Eigen::VectorXd> s2;
    std::vector<double> v2;
    s2.reserve(static_cast<std::size_t>(m));
    v2.reserve(static_cast<std::size_t>(m));
    for (int i : idx) {
      s2.push_back(simplex[static_cast<std::size_t>(i)]);
      v2.push_back(value[static_cast<std::size_t>(i)]);
    }
    simplex.swap(s2);
    value.swap(v2);
  };

  NelderMeadResult result;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    order();
    const double fbest = value.front(), fworst = value.back();
    const double spread = std::abs(fworst - fbest);
    const double scale = std::abs(fbest) + std::abs(fworst);
    double size = 0.0;
    for (int i = 1; i < m; ++i)
      size = std::max(size, (simplex[static_cast<std::size_t>(i)] - simplex[0]).norm());
    const double extent = simplex[0].norm();
    // Stop when the simplex has collapsed in parameter space OR the values have
    // flattened relative to their magnitude. The tests must not be conjoined:
    // a least-squares objective whose minimum is exactly zero keeps
    // spread/scale at O(1) all the way down, so only the size test can fire.
    if (size <= rel_tol * (extent + 1.0) ||
        (scale > 0.0 && spread <= rel_tol * scale)) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < m - 1; ++i) centroid += simplex[static_cast<std::size_t>(i)];
    centroid /= static_cast<double>(m - 1);

    const Eigen::VectorXd& worst = simplex.back();
    Eigen::VectorXd reflected = centroid + (centroid - worst);
    double fr = fn(reflected);
    if (fr < value.front()) {
      Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst);
      double fe = fn(expanded);
      if (fe < fr) {
        simplex.back() = expanded;
        value.back() = fe;
      } else {
        simplex.back() = reflected;
        value.back() = fr;
      }
    } else if (fr < value[static_cast<std::size_t>(m - 2)]) {
      simplex.back() = reflected;
      value.back() = fr;
    } else {
      Eigen::VectorXd contracted = centroid + 0.5 * (worst - centroid);
      double fc = fn(contracted);
      if (fc < value.back()) {
        simplex.back() = contracted;
        value.back() = fc;
      } else {
        for (int i = 1; i < m; ++i) {
          simplex[static_cast<std::size_t>(i)] =
              simplex[0] + 0.5 * (simplex[static_cast<std::size_t>(i)] - simplex[0]);
          value[static_cast<std::size_t>(i)] = fn(simplex[static_cast<std::size_t>(i)]);
        }
      }
    }
  }
  order();
  result.x = simplex.front();
  result.fmin = value.front();
  result.iterations = iter;
  if (iter < max_iterations) result.converged = true;
  return result;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

int effective_thread_count(std::size_t n) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned cap = hw;
  if (const char* env = std::getenv("SQUEEZEION_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed >= 1) cap = static_cast<unsigned>(parsed);
  }
  const std::size_t want = std::min<std::size_t>(n, std::min(hw, cap));
  return static_cast<int>(std::max<std::size_t>(1, want));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const int workers = effective_thread_count(n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace squeezeion
