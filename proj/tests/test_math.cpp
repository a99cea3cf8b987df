#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "squeezeion/math.hpp"
#include "squeezeion/units.hpp"

using namespace squeezeion;

TEST_CASE("sinc fills the removable singularity") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(0.7) == doctest::Approx(std::sin(0.7) / 0.7).epsilon(1e-15));
  CHECK(sinc(pi) == doctest::Approx(0.0).epsilon(1e-15));
  // Smoothness across the switch to the series branch near zero.
  CHECK(sinc(1e-8) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sinc(cd(0.0, 0.0)) == cd(1.0, 0.0));
  const cd z(0.3, -0.4);
  const cd direct = std::sin(z) / z;
  CHECK(std::abs(sinc(z) - direct) < 1e-15);
}

TEST_CASE("bessel_j0 matches reference values") {
  CHECK(bessel_j0(0.0) == 1.0);
  // First zero of J0 and a mid-range value, both from standard tables.
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-14);
  CHECK(bessel_j0(1.3) == doctest::Approx(0.6200859895615).epsilon(1e-12));
  CHECK(bessel_j0(-1.3) == bessel_j0(1.3));
}

TEST_CASE("integer powers") {
  CHECK(powi(2.0, 10) == 1024.0);
  CHECK(powi(3.0, 0) == 1.0);
  CHECK(powi(2.0, -2) == 0.25);
  CHECK(powi(-2.0, 3) == -8.0);
  CHECK(cpowi(cd(0.0, 1.0), 4) == cd(1.0, 0.0));
  const cd b(0.8, -0.3);
  CHECK(std::abs(cpowi(b, 5) - b * b * b * b * b) < 1e-15);
  CHECK(std::abs(cpowi(b, -2) - 1.0 / (b * b)) < 1e-15);
}

TEST_CASE("parabolic_vertex recovers the minimum of an exact parabola") {
  auto y = [](double x) { return 3.0 * (x - 0.3) * (x - 0.3) + 2.0; };
  CHECK(parabolic_vertex(0.0, 1.0, 2.0, y(0.0), y(1.0), y(2.0)) ==
        doctest::Approx(0.3).epsilon(1e-12));
  // Collinear points have no curvature: fall back to the middle abscissa.
  CHECK(parabolic_vertex(0.0, 1.0, 2.0, 1.0, 2.0, 3.0) == 1.0);
  // Negative curvature (maximum): also falls back.
  CHECK(parabolic_vertex(0.0, 1.0, 2.0, 0.0, 1.0, 0.0) == 1.0);
}

TEST_CASE("log_grid is inclusive, sized, and geometric") {
  const auto grid = log_grid(1e-5, 1e-2, 61);
  REQUIRE(grid.size() == 61);
  CHECK(grid.front() == 1e-5);
  CHECK(grid.back() == 1e-2);
  const double ratio = grid[1] / grid[0];
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    CHECK(grid[i] > grid[i - 1]);
    CHECK(grid[i + 1] / grid[i] == doctest::Approx(ratio).epsilon(1e-12));
  }
}

TEST_CASE("gauss_laguerre reproduces exponential moments") {
  std::vector<double> nodes, weights;
  gauss_laguerre(32, nodes, weights);
  REQUIRE(nodes.size() == 32);
  REQUIRE(weights.size() == 32);
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    m0 += weights[i];
    m1 += weights[i] * nodes[i];
    m2 += weights[i] * nodes[i] * nodes[i];
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));  // integral of e^{-x}
  CHECK(m1 == doctest::Approx(1.0).epsilon(1e-12));  // mean of Exp(1)
  CHECK(m2 == doctest::Approx(2.0).epsilon(1e-12));  // second moment
}

TEST_CASE("nelder_mead minimizes Rosenbrock") {
  auto rosenbrock = [](const Eigen::VectorXd& x) {
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    return a * a + 100.0 * b * b;
  };
  Eigen::VectorXd start(2), step(2);
  start << -1.2, 1.0;
  step << 0.5, 0.5;
  const auto result = nelder_mead(rosenbrock, start, step, 1e-10, 20000);
  CHECK(result.converged);
  CHECK(result.x(0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(result.x(1) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("nelder_mead converges when the minimum value is exactly zero") {
  // Least-squares objectives on noiseless data bottom out at zero; the
  // terminator must not insist on relative function-spread there.
  auto quadratic = [](const Eigen::VectorXd& x) {
    const double a = x(0) - 2.0;
    const double b = x(1) + 1.0;
    return a * a + 0.5 * b * b;
  };
  Eigen::VectorXd start(2), step(2);
  start << 10.0, -7.0;
  step << 1.0, 1.0;
  const auto result = nelder_mead(quadratic, start, step, 1e-9, 5000);
  CHECK(result.converged);
  CHECK(result.iterations < 5000);
  CHECK(result.x(0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(result.x(1) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(result.fmin < 1e-12);
}

TEST_CASE("nelder_mead is deterministic") {
  auto fn = [](const Eigen::VectorXd& x) {
    return std::pow(x(0) - 0.5, 4) + std::abs(x(1));
  };
  Eigen::VectorXd start(2), step(2);
  start << 3.0, 2.0;
  step << 0.7, 0.7;
  const auto a = nelder_mead(fn, start, step);
  const auto b = nelder_mead(fn, start, step);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x(0) == b.x(0));
  CHECK(a.x(1) == b.x(1));
  CHECK(a.fmin == b.fmin);
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("hello") != fnv1a64("hellp"));
}

TEST_CASE("format_double round trips and is canonical") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  const std::vector<double> values = {0.1,     -0.1,   1e300,  -2.5e-7,
                                      12345.6789, 0.5, 1.0 / 3.0,
                                      std::numeric_limits<double>::min(),
                                      std::numeric_limits<double>::denorm_min()};
  for (const double v : values) {
    const std::string s = format_double(v);
    double back = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(ec == std::errc());
    CHECK(ptr == s.data() + s.size());
    CHECK(back == v);
  }
}

TEST_CASE("parallel_for covers every index exactly once") {
  const std::size_t n = 1000;
  std::vector<std::uint64_t> out(n, 0);
  parallel_for(n, [&](std::size_t i) { out[i] = i * i; });
  for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == i * i);
  CHECK(effective_thread_count(n) >= 1);
  parallel_for(0, [&](std::size_t) { FAIL("body must not run for n = 0"); });
}
