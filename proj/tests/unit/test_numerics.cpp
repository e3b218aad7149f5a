#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pbounds/errors.hpp"
#include "pbounds/extrapolation.hpp"
#include "pbounds/grading.hpp"
#include "pbounds/interp.hpp"
#include "pbounds/parallel.hpp"
#include "pbounds/quadrature.hpp"

using namespace pbounds;

TEST_CASE("Gauss-Kronrod integrates smooth and peaked functions") {
  auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-13);
  // Lorentzian of width 1e-4: ∫ y/((x−c)²+y²) = atan terms
  const double y = 1e-4, c = 0.3;
  const std::vector<double> br{0.0, c, 1.0};
  auto p = integrate([&](double x) { return y / ((x - c) * (x - c) + y * y); }, br,
                     {.abs_tol = 1e-12, .rel_tol = 0.0, .max_panels = 20000});
  CHECK(std::abs(p.value - (std::atan((1.0 - c) / y) + std::atan(c / y))) < 1e-10);
}

TEST_CASE("quadrature reports the worst subinterval when the budget runs out") {
  auto f = [](double x) { return std::sin(1.0 / x); };
  CHECK_THROWS_AS(integrate(f, 1e-6, 1.0, {.abs_tol = 1e-15, .rel_tol = 0.0, .max_panels = 8}),
                  QuadratureError);
  auto r = integrate(f, 1e-6, 1.0,
                     {.abs_tol = 1e-15, .rel_tol = 0.0, .max_panels = 8, .throw_on_failure = false});
  CHECK_FALSE(r.converged);
  CHECK(r.worst.first < r.worst.second);
}

TEST_CASE("Richardson extrapolation detects the order") {
  std::vector<double> h, v;
  for (int k = 0; k < 6; ++k) {
    h.push_back(std::pow(10.0, -k));
    v.push_back(1.0 + 2.0 * h.back() * h.back());
  }
  const LimitEstimate e = extrapolate_to_zero(h, v);
  CHECK(std::abs(e.value - 1.0) < 1e-12);
  CHECK(e.order == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(e.monotone);
}

TEST_CASE("extrapolation flags oscillating sequences") {
  const std::vector<double> h{1.0, 0.5, 0.25, 0.125};
  const std::vector<double> v{1.0, 2.0, 1.0, 2.0};
  CHECK_FALSE(extrapolate_to_zero(h, v).monotone);
  const std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(extrapolate_to_zero(bad, bad), DomainError);
}

TEST_CASE("monotone cubic never overshoots the data") {
  const std::vector<double> x{0, 1, 2, 3, 4}, y{0, 0, 1, 1, 1};
  const MonotoneCubic m(x, y);
  for (double t = 0.0; t <= 4.0; t += 0.01) {
    CHECK(m(t) >= -1e-15);
    CHECK(m(t) <= 1.0 + 1e-15);
  }
}

TEST_CASE("natural spline interpolates its knots and reproduces lines") {
  std::vector<double> x, y;
  for (int i = 0; i <= 20; ++i) {
    x.push_back(0.1 * i * i);
    y.push_back(std::sin(x.back()));
  }
  const CubicSpline s(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(s(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
  const std::vector<double> lx{0, 1, 3, 4}, ly{1, 3, 7, 9};
  const CubicSpline line(lx, ly);
  CHECK(line(2.5) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(line.derivative(0.3) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("graded breakpoints cluster around centres") {
  const auto b = graded_breakpoints({0.5}, 0.0, 1.0, 1e-3);
  REQUIRE(!b.empty());
  CHECK(b.front() > 0.0);
  CHECK(b.back() < 1.0);
  CHECK(std::is_sorted(b.begin(), b.end()));
  bool near = false;
  for (double x : b) near = near || std::abs(x - 0.5) <= 2.5e-4 + 1e-15;
  CHECK(near);
}

TEST_CASE("golden_max finds an interior maximum") {
  const double x = golden_max([](double t) { return -(t - 0.3) * (t - 0.3); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(x - 0.3) < 1e-8);
}

TEST_CASE("parallel_for visits each index once and rethrows the lowest failure") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  try {
    parallel_for(100, 8, [](std::size_t i) {
      if (i == 17 || i == 63) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}
