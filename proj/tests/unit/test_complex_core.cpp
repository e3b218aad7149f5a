#include <cmath>

#include "doctest.h"
#include "pbounds/complex_core.hpp"
#include "pbounds/errors.hpp"

using namespace pbounds;

namespace {
bool close(Complex a, Complex b, double tol = 1e-14) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }
}  // namespace

TEST_CASE("branch_sqrt stays in the closed upper half-plane") {
  CHECK(close(branch_sqrt(4.0), 2.0));
  CHECK(close(branch_sqrt(-4.0), Complex(0.0, 2.0)));
  CHECK(close(branch_sqrt(Complex(0.0, 1.0)), std::polar(1.0, kPi / 4)));
  CHECK(close(branch_sqrt(Complex(0.0, -1.0)), std::polar(1.0, 3 * kPi / 4)));
  CHECK(branch_sqrt(0.0) == Complex(0.0));
  for (double th = 0.01; th < 2 * kPi; th += 0.37) {
    const Complex z = std::polar(2.5, th);
    const Complex s = branch_sqrt(z);
    CHECK(s.imag() >= 0.0);
    CHECK(close(s * s, z, 1e-13));
  }
}

TEST_CASE("branch_sqrt on the cut is the limit from above") {
  const Complex above = branch_sqrt(Complex(3.0, 1e-300));
  CHECK(close(branch_sqrt(Complex(3.0, -0.0)), above));
  CHECK(close(branch_sqrt(Complex(3.0, -1e-12)), -above, 1e-10));
}

TEST_CASE("branch_log matches the sqrt branch") {
  CHECK(close(branch_log(1.0), 0.0));
  CHECK(close(branch_log(-1.0), Complex(0.0, kPi)));
  CHECK(close(branch_log(Complex(0.0, -2.0)), Complex(std::log(2.0), 1.5 * kPi)));
  CHECK_THROWS_AS(branch_log(0.0), DomainError);
  for (double th = 0.05; th < 2 * kPi; th += 0.41) {
    const Complex z = std::polar(0.7, th);
    CHECK(close(std::exp(0.5 * branch_log(z)), branch_sqrt(z), 1e-13));
    CHECK(branch_arg(z) >= 0.0);
    CHECK(branch_arg(z) < 2 * kPi);
  }
}

TEST_CASE("Stolz sector boundary is included") {
  const StolzParams p(kPi / 4);
  CHECK(in_stolz(std::polar(1.0, kPi / 2), p));
  CHECK(in_stolz(Complex(1.0, 1.0), p));
  CHECK_FALSE(in_stolz(Complex(1.0, 0.99), p));
  CHECK_FALSE(in_stolz(Complex(1.0, -1.0), p));
  CHECK_THROWS_AS(in_stolz(0.0, p), DomainError);
  CHECK_THROWS_AS(StolzParams(0.0), DomainError);
  CHECK_THROWS_AS(StolzParams(kPi / 2), DomainError);
}
