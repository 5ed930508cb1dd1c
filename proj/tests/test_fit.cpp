#include "doctest.h"

#include <cmath>

#include "antihom/fit.hpp"
#include "antihom/linalg.hpp"

using namespace antihom;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

}  // namespace

TEST_CASE("noiseless Gaussian round trip") {
  const auto z = grid(-60, 60, 61);
  struct Case {
    double b, a, z0, w;
  };
  for (const Case c : {Case{1.0, -1.0, 0.0, 8.7}, Case{1.0, 1.0, 3.0, 12.0}, Case{0.125, 0.125, -5.5, 6.0},
                       Case{1.0, -0.85, 1.2, 20.0}}) {
    std::vector<double> y;
    for (double x : z) y.push_back(c.b + c.a * std::exp(-(x - c.z0) * (x - c.z0) / (2 * c.w * c.w)));
    const auto f = fit_gaussian(z, y);
    REQUIRE(f.status == FitStatus::Converged);
    CHECK(f.baseline == doctest::Approx(c.b).epsilon(1e-6));
    CHECK(f.amplitude == doctest::Approx(c.a).epsilon(1e-6));
    CHECK(*f.center == doctest::Approx(c.z0).epsilon(1e-6).scale(c.w));
    CHECK(*f.width == doctest::Approx(c.w).epsilon(1e-6));
  }
}

TEST_CASE("flat curve leaves center and width unset") {
  const auto z = grid(-10, 10, 21);
  const std::vector<double> y(21, 0.5);
  const auto f = fit_gaussian(z, y);
  CHECK(f.status == FitStatus::Converged);
  CHECK(f.baseline == doctest::Approx(0.5));
  CHECK_FALSE(f.center.has_value());
  CHECK_FALSE(f.width.has_value());
}

TEST_CASE("too few points fail") {
  const auto z = grid(-1, 1, 5);
  const std::vector<double> y(5, 1.0);
  CHECK(fit_gaussian(z, y).status == FitStatus::Failed);
}

TEST_CASE("noiseless sinusoid round trip") {
  const auto th = grid(0, kPi * 35 / 36, 36);
  for (double phase : {0.0, 0.4, -1.2}) {
    std::vector<double> y;
    for (double t : th) y.push_back(0.3 + 0.2 * std::cos(2 * (t - phase)));
    const auto f = fit_sinusoid(th, y);
    REQUIRE(f.status == FitStatus::Converged);
    CHECK(f.offset == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(f.amplitude == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(f.visibility() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(std::remainder(f.phase - phase, kPi) == doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("degenerate sinusoid input fails") {
  const std::vector<double> th(10, 0.3);
  const std::vector<double> y(10, 1.0);
  CHECK(fit_sinusoid(th, y).status == FitStatus::Failed);
  const auto g = grid(0, 3, 10);
  const std::vector<double> neg(10, -1.0);
  CHECK(fit_sinusoid(g, neg).status == FitStatus::Failed);
}
