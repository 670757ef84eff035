#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fluct/quadrature.hpp"

using namespace fluct;

TEST(Quadrature, SmoothIntegrals) {
  const auto r = integrate_adaptive([](double x) { return std::exp(-x) * std::cos(x); }, 0.0, 40.0, {1e-12, 0.0, 1000});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  const auto s = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, {1e-13, 0.0, 100});
  EXPECT_NEAR(s.value, 2.0, 1e-13);
}

TEST(Quadrature, ErrorEstimateBoundsTrueErrorForEndpointSingularity) {
  // sqrt(x) on [0, w]: a single panel; the estimate has to cover the real error.
  for (double w : {1.0, 100.0, 1e4}) {
    AdaptiveOptions opt{1e-3, 0.0, 1};
    const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, w, opt);
    const double exact = 2.0 / 3.0 * std::pow(w, 1.5);
    EXPECT_GE(r.error, std::abs(r.value - exact)) << w;
  }
  const auto full = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 100.0, {1e-12, 0.0, 2000});
  EXPECT_TRUE(full.converged);
  EXPECT_NEAR(full.value, 2000.0 / 3.0, 1e-9);
}

TEST(Quadrature, BreakpointsHandleKinks) {
  auto f = [](double x) { return std::abs(x - 0.3) + std::abs(x - 0.71); };
  const std::vector<double> bp{0.3, 0.71};
  const auto r = integrate_adaptive(f, 0.0, 1.0, {1e-14, 0.0, 50}, bp);
  EXPECT_TRUE(r.converged);
  const double exact = (0.3 * 0.3 + 0.7 * 0.7) / 2.0 + (0.71 * 0.71 + 0.29 * 0.29) / 2.0;
  EXPECT_NEAR(r.value, exact, 1e-14);
  EXPECT_LE(r.intervals, 4);
}

TEST(Quadrature, OscillatoryLongRange) {
  const double w = 200.0;
  const auto r = integrate_adaptive([w](double x) { return std::cos(w * x) * std::exp(-x); }, 0.0, 50.0, {1e-10, 0.0, 5000});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0 / (1.0 + w * w), 1e-12);
}

TEST(Quadrature, NonConvergenceIsReportedWithBestEstimate) {
  auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.5)); };
  const auto r = integrate_adaptive(f, 0.0, 1.0, {1e-14, 0.0, 20});
  EXPECT_FALSE(r.converged);
  try {
    integrate_or_throw(f, 0.0, 1.0, {1e-14, 0.0, 20}, "probe");
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NEAR(e.best_estimate(), 2.0 * std::sqrt(2.0), 0.1);
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Quadrature, SemiInfinite) {
  const auto r = integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, {1e-10, 0.0, 2000});
  EXPECT_NEAR(r.value, std::numbers::pi / 2.0, 1e-9);
}

TEST(Quadrature, ZeroIntegrandConvergesImmediately) {
  const auto r = integrate_adaptive([](double) { return 0.0; }, 0.0, 1.0, {1e-10, 0.0, 100});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.value, 0.0);
}
