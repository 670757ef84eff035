// Dual Allen wrench geometric factor.
//
// Per tag, J-hat = int_{-a}^{a} dy int_0^b dx x y phi(R)/R^8 with
// R^2 = x^2 + (a + y)^2 (scaled lengths). In polar coordinates about the
// junction, x = rho cos(t), a + y = rho sin(t), the angular integral is
// elementary and leaves
//   J-hat = int rho^2 g(rho) [rho (s_hi^2 - s_lo^2)/2 - a (s_hi - s_lo)] drho
// with g = phi/R^8, s_lo = sqrt(1 - min(1, b/rho)^2), s_hi = min(1, 2a/rho).
// The constant -4/9 in g integrates to zero against x y over the rectangle and
// is dropped at small a, b to avoid cancellation.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fluct/errors.hpp"
#include "fluct/geometry.hpp"
#include "fluct/quadrature.hpp"

namespace fluct {

namespace {

// Breakpoints every half period of the sin(2 rho) oscillation on [lo, hi].
void add_oscillation_breaks(std::vector<double>& bp, double lo, double hi) {
  const double step = 0.5 * std::numbers::pi;
  const double n = std::floor((hi - lo) / step);
  for (double k = 1; k <= n && k < 1e6; ++k) bp.push_back(lo + k * step);
}

void check_args(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("wrench: a and b must be positive and finite");
}

}  // namespace

Estimate wrench_jhat(double a_tilde, double b_tilde, const QuadratureSpec& q) {
  check_args(a_tilde, b_tilde);
  const double a = a_tilde, b = b_tilde;
  const PhiEvalPolicy pol = q.phi_policy;
  const double rho_max = std::hypot(b, 2.0 * a);
  // The shift pays off only while rho^3 stays small.
  const bool drop_lead = rho_max < 2.0;
  auto integrand = [a, b, pol, drop_lead](double rho) {
    const double c = std::min(1.0, b / rho);
    const double s_lo = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double s_hi = std::min(1.0, 2.0 * a / rho);
    if (s_hi <= s_lo) return 0.0;
    const double ang = 0.5 * rho * (s_hi * s_hi - s_lo * s_lo) - a * (s_hi - s_lo);
    const double g = drop_lead ? phi_over_r8_subleading(rho, pol) : phi_over_r8(rho, pol);
    return rho * rho * g * ang;
  };
  std::vector<double> bp{std::min(b, 2.0 * a), std::max(b, 2.0 * a)};
  add_oscillation_breaks(bp, 0.0, rho_max);
  std::sort(bp.begin(), bp.end());
  AdaptiveOptions opt = q.adaptive();
  opt.max_subdivisions = std::max<int>(opt.max_subdivisions, static_cast<int>(bp.size()) * 4);
  const auto r = integrate_or_throw(integrand, 0.0, rho_max, opt,
                                    "wrench_jhat(a~=" + std::to_string(a) + ", b~=" + std::to_string(b) + ")", bp);
  return {r.value, r.error};
}

Estimate wrench_jhat_direct(double a_tilde, double b_tilde, const QuadratureSpec& q) {
  check_args(a_tilde, b_tilde);
  const double a = a_tilde, b = b_tilde;
  const PhiEvalPolicy pol = q.phi_policy;
  AdaptiveOptions inner = q.adaptive();
  inner.rel_tol = std::max(1e-14, 0.01 * q.rel_tol);
  inner.abs_tol = 0.0;
  std::vector<double> xbp;
  add_oscillation_breaks(xbp, 0.0, b);
  double inner_err = 0.0;
  auto row = [&](double y) {
    const double s = a + y;
    auto f = [s, pol](double x) { return x * phi_over_r8(std::hypot(x, s), pol); };
    const auto r = integrate_adaptive(f, 0.0, b, inner, xbp);
    inner_err = std::max(inner_err, std::abs(y) * r.error);
    return y * r.value;
  };
  std::vector<double> ybp;
  add_oscillation_breaks(ybp, -a, a);
  const auto r = integrate_adaptive(row, -a, a, q.adaptive(), ybp);
  const double err = r.error + 2.0 * a * inner_err;
  if (!r.converged)
    throw ConvergenceError("wrench_jhat_direct did not converge", r.value, err,
                           "a~=" + std::to_string(a) + ", b~=" + std::to_string(b));
  return {r.value, err};
}

WrenchFactor wrench_JAB_reduced(double a, double b, double area_a, double area_b, double omega,
                                const QuadratureSpec& q) {
  check_args(a, b);
  if (!(area_a > 0.0) || !(area_b > 0.0)) throw DomainError("wrench: cross sections must be positive");
  if (!(omega > 0.0)) throw DomainError("wrench: omega must be positive");
  q.validate();
  const Estimate jh = wrench_jhat(omega * a, omega * b, q);
  const double pref = 2.0 * std::pow(omega, 4) * area_a * area_b;
  return {pref * jh.value, jh.value, jh.error};
}

}  // namespace fluct
