#include "fluct/kernels.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "fluct/errors.hpp"
#include "fluct/quadrature.hpp"
#include "fluct/units.hpp"

namespace fluct {

ThermalPair ThermalPair::from_kelvin(double env_k, double body_k) {
  if (!(env_k >= 0.0) || !(body_k >= 0.0)) throw DomainError("temperatures must be non-negative");
  const double kb = default_units().boltzmann();
  return {env_k * kb, body_k * kb};
}

double bose(double x) {
  if (!(x > 0.0)) throw DomainError("bose: argument must be positive");
  if (std::isinf(x)) return 0.0;
  const double e = std::exp(-x);
  return e / -std::expm1(-x);
}

double bose_difference(double x1, double x2) {
  if (!(x1 > 0.0) || !(x2 > 0.0)) throw DomainError("bose_difference: arguments must be positive");
  if (x1 == x2) return 0.0;
  if (x1 > x2) return -bose_difference(x2, x1);
  // n(x1) - n(x2) = e^{-x1} (1 - e^{-(x2-x1)}) / ((1 - e^{-x1}) (1 - e^{-x2}))
  const double d = x2 - x1;
  return std::exp(-x1) * -std::expm1(-d) / (-std::expm1(-x1) * -std::expm1(-x2));
}

namespace {

double scaled(double omega, double t) {
  return t == 0.0 ? std::numeric_limits<double>::infinity() : omega / t;
}

void check_thermal(double omega, const ThermalPair& th) {
  if (!(omega > 0.0)) throw DomainError("spectral kernels need omega > 0");
  if (!(th.env >= 0.0) || !(th.body >= 0.0)) throw DomainError("temperatures must be non-negative");
}

}  // namespace

double planck_diff(double omega, const ThermalPair& th) {
  check_thermal(omega, th);
  if (th.env == th.body) return 0.0;
  return bose_difference(scaled(omega, th.env), scaled(omega, th.body));
}

double coth_diff(double omega, const ThermalPair& th) {
  check_thermal(omega, th);
  if (th.env == th.body) return 0.0;
  return 2.0 * bose_difference(scaled(omega, th.body), scaled(omega, th.env));
}

namespace {

void check_fn_args(int n, double y) {
  if (n < 2 || n > 12) throw DomainError("f_n: order must be in [2, 12], got " + std::to_string(n));
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("f_n: y must be positive and finite");
}

// Bound on int_X^inf x^(n-2) e^{-y x} / (1 - e^{-y X}) dx, which dominates the
// tail of every f_n-type integrand with decay rate y.
double tail_bound(int n, double y, double cut) {
  const double m = n - 1;
  return boost::math::tgamma(m, y * cut) / std::pow(y, m) / -std::expm1(-y * cut);
}

// x^n/(x^2+1) w(x) on [0, inf) through x = t/(1-t), with an explicit cut-off
// chosen from the exponential tail bound.
template <class W>
double rational_bose_integral(int n, double y_decay, W&& weight, double rel_tol, const char* what,
                              double abs_floor = 0.0) {
  auto integrand = [n, &weight](double t) {
    const double s = 1.0 - t;
    const double x = t / s;
    const double xn = std::pow(x, n);
    return xn / (x * x + 1.0) * weight(x) / (s * s);
  };
  AdaptiveOptions opt;
  opt.rel_tol = 0.1 * rel_tol;
  opt.abs_tol = 0.1 * abs_floor;
  opt.max_subdivisions = 4000;

  double cut = (n + 60.0) / y_decay;
  for (int attempt = 0; attempt < 8; ++attempt, cut *= 2.0) {
    const double t_cut = cut / (1.0 + cut);
    const QuadResult r = integrate_adaptive(integrand, 0.0, t_cut, opt);
    const double tail = tail_bound(n, y_decay, cut);
    const double target = 1e-3 * std::max(rel_tol * std::abs(r.value), abs_floor);
    if (tail <= target || tail == 0.0) {
      if (!r.converged) throw ConvergenceError(std::string(what) + " quadrature", r.value, r.error, what);
      return r.value;
    }
  }
  throw ConvergenceError(std::string(what) + ": tail bound never met", 0.0, 0.0, what);
}

}  // namespace

double f_n(int n, double y, double rel_tol) {
  check_fn_args(n, y);
  return rational_bose_integral(n, y, [y](double x) { return x > 0.0 ? bose(y * x) : 0.0; }, rel_tol, "f_n");
}

double f_n_diff(int n, double y1, double y2, double rel_tol) {
  check_fn_args(n, y1);
  check_fn_args(n, y2);
  if (y1 == y2) return 0.0;
  const double ymin = std::min(y1, y2);
  // Nearly equal temperatures cancel; accuracy is relative to the larger term.
  const double scale = rel_tol * f_n(n, ymin, 1e-3);
  return rational_bose_integral(
      n, ymin, [y1, y2](double x) { return x > 0.0 ? bose_difference(y1 * x, y2 * x) : 0.0; }, rel_tol,
      "f_n_diff", scale);
}

double bose_moment(int n, double y) {
  if (n < 1) throw DomainError("bose_moment: n must be >= 1");
  if (!(y > 0.0)) throw DomainError("bose_moment: y must be positive");
  return boost::math::tgamma(n + 1.0) * boost::math::zeta(n + 1.0) / std::pow(y, n + 1);
}

// ---------------------------------------------------------------------------
// Pair kernel phi

void PhiEvalPolicy::validate() const {
  if (!(switch_threshold > 0.0) || switch_threshold > 2.0)
    throw DomainError("PhiEvalPolicy: switch_threshold must be in (0, 2]");
  if (series_terms < 2 || series_terms > kPhiMaxSeriesTerms)
    throw DomainError("PhiEvalPolicy: series_terms must be in [2, " + std::to_string(kPhiMaxSeriesTerms) + "]");
  if (working_precision_bits < 53) throw DomainError("PhiEvalPolicy: working precision below double");
}

namespace {

// Taylor coefficients of phi at R^8, R^10, ..., generated symbolically from the
// closed form and kept as exact fractions.
constexpr std::array<Rational, kPhiMaxSeriesTerms> kPhiSeries{{
    {-4.0L, 9.0L},
    {28.0L, 225.0L},
    {-22.0L, 1575.0L},
    {256.0L, 297675.0L},
    {-2.0L, 59535.0L},
    {116.0L, 127702575.0L},
    {-74.0L, 4104725625.0L},
    {1472.0L, 5373085843125.0L},
    {-16.0L, 4861363381875.0L},
    {536.0L, 16722117760973625.0L},
    {-316.0L, 1223754981598524375.0L},
    {128.0L, 73159265204259609375.0L},
    {-106.0L, 10484285467348896328125.0L},
    {4.0L, 79331505974308236796875.0L},
    {-274.0L, 1249804411420446824145328125.0L},
    {128.0L, 152654681680640290663465078125.0L},
    {-344.0L, 121001284449801642158246583984375.0L},
    {1528.0L, 177589551810825543474253236427734375.0L},
}};

template <class T>
T phi_closed(T r) {
  using std::cos;
  using std::sin;
  const T r2 = r * r;
  const T r4 = r2 * r2;
  return T(-9) - T(2) * r2 - r4 + (T(9) - T(16) * r2 + T(3) * r4) * cos(T(2) * r) +
         r * (T(18) - T(8) * r2 + r4) * sin(T(2) * r);
}

// sum_k c_k R^(2k), i.e. phi / R^8
double series_over_r8(double r, int terms) {
  const long double t = static_cast<long double>(r) * r;
  long double acc = 0.0L;
  for (int k = terms - 1; k >= 0; --k) acc = acc * t + kPhiSeries[static_cast<std::size_t>(k)].value();
  return static_cast<double>(acc);
}

double closed_over_r8(double r, const PhiEvalPolicy& policy) {
  if (policy.working_precision_bits > 53) {
    const long double rl = r;
    const long double r8 = (rl * rl) * (rl * rl) * (rl * rl) * (rl * rl);
    return static_cast<double>(phi_closed(rl) / r8);
  }
  const double r2 = r * r;
  const double r8 = r2 * r2 * r2 * r2;
  return phi_closed(r) / r8;
}

}  // namespace

Rational phi_series_coefficient(int k) {
  if (k < 0 || k >= kPhiMaxSeriesTerms) throw DomainError("phi_series_coefficient: index out of range");
  return kPhiSeries[static_cast<std::size_t>(k)];
}

double phi_closed_form_naive(double r) { return phi_closed(r); }

double phi_over_r8(double r, const PhiEvalPolicy& policy) {
  if (!(r >= 0.0)) throw DomainError("phi: argument must be non-negative");
  if (r < policy.switch_threshold) return series_over_r8(r, policy.series_terms);
  return closed_over_r8(r, policy);
}

double phi_over_r8_subleading(double r, const PhiEvalPolicy& policy) {
  if (!(r >= 0.0)) throw DomainError("phi: argument must be non-negative");
  const long double lead = kPhiSeries[0].value();
  if (r < policy.switch_threshold) {
    const long double t = static_cast<long double>(r) * r;
    long double acc = 0.0L;
    for (int k = policy.series_terms - 1; k >= 1; --k) acc = acc * t + kPhiSeries[static_cast<std::size_t>(k)].value();
    return static_cast<double>(acc * t);
  }
  const long double rl = r;
  const long double r8 = (rl * rl) * (rl * rl) * (rl * rl) * (rl * rl);
  return static_cast<double>(phi_closed(rl) / r8 - lead);
}

double phi(double r, const PhiEvalPolicy& policy) {
  if (!(r >= 0.0)) throw DomainError("phi: argument must be non-negative");
  if (r < policy.switch_threshold) {
    const double r2 = r * r;
    return series_over_r8(r, policy.series_terms) * (r2 * r2) * (r2 * r2);
  }
  if (policy.working_precision_bits > 53) return static_cast<double>(phi_closed(static_cast<long double>(r)));
  return phi_closed(r);
}

}  // namespace fluct
