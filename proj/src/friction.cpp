#include "fluct/friction.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fluct/errors.hpp"
#include "fluct/kernels.hpp"
#include "fluct/units.hpp"

namespace fluct {

namespace {

constexpr double kPi = std::numbers::pi;

void check_velocity(double v) {
  if (!(v >= 0.0) || !(v < 1.0)) throw DomainError("velocity must satisfy 0 <= v < 1");
}

}  // namespace

void SurfaceScenario::validate() const {
  check_velocity(velocity);
  if (!(separation > 0.0)) throw DomainError("surface friction: separation must be positive");
  if (!(sigma_plate > 0.0)) throw DomainError("surface friction: plate conductivity must be positive");
  if (mechanism == Mechanism::IntrinsicDissipation && !(sigma_particle && *sigma_particle > 0.0))
    throw DomainError("surface friction: intrinsic dissipation needs a positive particle conductivity");
}

double surface_friction(const SurfaceScenario& s) {
  s.validate();
  const double v = s.velocity, a = s.separation, sigma = s.sigma_plate, al = s.alpha0;
  switch (s.mechanism) {
    case Mechanism::ImageLag:
      return -135.0 * al * al * v * v * v / (2.0 * std::pow(kPi, 3) * sigma * sigma * std::pow(2.0 * a, 10));
    case Mechanism::RadiationReaction:
      return -105.0 / (128.0 * std::pow(kPi, 3)) * al * al * std::pow(v, 5) / (sigma * std::pow(a, 9));
    case Mechanism::IntrinsicDissipation:
      return -135.0 / (64.0 * kPi * kPi) * al / (sigma * *s.sigma_particle) * v * v * v / std::pow(a, 7);
  }
  throw std::logic_error("unknown mechanism");
}

double image_radiation_crossover_speed(double sigma, double separation) {
  if (!(sigma > 0.0) || !(separation > 0.0)) throw DomainError("crossover: sigma and a must be positive");
  // 135 / (2 sigma^2 2^10 a^10) v^3 = 105 / (128 sigma a^9) v^5
  return std::sqrt(135.0 * 128.0 / (2.0 * 1024.0 * 105.0 * sigma * separation));
}

ImAlphaModel im_alpha_of(const Material& m, double volume) {
  if (!(volume > 0.0)) throw DomainError("im_alpha_of: volume must be positive");
  return [m, volume](double omega) { return volume * susceptibility(omega, m).imag(); };
}

ImAlphaModel radiation_reaction_model(double alpha0) {
  return [alpha0](double omega) { return radiation_reaction_imalpha(omega, alpha0); };
}

double einstein_hopf_force(const ImAlphaModel& im_alpha, double temperature, double velocity,
                           const AdaptiveOptions& opt) {
  check_velocity(velocity);
  if (!(temperature >= 0.0)) throw DomainError("einstein_hopf_force: temperature must be non-negative");
  if (temperature == 0.0 || velocity == 0.0) return 0.0;
  const double beta = 1.0 / temperature;
  // x = beta omega; 1/sinh^2(x/2) = 4 e^-x / (1 - e^-x)^2.
  auto integrand = [&](double x) {
    const double e = std::exp(-x);
    const double s = -std::expm1(-x);
    return std::pow(x, 5) * im_alpha(x / beta) * 4.0 * e / (s * s);
  };
  const std::array<double, 3> bp{5.0, 15.0, 40.0};
  const auto r = integrate_or_throw(integrand, 0.0, 200.0, opt, "einstein_hopf_force", bp);
  if (!std::isfinite(r.value))
    throw ConvergenceError("einstein_hopf_force: divergent polarizability model", r.value, r.error, "omega -> 0");
  return -velocity / (12.0 * kPi * kPi * std::pow(beta, 5)) * r.value;
}

double einstein_hopf_radiation_reaction(double alpha0, double temperature, double velocity) {
  check_velocity(velocity);
  return -32.0 * std::pow(kPi, 5) * alpha0 * alpha0 * velocity * std::pow(temperature, 8) / 135.0;
}

double slowdown_scale(double mass, double alpha0, double temperature) {
  if (!(mass > 0.0) || alpha0 == 0.0 || !(temperature > 0.0))
    throw DomainError("slowdown_scale: mass, alpha0 and temperature must be nonzero");
  return 135.0 * mass / (32.0 * std::pow(kPi, 5) * alpha0 * alpha0 * std::pow(temperature, 8));
}

double slowdown_time(double mass, double alpha0, double temperature, double v_initial, double v_final) {
  if (!(v_final > 0.0) || v_final > v_initial)
    throw DomainError("slowdown_time: need 0 < v_final <= v_initial");
  check_velocity(v_initial);
  return slowdown_scale(mass, alpha0, temperature) * std::log(v_initial / v_final);
}

AtomPreset gold_atom() {
  const auto& u = default_units();
  const double a0 = u.length_from_m(si::kBohrRadiusM);
  return {u.to_natural(Quantity::Mass, 196.96657 * si::kAtomicMassKg), 36.0 * a0 * a0 * a0};
}

void NessQuery::validate() const {
  check_velocity(velocity);
  if (exponent < -12 || exponent > 12) throw DomainError("ness: exponent must be in [-12, 12]");
}

double doppler_moment(int k, double v) {
  check_velocity(v);
  if (v == 0.0) return 1.0;
  const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
  auto log_d = [gamma, v](double mu) { return -std::log(gamma) - std::log1p(-v * mu); };
  const AdaptiveOptions opt{1e-13, 0.0, 2000};
  if (k == 0) {
    const auto r = integrate_or_throw(log_d, -1.0, 1.0, opt, "doppler_moment");
    return std::exp(0.5 * r.value);
  }
  const auto r = integrate_or_throw([&](double mu) { return std::exp(k * log_d(mu)); }, -1.0, 1.0, opt,
                                    "doppler_moment");
  return 0.5 * r.value;
}

double ness_ratio(const NessQuery& q) {
  q.validate();
  const int k = q.exponent + 5;
  const double target = doppler_moment(k, q.velocity);
  // Net absorbed power in units of T^k: <D^k> - r^k (k = 0: logarithmic form).
  auto net = [k, target](double r) {
    if (k == 0) return std::log(target) - std::log(r);
    return target - std::pow(r, k);
  };
  double lo = 1e-3, hi = 1e3;
  double flo = net(lo), fhi = net(hi);
  if (!(flo * fhi < 0.0)) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    throw ConvergenceError("ness_ratio: root not bracketed in [1e-3, 1e3]", std::nan(""), std::nan(""),
                           "n=" + std::to_string(q.exponent));
  }
  // Monotonicity of the balance on a log grid before solving.
  double prev = flo;
  for (int i = 1; i <= 60; ++i) {
    const double f = net(lo * std::pow(hi / lo, i / 60.0));
    if ((f - prev) * (fhi - flo) < 0.0)
      throw ConvergenceError("ness_ratio: net power not monotone in T~", std::nan(""), std::nan(""),
                             "n=" + std::to_string(q.exponent));
    prev = f;
  }
  // Bisection in log r, with a secant step whenever it lands inside the bracket.
  double x0 = std::log(lo), x1 = std::log(hi);
  for (int it = 0; it < 200 && x1 - x0 > 1e-15; ++it) {
    double x = x0 - flo * (x1 - x0) / (fhi - flo);
    if (!(x > x0 && x < x1) || it % 2 == 1) x = 0.5 * (x0 + x1);
    const double f = net(std::exp(x));
    if (f == 0.0) return std::exp(x);
    if ((f < 0.0) == (flo < 0.0)) {
      x0 = x;
      flo = f;
    } else {
      x1 = x;
      fhi = f;
    }
  }
  return std::exp(0.5 * (x0 + x1));
}

}  // namespace fluct
