#include "fluct/relax.hpp"

#include <array>
#include <string>
#include <cmath>
#include <numbers>

#include "fluct/errors.hpp"
#include "fluct/quadrature.hpp"
#include "fluct/units.hpp"

namespace fluct {

namespace {

constexpr double kPi = std::numbers::pi;

double natural_density(double kg_per_m3) { return default_units().to_natural(Quantity::MassDensity, kg_per_m3); }

double density_of(const Material& m) {
  if (const auto* d = std::get_if<DrudeMetal>(&m)) return natural_density(d->mass_density);
  if (const auto* d = std::get_if<Dielectric>(&m)) return natural_density(d->mass_density);
  throw DomainError("no mass density for material " + material_name(m));
}

const DrudeMetal& metal_part(const TwoPartBody& b, bool want_a) {
  const Material& m = want_a ? b.material_a : b.material_b;
  const auto* d = std::get_if<DrudeMetal>(&m);
  if (!d) throw DomainError(std::string("relaxation drive needs a Drude metal as region ") + (want_a ? "A" : "B"));
  return *d;
}

double dielectric_chi(const Material& m, const char* region) {
  const auto* d = std::get_if<Dielectric>(&m);
  if (!d) throw DomainError(std::string("closed-form drive needs a dielectric region ") + region);
  return d->chi0;
}

void check_u(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("temperature ratio must be positive");
}

// int_{u0}^{1} g(u) du with g finite at u = 1; the rule never touches u = 1.
QuadResult ratio_integral(const std::function<double(double)>& g, double u0, const AdaptiveOptions& opt,
                          const std::string& where) {
  return integrate_or_throw(g, u0, 1.0, opt, where);
}

}  // namespace

ImTraceModel im_trace_of(const Material& m, double volume) {
  if (!(volume > 0.0)) throw DomainError("im_trace_of: volume must be positive");
  if (const auto* g = std::get_if<GyrotropicSphere>(&m)) {
    const GyrotropicSphere gs = *g;
    return [gs, volume](double omega) { return volume * gyrotropic_chi(omega, gs).trace().imag(); };
  }
  return [m, volume](double omega) { return 3.0 * volume * susceptibility(omega, m).imag(); };
}

Estimate net_power(const ImTraceModel& im_trace, const ThermalPair& th, const AdaptiveOptions& opt) {
  if (!(th.env >= 0.0) || !(th.body >= 0.0)) throw DomainError("net_power: temperatures must be non-negative");
  if (th.env == th.body) return {0.0, 0.0};
  auto integrand = [&](double omega) {
    const double pd = planck_diff(omega, th);
    return pd == 0.0 ? 0.0 : std::pow(omega, 4) * im_trace(omega) * pd;
  };
  const double t = th.hottest();
  const std::array<double, 4> bp{t, 3.0 * t, 10.0 * t, 30.0 * t};
  const auto r = integrate_or_throw(integrand, 0.0, spectral_cutoff(th), opt, "net_power", bp);
  return {r.value / (3.0 * kPi * kPi), r.error / (3.0 * kPi * kPi)};
}

double net_power_drude(const DrudeMetal& m, double volume, const ThermalPair& th) {
  const double p = dimensionless_drive(DriveKind::Cooling, th, m.damping).value;
  return volume * m.plasma_freq * m.plasma_freq * std::pow(m.damping, 3) * p / (kPi * kPi);
}

bool CoolingModel::valid_at(double temperature) const {
  return default_units().temperature_to_k(temperature) > debye_temperature_k;
}

double cooling_time_scale(const CoolingModel& cm, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("cooling_time_scale: temperature must be positive");
  const double n = default_units().to_natural(Quantity::NumberDensity, cm.metal.atom_density);
  const double nu = cm.metal.damping, wp = cm.metal.plasma_freq;
  return 3.0 * kPi * kPi * n * temperature / (nu * nu * nu * wp * wp);
}

double cooling_time(double u0, double u1, double temperature, const CoolingModel& cm) {
  check_u(u0);
  check_u(u1);
  if (u0 == u1) return 0.0;
  if (u1 == 1.0 || u0 == 1.0) throw DomainError("cooling_time: u = 1 is reached only asymptotically");
  if ((u0 - 1.0) * (u1 - 1.0) < 0.0) throw DomainError("cooling_time: interval crosses u = 1");
  if (std::abs(u1 - 1.0) > std::abs(u0 - 1.0))
    throw DomainError("cooling_time: u1 must lie between u0 and 1 (relaxation toward equilibrium)");
  const double tc = cooling_time_scale(cm, temperature);
  const double nu = cm.metal.damping;
  auto inv_p = [&](double u) {
    return 1.0 / dimensionless_drive(DriveKind::Cooling, {temperature, u * temperature}, nu).value;
  };
  const auto r = integrate_or_throw(inv_p, u0, u1, {1e-9, 0.0, 2000}, "cooling_time");
  return tc * r.value;
}

double body_mass(const TwoPartBody& body) {
  const GenericPair g = to_generic(body.geometry);
  return density_of(body.material_a) * region_measure(g.a) + density_of(body.material_b) * region_measure(g.b);
}

TerminalResult terminal_velocity(const RelaxationProblem& p, const QuadratureSpec& q) {
  check_u(p.u0);
  if (!(p.mass > 0.0)) throw DomainError("terminal_velocity: mass must be positive");
  if (!(p.temperature > 0.0)) throw DomainError("terminal_velocity: temperature must be positive");
  const auto* janus = std::get_if<JanusBall>(&p.body.geometry);
  if (!janus) throw DomainError("terminal_velocity: the force drive needs a Janus ball");
  const DrudeMetal& metal = metal_part(p.body, false);
  const double T = p.temperature, nu = metal.damping;
  const double tc = cooling_time_scale(CoolingModel{metal}, T);
  TerminalResult out;
  if (p.u0 == 1.0) return out;

  auto cool = [&](double u) { return dimensionless_drive(DriveKind::Cooling, {T, u * T}, nu).value; };
  AdaptiveOptions opt = q.adaptive();
  if (p.drive == DriveModel::ClosedForm) {
    const double chi_a = dielectric_chi(p.body.material_a, "A");
    const double f0 = janus_force_closed(chi_a, metal, janus->radius, {T, T}).prefactor;
    const double sign = janus->a_on_top ? 1.0 : -1.0;
    auto g = [&](double u) {
      return dimensionless_drive(DriveKind::Force, {T, u * T}, nu).value / cool(u);
    };
    const auto r = ratio_integral(g, p.u0, opt, "terminal_velocity");
    out.prefactor = sign * tc * f0 / p.mass;
    out.integral = r.value;
    out.value = out.prefactor * r.value;
    out.error = std::abs(out.prefactor) * r.error;
    return out;
  }
  auto g = [&](double u) { return propulsion_force(p.body, {T, u * T}, q).value / cool(u); };
  const auto r = ratio_integral(g, p.u0, opt, "terminal_velocity");
  out.prefactor = tc / p.mass;
  out.integral = r.value;
  out.value = out.prefactor * r.value;
  out.error = out.prefactor * r.error;
  return out;
}

double moment_of_inertia(const DualWrench& w, double rho_a, double rho_b) {
  if (!(rho_a >= 0.0) || !(rho_b >= 0.0)) throw DomainError("moment_of_inertia: densities must be non-negative");
  const double a = w.half_length, b = w.tag_length;
  return rho_a * w.area_a * (2.0 / 3.0) * a * a * a + rho_b * w.area_b * 2.0 * b * (a * a + b * b / 3.0);
}

TerminalResult terminal_angular_velocity(const RelaxationProblem& p, const QuadratureSpec& q) {
  check_u(p.u0);
  if (!(p.moment_of_inertia > 0.0)) throw DomainError("terminal_angular_velocity: moment of inertia must be positive");
  if (!(p.temperature > 0.0)) throw DomainError("terminal_angular_velocity: temperature must be positive");
  const auto* w = std::get_if<DualWrench>(&p.body.geometry);
  if (!w) throw DomainError("terminal_angular_velocity: the torque drive needs a dual wrench");
  const DrudeMetal& metal = metal_part(p.body, true);
  const double T = p.temperature, nu = metal.damping;
  const double tc = cooling_time_scale(CoolingModel{metal}, T);
  TerminalResult out;
  if (p.u0 == 1.0) return out;

  auto cool = [&](double u) { return dimensionless_drive(DriveKind::Cooling, {T, u * T}, nu).value; };
  AdaptiveOptions opt = q.adaptive();
  if (p.drive == DriveModel::ClosedForm) {
    const double chi_b = dielectric_chi(p.body.material_b, "B");
    const double tau0 =
        small_wrench_torque(chi_b, metal, w->half_length, w->tag_length, w->area_a, w->area_b, {T, T}).tau0;
    auto g = [&](double u) {
      return dimensionless_drive(DriveKind::Torque, {T, u * T}, nu).value / cool(u);
    };
    const auto r = ratio_integral(g, p.u0, opt, "terminal_angular_velocity");
    out.prefactor = tc * tau0 / p.moment_of_inertia;
    out.integral = r.value;
    out.value = out.prefactor * r.value;
    out.error = out.prefactor * r.error;
    return out;
  }
  auto g = [&](double u) { return chiral_torque(p.body, {T, u * T}, q).value.z() / cool(u); };
  const auto r = ratio_integral(g, p.u0, opt, "terminal_angular_velocity");
  out.prefactor = tc / p.moment_of_inertia;
  out.integral = r.value;
  out.value = out.prefactor * r.value;
  out.error = out.prefactor * r.error;
  return out;
}

}  // namespace fluct
