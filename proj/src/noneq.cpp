#include "fluct/noneq.hpp"

#include <Eigen/LU>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fluct/errors.hpp"
#include "fluct/quadrature.hpp"

namespace fluct {

namespace {

constexpr double kPi = std::numbers::pi;

void check_thermal(const ThermalPair& th) {
  if (!(th.env >= 0.0) || !(th.body >= 0.0) || !std::isfinite(th.env) || !std::isfinite(th.body))
    throw DomainError("temperatures must be finite and non-negative");
}

std::array<double, 4> spectral_breaks(const ThermalPair& th) {
  const double t = th.hottest();
  return {t, 3.0 * t, 10.0 * t, 30.0 * t};
}

// Fixed Gauss-Legendre nodes for integrands that are only known with
// statistical noise (Monte Carlo geometric factors).
constexpr std::array<double, 8> kGl8x{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                      0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGl8w{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                      0.2223810344533745, 0.1012285362903763};

}  // namespace

TensorPolarizability sphere_polarizability(const GyrotropicSphere& m, SphereModel model) {
  if (!(m.radius > 0.0)) throw DomainError("sphere_polarizability: radius must be positive");
  const double vol = 4.0 / 3.0 * kPi * std::pow(m.radius, 3);
  return [m, vol, model](double omega) -> Eigen::Matrix3cd {
    const Eigen::Matrix3cd chi = gyrotropic_chi(omega, m);
    if (model == SphereModel::Volume) return vol * chi;
    const Eigen::Matrix3cd denom = chi + 3.0 * Eigen::Matrix3cd::Identity();
    return 3.0 * vol * chi * denom.inverse();
  };
}

Eigen::Matrix3cd antihermitian_part(const Eigen::Matrix3cd& chi) {
  return (chi - chi.adjoint()) / Complex(0.0, 2.0);
}

int drive_order(DriveKind kind) {
  switch (kind) {
    case DriveKind::Force:
      return 7;
    case DriveKind::Torque:
      return 9;
    case DriveKind::Cooling:
      return 3;
  }
  return 0;
}

DimensionlessDrive dimensionless_drive(DriveKind kind, const ThermalPair& th, double nu, double rel_tol) {
  check_thermal(th);
  if (!(nu > 0.0)) throw DomainError("dimensionless_drive: damping must be positive");
  const int n = drive_order(kind);
  if (th.env == th.body) return {kind, 0.0};
  if (th.body == 0.0) return {kind, f_n(n, nu / th.env, rel_tol)};
  if (th.env == 0.0) return {kind, -f_n(n, nu / th.body, rel_tol)};
  return {kind, f_n_diff(n, nu / th.env, nu / th.body, rel_tol)};
}

double spectral_cutoff(const ThermalPair& th) { return 80.0 * th.hottest(); }

Estimate propulsion_force(const TwoPartBody& body, const ThermalPair& th, const QuadratureSpec& q) {
  check_thermal(th);
  q.validate();
  if (th.env == th.body) return {0.0, 0.0};
  if (material_name(body.material_a) == material_name(body.material_b)) return {0.0, 0.0};
  double inner_err = 0.0;
  auto integrand = [&](double omega) {
    const double pd = planck_diff(omega, th);
    if (pd == 0.0) return 0.0;
    const double x = susceptibility_product(omega, body.material_a, body.material_b);
    if (x == 0.0) return 0.0;
    const Estimate i = pair_integral_IAB(body.geometry, omega, q);
    inner_err = std::max(inner_err, std::abs(x * pd) * i.error);
    return x * i.value * pd;
  };
  const auto bp = spectral_breaks(th);
  const double top = spectral_cutoff(th);
  const auto r = integrate_or_throw(integrand, 0.0, top, q.adaptive(), "propulsion_force", bp);
  const double scale = 8.0 / (2.0 * kPi);
  return {scale * r.value, scale * (r.error + top * inner_err)};
}

JanusClosedForm janus_force_closed(double chi_a, const DrudeMetal& m, double radius, const ThermalPair& th) {
  if (!(radius > 0.0)) throw DomainError("janus_force_closed: radius must be positive");
  const double pref = chi_a * m.plasma_freq * m.plasma_freq * std::pow(m.damping * radius, 7) / (27.0 * kPi);
  const double fhat = dimensionless_drive(DriveKind::Force, th, m.damping).value;
  return {pref * fhat, pref, fhat};
}

VectorEstimate nonreciprocal_torque(const TensorPolarizability& alpha, const ThermalPair& th,
                                    const QuadratureSpec& q) {
  check_thermal(th);
  q.validate();
  VectorEstimate out;
  if (th.env == th.body) return out;
  const double top = spectral_cutoff(th);
  const auto bp = spectral_breaks(th);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    auto integrand = [&](double omega) {
      const Eigen::Matrix3cd a = alpha(omega);
      const double anti = (a(j, k) - a(k, j)).real();
      if (anti == 0.0) return 0.0;
      return std::pow(omega, 3) / (6.0 * kPi) * coth_diff(omega, th) * anti;
    };
    // Probe for an identically vanishing component before asking for a
    // relative tolerance on zero.
    bool any = false;
    for (double f : {0.1, 0.5, 1.0, 3.0, 10.0}) any = any || integrand(f * th.hottest()) != 0.0;
    if (!any) continue;
    AdaptiveOptions opt = q.adaptive();
    const auto r = integrate_or_throw(integrand, 0.0, top, opt, "nonreciprocal_torque", bp);
    // Even integrand over the full line: twice the half-line value.
    out.value[i] = -2.0 * r.value / (2.0 * kPi);
    out.error[i] = 2.0 * r.error / (2.0 * kPi);
  }
  return out;
}

VectorEstimate chiral_torque(const TwoPartBody& body, const ThermalPair& th, const QuadratureSpec& q) {
  check_thermal(th);
  q.validate();
  VectorEstimate out;
  if (th.env == th.body) return out;
  if (material_name(body.material_a) == material_name(body.material_b)) return out;
  const double scale = 1.0 / (2.0 * kPi * kPi) / (2.0 * kPi);
  const double top = spectral_cutoff(th);
  auto weight = [&](double omega) {
    const double pd = planck_diff(omega, th);
    return pd == 0.0 ? 0.0 : susceptibility_product(omega, body.material_a, body.material_b) * pd;
  };

  // Axisymmetric: J_AB vanishes identically.
  if (std::holds_alternative<JanusBall>(body.geometry)) return out;
  if (std::holds_alternative<DualWrench>(body.geometry)) {
    double inner_err = 0.0;
    auto integrand = [&](double omega) {
      const double w = weight(omega);
      if (w == 0.0) return 0.0;
      const VectorEstimate j = pair_integral_JAB(body.geometry, omega, q);
      inner_err = std::max(inner_err, std::abs(w) * j.error.z());
      return w * j.value.z();
    };
    const auto bp = spectral_breaks(th);
    const auto r = integrate_or_throw(integrand, 0.0, top, q.adaptive(), "chiral_torque", bp);
    out.value.z() = scale * r.value;
    out.error.z() = scale * (r.error + top * inner_err);
    return out;
  }

  if (!q.allow_monte_carlo)
    throw DomainError("chiral_torque: " + geometry_name(body.geometry) + " needs Monte Carlo; enable it");
  // Noisy geometric factor: fixed composite Gauss-Legendre in omega with
  // independent Monte Carlo streams per node, errors added in quadrature.
  constexpr int kPanels = 12;
  const std::array<double, kPanels + 1> edges{0.0,  0.5,  1.0,  2.0,  3.0,  4.5,  6.0,
                                              8.0,  11.0, 15.0, 20.0, 30.0, 45.0};
  const double t = th.hottest();
  Eigen::Vector3d var = Eigen::Vector3d::Zero();
  QuadratureSpec qn = q;
  for (int p = 0; p < kPanels; ++p) {
    const double lo = edges[p] * t, hi = edges[p + 1] * t;
    for (int n = 0; n < 8; ++n) {
      const double omega = 0.5 * (lo + hi) + 0.5 * (hi - lo) * kGl8x[n];
      const double w = weight(omega) * 0.5 * (hi - lo) * kGl8w[n];
      if (w == 0.0) continue;
      qn.rng_seed = q.rng_seed + static_cast<std::uint64_t>(p * 8 + n) * 0x9e3779b97f4a7c15ULL;
      const VectorEstimate j = mc_pair_oracle(body.geometry, omega, PairKind::JAB, qn);
      out.value += w * j.value;
      var += (w * j.error).cwiseAbs2();
    }
  }
  out.value *= scale;
  out.error = scale * var.cwiseSqrt();
  return out;
}

WrenchClosedForm small_wrench_torque(double chi_b, const DrudeMetal& m, double a, double b, double area_a,
                                     double area_b, const ThermalPair& th) {
  if (!(a > 0.0) || !(b > 0.0) || !(area_a > 0.0) || !(area_b > 0.0))
    throw DomainError("small_wrench_torque: lengths and areas must be positive");
  const double nu = m.damping;
  const double tau0 = 28.0 / (675.0 * std::pow(kPi, 3)) * chi_b * std::pow(nu, 9) * m.plasma_freq *
                      m.plasma_freq * area_a * area_b * std::pow(a, 4) * b * b;
  const double that = dimensionless_drive(DriveKind::Torque, th, nu).value;
  return {tau0 * that, tau0, that};
}

}  // namespace fluct
