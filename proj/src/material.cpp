#include "fluct/material.hpp"

#include <cmath>
#include <stdexcept>

#include "fluct/errors.hpp"
#include "fluct/units.hpp"

namespace fluct {

DrudeMetal gold() { return DrudeMetal{}; }

Dielectric dielectric(double chi0) { return Dielectric{chi0, 2200.0}; }

Material material_from_preset(const std::string& name) {
  if (name == "gold") return gold();
  const std::string prefix = "dielectric:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string arg = name.substr(prefix.size());
    std::size_t used = 0;
    double chi = 0.0;
    try {
      chi = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size())
      throw std::invalid_argument("bad dielectric preset '" + name + "'");
    return dielectric(chi);
  }
  if (name == "dielectric") return dielectric(1.0);
  throw std::invalid_argument("unknown material preset '" + name + "'");
}

std::string material_name(const Material& m) {
  struct Namer {
    std::string operator()(const DrudeMetal& d) const {
      return "drude(wp=" + std::to_string(d.plasma_freq) + "eV,nu=" + std::to_string(d.damping) + "eV)";
    }
    std::string operator()(const Dielectric& d) const { return "dielectric(chi0=" + std::to_string(d.chi0) + ")"; }
    std::string operator()(const MonomialAbsorber& a) const {
      return "monomial(n=" + std::to_string(a.exponent) + ")";
    }
    std::string operator()(const GyrotropicSphere&) const { return "gyrotropic"; }
  };
  return std::visit(Namer{}, m);
}

Complex drude_chi(double omega, const DrudeMetal& m) {
  if (omega == 0.0) throw DomainError("drude_chi: pole at zero frequency");
  const double wp2 = m.plasma_freq * m.plasma_freq;
  // Split by hand so Im chi keeps full relative accuracy for nu << omega.
  const double den = omega * (omega * omega + m.damping * m.damping);
  return {-wp2 * omega / den, wp2 * m.damping / den};
}

double skin_depth(double omega, const DrudeMetal& m) {
  if (!(omega > 0.0)) throw DomainError("skin_depth: frequency must be positive");
  const double nu = m.damping;
  const double wp2 = m.plasma_freq * m.plasma_freq;
  const double delta = std::sqrt(2.0 * (omega * omega + nu * nu) / (omega * wp2 * nu));
  return default_units().length_to_nm(delta);
}

Eigen::Matrix3cd gyrotropic_chi(double omega, const GyrotropicSphere& m) {
  if (omega == 0.0) throw DomainError("gyrotropic_chi: pole at zero frequency");
  const Complex w(omega, m.damping);
  const double wp2 = m.plasma_freq * m.plasma_freq;
  const double wc = m.cyclotron_freq;
  const Complex den = omega * (w * w - wc * wc);
  const Complex xx = -wp2 * w / den;
  const Complex xy = Complex(0.0, -1.0) * wp2 * wc / den;
  Eigen::Matrix3cd chi = Eigen::Matrix3cd::Zero();
  chi(0, 0) = xx;
  chi(1, 1) = xx;
  chi(0, 1) = xy;
  chi(1, 0) = -xy;
  chi(2, 2) = -wp2 / (omega * w);
  return chi;
}

double cyclotron_frequency(double field_tesla) {
  return si::kElementaryCharge * field_tesla / si::kElectronMassKg * si::kHbarEvS;
}

Complex susceptibility(double omega, const Material& m) {
  struct Eval {
    double w;
    Complex operator()(const DrudeMetal& d) const { return drude_chi(w, d); }
    Complex operator()(const Dielectric& d) const { return {d.chi0, 0.0}; }
    Complex operator()(const MonomialAbsorber& a) const {
      const double mag = a.amplitude * std::pow(std::abs(w), a.exponent);
      return {0.0, w > 0 ? mag : (w < 0 ? -mag : 0.0)};
    }
    Complex operator()(const GyrotropicSphere& g) const { return gyrotropic_chi(w, g).trace() / 3.0; }
  };
  return std::visit(Eval{omega}, m);
}

double susceptibility_product(double omega, const Material& a, const Material& b) {
  const Complex ca = susceptibility(omega, a);
  const Complex cb = susceptibility(omega, b);
  return ca.imag() * cb.real() - ca.real() * cb.imag();
}

bool is_dissipative(const Material& m) { return !std::holds_alternative<Dielectric>(m); }

}  // namespace fluct
