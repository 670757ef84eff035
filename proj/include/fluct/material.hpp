#pragma once

#include <complex>
#include <string>
#include <variant>

#include <Eigen/Core>

namespace fluct {

using Complex = std::complex<double>;

/// Drude metal. Frequencies in eV; density fields in SI (they only enter
/// heat capacity and inertia, and are converted where used).
struct DrudeMetal {
  double plasma_freq = 9.0;      // eV
  double damping = 0.035;        // eV
  double atom_density = 5.90e28; // m^-3
  double mass_density = 19300.0; // kg/m^3
};

/// Dispersionless dielectric, chi real and frequency independent.
struct Dielectric {
  double chi0 = 1.0;
  double mass_density = 2200.0;  // kg/m^3, only used for inertia
};

/// Model dissipation law Im chi(omega) = amplitude * omega^exponent for
/// omega > 0, extended oddly to omega < 0. Real part is taken as zero; the law
/// is a model over the band that is integrated, not a causal medium.
struct MonomialAbsorber {
  int exponent = 3;
  double amplitude = 1.0;
};

/// Drude metal in a static magnetic field along z.
struct GyrotropicSphere {
  double plasma_freq = 9.0;     // eV
  double damping = 0.035;       // eV
  double cyclotron_freq = 0.0;  // eV
  double radius = 1.0;          // eV^-1
};

using Material = std::variant<DrudeMetal, Dielectric, MonomialAbsorber, GyrotropicSphere>;

/// Standard gold parameters (hbar omega_p = 9.0 eV, hbar nu = 35 meV).
DrudeMetal gold();
Dielectric dielectric(double chi0);

/// "gold" or "dielectric:<chi0>".
Material material_from_preset(const std::string& name);

std::string material_name(const Material& m);

/// -omega_p^2 / (omega (omega + i nu)). Throws DomainError at omega == 0.
Complex drude_chi(double omega, const DrudeMetal& m);

/// Skin depth in nm, sqrt(2 (omega^2 + nu^2) / (omega omega_p^2 nu)).
double skin_depth(double omega, const DrudeMetal& m);

/// DC conductivity omega_p^2 / nu (natural units, eV).
inline double dc_conductivity(const DrudeMetal& m) { return m.plasma_freq * m.plasma_freq / m.damping; }

/// Magnetized-Drude susceptibility tensor (field along z).
Eigen::Matrix3cd gyrotropic_chi(double omega, const GyrotropicSphere& m);

/// Cyclotron frequency eB/m_e in eV for a field in tesla.
double cyclotron_frequency(double field_tesla);

/// Scalar susceptibility. For the gyrotropic model this is tr(chi)/3.
Complex susceptibility(double omega, const Material& m);

/// X_AB = Im chi_A Re chi_B - Re chi_A Im chi_B.
double susceptibility_product(double omega, const Material& a, const Material& b);

bool is_dissipative(const Material& m);

}  // namespace fluct
