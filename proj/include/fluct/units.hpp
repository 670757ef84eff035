#pragma once

// Natural units: hbar = c = k_B = eps0 = mu0 = 1 with energies in eV.
// Lengths and times are then eV^-1, forces eV^2, torques eV, masses eV,
// polarizabilities eV^-3 and conductivities eV. Everything inside the library
// is in these units; UnitContext is the only place SI shows up.

#include <string>
#include <string_view>

namespace fluct {

namespace si {
inline constexpr double kHbarEvS = 6.582119569e-16;        // eV s
inline constexpr double kHbarCEvM = 1.973269804e-7;        // eV m
inline constexpr double kBoltzmannEvPerK = 8.617333262e-5; // eV / K
inline constexpr double kElectronVoltJ = 1.602176634e-19;  // J / eV
inline constexpr double kSpeedOfLight = 299792458.0;       // m / s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kElectronMassKg = 9.1093837015e-31;
inline constexpr double kAtomicMassKg = 1.66053906660e-27;
inline constexpr double kBohrRadiusM = 5.29177210903e-11;
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F / m
}  // namespace si

enum class Quantity {
  Length,            // m
  Area,              // m^2
  Volume,            // m^3
  Time,              // s
  Temperature,       // K
  Energy,            // J
  Force,             // N
  Torque,            // N m
  Power,             // W
  Mass,              // kg
  MassDensity,       // kg / m^3
  NumberDensity,     // m^-3
  MomentOfInertia,   // kg m^2
  Velocity,          // m / s
  AngularFrequency,  // rad / s
  Conductivity,      // S / m
  MagneticField,     // T (converted to a cyclotron energy eB/m_e)
};

std::string_view si_unit(Quantity q);

/// Conversion constants plus SI <-> natural helpers.
class UnitContext {
 public:
  UnitContext() = default;
  UnitContext(double hbar_ev_s, double hbar_c_ev_m, double boltzmann_ev_per_k)
      : hbar_(hbar_ev_s), hbar_c_(hbar_c_ev_m), kb_(boltzmann_ev_per_k) {}

  double hbar() const { return hbar_; }
  double hbar_c() const { return hbar_c_; }
  double boltzmann() const { return kb_; }

  /// Scale factor s with natural = s * SI.
  double natural_per_si(Quantity q) const;

  double to_natural(Quantity q, double si) const { return si * natural_per_si(q); }
  double to_si(Quantity q, double natural_value) const { return natural_value / natural_per_si(q); }

  double length_from_m(double m) const { return to_natural(Quantity::Length, m); }
  double length_to_m(double l) const { return to_si(Quantity::Length, l); }
  double length_to_nm(double l) const { return 1e9 * length_to_m(l); }
  double time_from_s(double s) const { return to_natural(Quantity::Time, s); }
  double time_to_s(double t) const { return to_si(Quantity::Time, t); }
  double temperature_from_k(double k) const { return to_natural(Quantity::Temperature, k); }
  double temperature_to_k(double t) const { return to_si(Quantity::Temperature, t); }
  double force_to_n(double f) const { return to_si(Quantity::Force, f); }
  double torque_to_nm(double t) const { return to_si(Quantity::Torque, t); }

 private:
  double hbar_ = si::kHbarEvS;
  double hbar_c_ = si::kHbarCEvM;
  double kb_ = si::kBoltzmannEvPerK;
};

/// Shared default context (CODATA 2018 values).
const UnitContext& default_units();

/// Parse "<number><unit>" or "<number> <unit>" for quantity q and return the
/// value in natural units. Accepted units depend on q (e.g. m, nm, um for
/// lengths; K, eV, meV for temperatures). Throws std::invalid_argument on a
/// missing or unknown unit.
double parse_quantity(std::string_view text, Quantity q, const UnitContext& ctx = default_units());

/// Units accepted by parse_quantity for q, for diagnostics.
std::string accepted_units(Quantity q);

}  // namespace fluct
