#include "fluct/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fluct {

std::string_view si_unit(Quantity q) {
  switch (q) {
    case Quantity::Length: return "m";
    case Quantity::Area: return "m^2";
    case Quantity::Volume: return "m^3";
    case Quantity::Time: return "s";
    case Quantity::Temperature: return "K";
    case Quantity::Energy: return "J";
    case Quantity::Force: return "N";
    case Quantity::Torque: return "N m";
    case Quantity::Power: return "W";
    case Quantity::Mass: return "kg";
    case Quantity::MassDensity: return "kg/m^3";
    case Quantity::NumberDensity: return "m^-3";
    case Quantity::MomentOfInertia: return "kg m^2";
    case Quantity::Velocity: return "m/s";
    case Quantity::AngularFrequency: return "rad/s";
    case Quantity::Conductivity: return "S/m";
    case Quantity::MagneticField: return "T";
  }
  return "";
}

double UnitContext::natural_per_si(Quantity q) const {
  const double per_m = 1.0 / hbar_c_;  // eV^-1 per metre
  const double per_s = 1.0 / hbar_;    // eV^-1 per second
  const double ev_per_j = 1.0 / si::kElectronVoltJ;
  const double ev_per_kg = si::kSpeedOfLight * si::kSpeedOfLight * ev_per_j;
  switch (q) {
    case Quantity::Length: return per_m;
    case Quantity::Area: return per_m * per_m;
    case Quantity::Volume: return per_m * per_m * per_m;
    case Quantity::Time: return per_s;
    case Quantity::Temperature: return kb_;
    case Quantity::Energy: return ev_per_j;
    case Quantity::Force: return ev_per_j / per_m;
    case Quantity::Torque: return ev_per_j;
    case Quantity::Power: return ev_per_j / per_s;
    case Quantity::Mass: return ev_per_kg;
    case Quantity::MassDensity: return ev_per_kg / (per_m * per_m * per_m);
    case Quantity::NumberDensity: return 1.0 / (per_m * per_m * per_m);
    case Quantity::MomentOfInertia: return ev_per_kg * per_m * per_m;
    case Quantity::Velocity: return 1.0 / si::kSpeedOfLight;
    case Quantity::AngularFrequency: return hbar_;
    // sigma/eps0 is a rate in HL units
    case Quantity::Conductivity: return hbar_ / si::kVacuumPermittivity;
    // cyclotron energy hbar e B / m_e per tesla
    case Quantity::MagneticField: return hbar_ * si::kElementaryCharge / si::kElectronMassKg;
  }
  return std::nan("");
}

const UnitContext& default_units() {
  static const UnitContext ctx;
  return ctx;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct UnitEntry {
  Quantity q;
  std::string_view name;
  double factor;  // multiply to get SI (or natural, if natural == true)
  bool natural;
};

constexpr double kYear = 365.25 * 86400.0;

const std::array kUnitTable{
    UnitEntry{Quantity::Length, "m", 1.0, false},
    UnitEntry{Quantity::Length, "cm", 1e-2, false},
    UnitEntry{Quantity::Length, "mm", 1e-3, false},
    UnitEntry{Quantity::Length, "um", 1e-6, false},
    UnitEntry{Quantity::Length, "nm", 1e-9, false},
    UnitEntry{Quantity::Length, "pm", 1e-12, false},
    UnitEntry{Quantity::Length, "A", 1e-10, false},
    UnitEntry{Quantity::Length, "1/eV", 1.0, true},
    UnitEntry{Quantity::Area, "m^2", 1.0, false},
    UnitEntry{Quantity::Area, "um^2", 1e-12, false},
    UnitEntry{Quantity::Area, "nm^2", 1e-18, false},
    UnitEntry{Quantity::Volume, "m^3", 1.0, false},
    UnitEntry{Quantity::Volume, "nm^3", 1e-27, false},
    UnitEntry{Quantity::Volume, "A^3", 1e-30, false},
    UnitEntry{Quantity::Volume, "a0^3", si::kBohrRadiusM * si::kBohrRadiusM * si::kBohrRadiusM, false},
    UnitEntry{Quantity::Volume, "1/eV^3", 1.0, true},
    UnitEntry{Quantity::Time, "s", 1.0, false},
    UnitEntry{Quantity::Time, "ms", 1e-3, false},
    UnitEntry{Quantity::Time, "us", 1e-6, false},
    UnitEntry{Quantity::Time, "ns", 1e-9, false},
    UnitEntry{Quantity::Time, "ps", 1e-12, false},
    UnitEntry{Quantity::Time, "fs", 1e-15, false},
    UnitEntry{Quantity::Time, "yr", kYear, false},
    UnitEntry{Quantity::Temperature, "K", 1.0, false},
    UnitEntry{Quantity::Temperature, "eV", 1.0, true},
    UnitEntry{Quantity::Temperature, "meV", 1e-3, true},
    UnitEntry{Quantity::Energy, "J", 1.0, false},
    UnitEntry{Quantity::Energy, "eV", 1.0, true},
    UnitEntry{Quantity::Energy, "meV", 1e-3, true},
    UnitEntry{Quantity::Force, "N", 1.0, false},
    UnitEntry{Quantity::Force, "eV^2", 1.0, true},
    UnitEntry{Quantity::Torque, "N*m", 1.0, false},
    UnitEntry{Quantity::Torque, "Nm", 1.0, false},
    UnitEntry{Quantity::Power, "W", 1.0, false},
    UnitEntry{Quantity::Mass, "kg", 1.0, false},
    UnitEntry{Quantity::Mass, "g", 1e-3, false},
    UnitEntry{Quantity::Mass, "u", si::kAtomicMassKg, false},
    UnitEntry{Quantity::Mass, "eV", 1.0, true},
    UnitEntry{Quantity::MassDensity, "kg/m^3", 1.0, false},
    UnitEntry{Quantity::MassDensity, "g/cm^3", 1e3, false},
    UnitEntry{Quantity::NumberDensity, "m^-3", 1.0, false},
    UnitEntry{Quantity::NumberDensity, "cm^-3", 1e6, false},
    UnitEntry{Quantity::MomentOfInertia, "kg*m^2", 1.0, false},
    UnitEntry{Quantity::Velocity, "m/s", 1.0, false},
    UnitEntry{Quantity::Velocity, "km/s", 1e3, false},
    UnitEntry{Quantity::Velocity, "c", 1.0, true},
    UnitEntry{Quantity::AngularFrequency, "rad/s", 1.0, false},
    UnitEntry{Quantity::AngularFrequency, "eV", 1.0, true},
    UnitEntry{Quantity::AngularFrequency, "meV", 1e-3, true},
    UnitEntry{Quantity::Conductivity, "S/m", 1.0, false},
    UnitEntry{Quantity::Conductivity, "eV", 1.0, true},
    UnitEntry{Quantity::MagneticField, "T", 1.0, false},
};

}  // namespace

std::string accepted_units(Quantity q) {
  std::string out;
  for (const auto& e : kUnitTable) {
    if (e.q != q) continue;
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

double parse_quantity(std::string_view text, Quantity q, const UnitContext& ctx) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{}) throw std::invalid_argument("expected a number in '" + std::string(text) + "'");
  std::string_view unit(res.ptr, static_cast<std::size_t>(text.data() + text.size() - res.ptr));
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) unit.remove_prefix(1);
  if (unit.empty())
    throw std::invalid_argument("unit required for '" + std::string(text) + "' (one of: " + accepted_units(q) + ")");
  for (const auto& e : kUnitTable) {
    if (e.q != q || e.name != unit) continue;
    return e.natural ? value * e.factor : ctx.to_natural(q, value * e.factor);
  }
  throw std::invalid_argument("unknown unit '" + std::string(unit) + "' (one of: " + accepted_units(q) + ")");
}

}  // namespace fluct
