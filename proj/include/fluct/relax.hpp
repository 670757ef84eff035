#pragma once

#include <functional>

#include "fluct/geometry.hpp"
#include "fluct/noneq.hpp"

namespace fluct {

// Natural units: power eV^2, time eV^-1, mass eV, moment of inertia eV^-1,
// mass density eV^4, number density eV^3.

/// Im tr alpha(omega).
using ImTraceModel = std::function<double(double)>;

/// Im tr alpha of a homogeneous body of the given volume (3 V Im chi).
ImTraceModel im_trace_of(const Material& m, double volume);

/// P = (1 / 3 pi^2) int omega^4 Im tr alpha [n(T) - n(T')], positive when the
/// body absorbs.
Estimate net_power(const ImTraceModel& im_trace, const ThermalPair& th, const AdaptiveOptions& opt = {1e-10, 0.0, 4000});

/// Weak Drude body: P = V omega_p^2 nu^3 p / pi^2 with p the f_3 drive.
double net_power_drude(const DrudeMetal& m, double volume, const ThermalPair& th);

/// Dulong-Petit heat capacity 3n per volume with the metal's emission model.
struct CoolingModel {
  DrudeMetal metal{};
  double debye_temperature_k = 165.0;

  /// False when T is not well above the Debye temperature.
  bool valid_at(double temperature) const;
};

/// t_c = 3 pi^2 n T / (nu^3 omega_p^2).
double cooling_time_scale(const CoolingModel& cm, double temperature);

/// t_1 = t_c int_{u0}^{u1} du / p(u, T), u = T'/T. Both ratios on the same
/// side of 1; u1 = 1 is never reached in finite time and is rejected.
double cooling_time(double u0, double u1, double temperature, const CoolingModel& cm);

enum class DriveModel {
  ClosedForm,  // small-body f_n formulas
  Spectral,    // full frequency and geometric quadrature
};

struct RelaxationProblem {
  TwoPartBody body;
  double mass = 0.0;               // eV, translation
  double moment_of_inertia = 0.0;  // eV^-1, rotation
  double u0 = 1.0;
  double temperature = 0.0;  // environment, eV
  DriveModel drive = DriveModel::ClosedForm;
};

struct TerminalResult {
  double value = 0.0;      // velocity (units of c) or angular velocity (eV)
  double error = 0.0;
  double prefactor = 0.0;  // t_c F0 / m or t_c tau0 / I (closed form); t_c / m or t_c / I otherwise
  double integral = 0.0;   // int_{u0}^{1} drive / p du
};

/// Total mass from the region volumes and material densities.
double body_mass(const TwoPartBody& body);

/// v_T = (t_c / m) int_{u0}^{1} F(u, T) / p(u, T) du for a Janus ball with a
/// dielectric A and Drude B. Positive along +z (from B toward A).
TerminalResult terminal_velocity(const RelaxationProblem& p, const QuadratureSpec& q);

/// I = rho_A S_A (2/3) a^3 + rho_B S_B 2 b (a^2 + b^2 / 3).
double moment_of_inertia(const DualWrench& w, double rho_a, double rho_b);

/// omega_T = (t_c tau0 / I) int_{u0}^{1} tau-hat / p du for a dual wrench with
/// Drude wire A and dielectric tags B.
TerminalResult terminal_angular_velocity(const RelaxationProblem& p, const QuadratureSpec& q);

}  // namespace fluct
