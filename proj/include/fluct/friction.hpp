#pragma once

#include <functional>
#include <optional>

#include "fluct/material.hpp"
#include "fluct/quadrature.hpp"

namespace fluct {

// Natural units throughout: polarizability eV^-3, conductivity eV, lengths
// eV^-1, velocities in units of c, forces eV^2, times eV^-1.

enum class Mechanism { ImageLag, RadiationReaction, IntrinsicDissipation };

/// Atom moving parallel to a metal plate at zero temperature.
struct SurfaceScenario {
  double alpha0 = 0.0;
  double sigma_plate = 0.0;
  std::optional<double> sigma_particle;
  double separation = 1.0;
  double velocity = 0.0;
  Mechanism mechanism = Mechanism::ImageLag;

  void validate() const;
};

/// Retarding force (negative for v > 0).
double surface_friction(const SurfaceScenario& s);

/// Speed at which the image-lag and radiation-reaction forces are equal, for
/// conductivity sigma and separation a.
double image_radiation_crossover_speed(double sigma, double separation);

/// Im alpha as a function of omega > 0.
using ImAlphaModel = std::function<double(double)>;

/// Im alpha of a body of the given volume made of m (alpha = V chi).
ImAlphaModel im_alpha_of(const Material& m, double volume);

/// Radiation-reaction model Im alpha = omega^3 alpha0^2 / 6 pi.
ImAlphaModel radiation_reaction_model(double alpha0);

/// F = -(v beta / 12 pi^2) int omega^5 Im alpha / sinh^2(beta omega / 2).
/// temperature in eV; zero temperature gives exactly 0.
double einstein_hopf_force(const ImAlphaModel& im_alpha, double temperature, double velocity,
                           const AdaptiveOptions& opt = {1e-10, 0.0, 4000});

/// Closed form for the radiation-reaction model: -32 pi^5 alpha0^2 v T^8 / 135.
double einstein_hopf_radiation_reaction(double alpha0, double temperature, double velocity);

/// t0 = 135 m beta^8 / (32 pi^5 alpha0^2), mass in eV.
double slowdown_scale(double mass, double alpha0, double temperature);

/// Time for the speed to decay from v_i to v_f: t0 ln(v_i / v_f).
double slowdown_time(double mass, double alpha0, double temperature, double v_initial, double v_final);

/// Gold atom: mass 196.97 u, static polarizability 36 a0^3 (used as is).
struct AtomPreset {
  double mass;    // eV
  double alpha0;  // eV^-3
};
AtomPreset gold_atom();

/// Body with Im alpha ~ omega^n moving at speed v through blackbody radiation.
struct NessQuery {
  int exponent = 3;
  double velocity = 0.0;

  void validate() const;
};

/// Angular average <D^k> of the Doppler factor D = 1 / (gamma (1 - v cos t)),
/// or exp<ln D> for k = 0.
double doppler_moment(int k, double velocity);

/// Steady-state ratio T~/T of body to radiation temperature. The absorbed
/// power scales as T^k <D^k> and the emitted as T~^k with k = n + 5.
double ness_ratio(const NessQuery& q);

}  // namespace fluct
