#pragma once

#include <functional>

#include <Eigen/Core>

#include "fluct/geometry.hpp"
#include "fluct/kernels.hpp"
#include "fluct/material.hpp"

namespace fluct {

// Forces in eV^2, torques in eV (natural units).

/// alpha_jk(omega) of a whole body.
using TensorPolarizability = std::function<Eigen::Matrix3cd(double)>;

enum class SphereModel {
  Volume,            // alpha = V chi (weak susceptibility)
  ClausiusMossotti,  // alpha = 3V chi (chi + 3)^-1
};

TensorPolarizability sphere_polarizability(const GyrotropicSphere& m, SphereModel model = SphereModel::Volume);

/// chi^A = (chi - chi^dagger) / 2i.
Eigen::Matrix3cd antihermitian_part(const Eigen::Matrix3cd& chi);

enum class DriveKind {
  Force,    // F-hat, f_7
  Torque,   // tau-hat, f_9
  Cooling,  // p, f_3
};

int drive_order(DriveKind kind);

struct DimensionlessDrive {
  DriveKind kind;
  double value;
};

/// f_k(beta nu) - f_k(beta' nu). Zero temperatures are allowed.
DimensionlessDrive dimensionless_drive(DriveKind kind, const ThermalPair& th, double nu, double rel_tol = 1e-10);

/// Upper frequency where the Bose factors are negligible, 80 T_hottest.
double spectral_cutoff(const ThermalPair& th);

/// F_z = 8 int_0^inf (d omega / 2 pi) X_AB I_AB [n(T) - n(T')].
Estimate propulsion_force(const TwoPartBody& body, const ThermalPair& th, const QuadratureSpec& q);

struct JanusClosedForm {
  double force;      // eV^2
  double prefactor;  // chi_A omega_p^2 (nu a)^7 / 27 pi
  double f_hat;
};

/// Small Janus ball, dielectric A with chi_A over Drude B.
JanusClosedForm janus_force_closed(double chi_a, const DrudeMetal& m, double radius, const ThermalPair& th);

/// tau_i = -int_{-inf}^{inf} (d omega / 2 pi)(omega^3 / 6 pi) [coth - coth] eps_ijk Re alpha_jk.
VectorEstimate nonreciprocal_torque(const TensorPolarizability& alpha, const ThermalPair& th,
                                    const QuadratureSpec& q);

/// tau = (1 / 2 pi^2) int_0^inf (d omega / 2 pi) X_AB [n(T) - n(T')] J_AB.
VectorEstimate chiral_torque(const TwoPartBody& body, const ThermalPair& th, const QuadratureSpec& q);

struct WrenchClosedForm {
  double torque;   // eV
  double tau0;     // 28 chi_B nu^9 omega_p^2 S_A S_B a^4 b^2 / 675 pi^3
  double tau_hat;
};

/// Small dual wrench, Drude wire A and dielectric tags B with chi_B.
WrenchClosedForm small_wrench_torque(double chi_b, const DrudeMetal& m, double a, double b, double area_a,
                                     double area_b, const ThermalPair& th);

}  // namespace fluct
