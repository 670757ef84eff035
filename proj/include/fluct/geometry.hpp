#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "fluct/kernels.hpp"
#include "fluct/material.hpp"
#include "fluct/quadrature.hpp"

namespace fluct {

using Vec3 = Eigen::Vector3d;

// All lengths below are natural units (eV^-1); areas eV^-2.

/// Ball of radius a split by z = 0. By default A is the upper hemisphere.
struct JanusBall {
  double radius = 1.0;
  bool a_on_top = true;
};

/// Planar dual Allen wrench in z = 0. Wire A runs along y from -a to a; tags B
/// run from (0,-a) to (b,-a) and from (-b,a) to (0,a). Thin-wire idealization.
struct DualWrench {
  double half_length = 1.0;  // a
  double tag_length = 1.0;   // b
  double area_a = 1.0;       // S_A
  double area_b = 1.0;       // S_B
};

/// Central wire A with rectangular flags B attached antisymmetrically at the
/// ends: flag 1 spans x in [0,w], y in [-a,-a+h], |z| < t/2, flag 2 is its
/// image under r -> -r.
struct DualFlag {
  double half_length = 1.0;
  double flag_width = 1.0;
  double flag_height = 1.0;
  double thickness = 0.1;
  double wire_area = 0.01;
};

struct BallPart {
  Vec3 center;
  double radius;
};
/// Half of a ball cut by the plane z = center.z; side = +1 keeps z > center.z.
struct HalfBallPart {
  Vec3 center;
  double radius;
  int side;
};
struct BoxPart {
  Vec3 lo;
  Vec3 hi;
};
struct CylinderPart {
  Vec3 base;
  int axis;  // 0, 1, 2
  double radius;
  double length;
};
/// Thin straight wire with cross section `area`; measure is area * length.
struct WirePart {
  Vec3 start;
  Vec3 end;
  double area;
};

using Part = std::variant<BallPart, HalfBallPart, BoxPart, CylinderPart, WirePart>;

struct Region {
  std::vector<Part> parts;
};

/// Two explicit regions; parts within a region must not overlap.
struct GenericPair {
  Region a;
  Region b;
};

using BodyGeometry = std::variant<JanusBall, DualWrench, DualFlag, GenericPair>;

double part_measure(const Part& p);
double region_measure(const Region& r);

/// Axis-aligned bounds of a part (thin wires have degenerate extents).
std::pair<Vec3, Vec3> part_bounds(const Part& p);

/// Express any geometry as explicit regions.
GenericPair to_generic(const BodyGeometry& g);

/// Swap the roles of regions A and B.
BodyGeometry exchange_regions(const BodyGeometry& g);

/// Reflect through the plane x_axis = 0.
BodyGeometry mirrored(const BodyGeometry& g, int axis);

/// Throws DomainError for non-positive dimensions or overlapping regions.
/// The overlap test is exact for ball pairs and conservative (bounding boxes)
/// otherwise; touching faces are allowed.
void validate_geometry(const BodyGeometry& g);

/// True when every point of both regions lies in z = 0.
bool is_planar_xy(const BodyGeometry& g);

std::string geometry_name(const BodyGeometry& g);

/// Build a geometry from "janus:<a>", "wrench:<a>,<b>,<r_cross>" or
/// "flags:<a>,<w>,<h>,<t>". Arguments are lengths with SI suffixes, e.g.
/// "wrench:1um,1um,50nm". The flag wire gets a 50 nm radius.
BodyGeometry geometry_from_preset(const std::string& spec);

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  int max_subdivisions = 20000;
  PhiEvalPolicy phi_policy{};
  std::uint64_t mc_samples = 1u << 16;
  std::uint64_t rng_seed = 20240611;
  bool allow_monte_carlo = false;
  unsigned threads = 1;

  void validate() const;
  AdaptiveOptions adaptive() const { return {rel_tol, abs_tol, max_subdivisions}; }
};

struct ThinMetalReport {
  bool valid = true;
  double max_metal_thickness_nm = 0.0;
  double skin_depth_nm = 0.0;
};

/// Two homogeneous regions with their materials; origin at the centre of mass.
struct TwoPartBody {
  BodyGeometry geometry;
  Material material_a;
  Material material_b;

  /// Relabel A <-> B (geometry and materials together).
  TwoPartBody exchanged() const;

  /// Compares the thickest metal dimension with the skin depth at omega_peak.
  ThinMetalReport thin_metal_check(double omega_peak) const;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct VectorEstimate {
  Vec3 value = Vec3::Zero();
  Vec3 error = Vec3::Zero();
};

/// I_AB(omega) = int_A int_B R_z phi(omega R) / (16 pi^2 R^8). Janus balls use
/// an axisymmetric reduction; planar inversion-symmetric bodies are exactly
/// zero; anything else needs q.allow_monte_carlo.
Estimate pair_integral_IAB(const BodyGeometry& g, double omega, const QuadratureSpec& q);
inline Estimate pair_integral_IAB(const TwoPartBody& body, double omega, const QuadratureSpec& q) {
  return pair_integral_IAB(body.geometry, omega, q);
}

/// J_AB(omega) = -int_A int_B (r x r') phi(omega R) / R^8.
VectorEstimate pair_integral_JAB(const BodyGeometry& g, double omega, const QuadratureSpec& q);
inline VectorEstimate pair_integral_JAB(const TwoPartBody& body, double omega, const QuadratureSpec& q) {
  return pair_integral_JAB(body.geometry, omega, q);
}

/// Dimensionless Janus profile 8 pi a I_AB as a function of omega a, with
/// quadrature error. Sign: negative for A on top.
Estimate janus_scaled_IAB(double omega_a, bool a_on_top, const QuadratureSpec& q);

/// Janus profile function G(rho) = int mu C(rho, mu) dmu for the unit ball,
/// where C is the overlap volume of A and B shifted by rho (unit vector at
/// polar cosine mu). Exposed for testing.
double janus_profile(double rho, bool a_on_top, double rel_tol = 1e-10);

struct WrenchFactor {
  double j_ab = 0.0;   // J_AB(omega)
  double j_hat = 0.0;  // J_AB / (2 omega^4 S_A S_B)
  double error = 0.0;  // absolute error on j_hat
};

/// Out-of-plane geometric factor of the dual wrench by a 1-D radial reduction
/// about the wire/tag junction.
WrenchFactor wrench_JAB_reduced(double a, double b, double area_a, double area_b, double omega,
                                const QuadratureSpec& q);

/// Dimensionless J-hat(a~, b~) directly.
Estimate wrench_jhat(double a_tilde, double b_tilde, const QuadratureSpec& q);

/// Same quantity by nested 2-D quadrature over the tag and wire coordinates.
/// Independent of the radial reduction; intended for moderate omega a.
Estimate wrench_jhat_direct(double a_tilde, double b_tilde, const QuadratureSpec& q);

enum class PairKind { IAB, JAB };

/// Stratified Monte Carlo over points of A and B. For IAB the vector holds the
/// full force-kernel integral (z is I_AB); for JAB it is J_AB. Deterministic for
/// a given seed and sample count, independent of q.threads.
VectorEstimate mc_pair_oracle(const BodyGeometry& g, double omega, PairKind kind, const QuadratureSpec& q);
inline VectorEstimate mc_pair_oracle(const TwoPartBody& body, double omega, PairKind kind,
                                     const QuadratureSpec& q) {
  return mc_pair_oracle(body.geometry, omega, kind, q);
}

}  // namespace fluct
