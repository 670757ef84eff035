#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "fluct/errors.hpp"
#include "fluct/geometry.hpp"
#include "fluct/montecarlo.hpp"
#include "fluct/quadrature.hpp"
#include "fluct/units.hpp"

using namespace fluct;
constexpr double kPi = std::numbers::pi;

TEST(Geometry, MeasuresOfParts) {
  EXPECT_NEAR(part_measure(BallPart{Vec3::Zero(), 2.0}), 4.0 / 3.0 * kPi * 8.0, 1e-12);
  EXPECT_NEAR(part_measure(HalfBallPart{Vec3::Zero(), 1.0, 1}), 2.0 / 3.0 * kPi, 1e-12);
  EXPECT_NEAR(part_measure(BoxPart{Vec3(0, 0, 0), Vec3(1, 2, 3)}), 6.0, 1e-12);
  EXPECT_NEAR(part_measure(CylinderPart{Vec3::Zero(), 2, 0.5, 4.0}), kPi, 1e-12);
  EXPECT_NEAR(part_measure(WirePart{Vec3(0, 0, 0), Vec3(3, 4, 0), 0.5}), 2.5, 1e-12);
}

TEST(Geometry, GenericFormsCarryTheMeasure) {
  const DualWrench w{2.0, 1.0, 0.1, 0.2};
  const auto g = to_generic(w);
  EXPECT_NEAR(region_measure(g.a), 0.1 * 4.0, 1e-12);
  EXPECT_NEAR(region_measure(g.b), 0.2 * 2.0, 1e-12);
  const auto j = to_generic(JanusBall{1.5, true});
  EXPECT_NEAR(region_measure(j.a), 2.0 / 3.0 * kPi * std::pow(1.5, 3), 1e-12);
}

TEST(Geometry, Validation) {
  EXPECT_THROW(validate_geometry(JanusBall{-1.0, true}), DomainError);
  EXPECT_THROW(validate_geometry(DualWrench{1.0, 0.0, 1.0, 1.0}), DomainError);
  EXPECT_NO_THROW(validate_geometry(JanusBall{1.0, true}));
  GenericPair overlap{{{BallPart{Vec3::Zero(), 1.0}}}, {{BallPart{Vec3(1.0, 0, 0), 1.0}}}};
  EXPECT_THROW(validate_geometry(overlap), DomainError);
  GenericPair touching{{{BallPart{Vec3::Zero(), 1.0}}}, {{BallPart{Vec3(2.0, 0, 0), 1.0}}}};
  EXPECT_NO_THROW(validate_geometry(touching));
}

TEST(Geometry, Presets) {
  const auto& u = default_units();
  const auto j = std::get<JanusBall>(geometry_from_preset("janus:100nm"));
  EXPECT_NEAR(j.radius, u.length_from_m(100e-9), 1e-12);
  const auto w = std::get<DualWrench>(geometry_from_preset("wrench:1um,2um,50nm"));
  EXPECT_NEAR(w.tag_length / w.half_length, 2.0, 1e-12);
  EXPECT_NEAR(w.area_a, kPi * std::pow(u.length_from_m(50e-9), 2), 1e-9 * w.area_a);
  EXPECT_NO_THROW(geometry_from_preset("flags:1um,500nm,500nm,50nm"));
  EXPECT_THROW(geometry_from_preset("wrench:1um"), std::invalid_argument);
  EXPECT_THROW(geometry_from_preset("cube:1um"), std::invalid_argument);
  EXPECT_THROW(geometry_from_preset("janus"), std::invalid_argument);
}

TEST(Geometry, PlanarAndNames) {
  EXPECT_TRUE(is_planar_xy(DualWrench{}));
  EXPECT_FALSE(is_planar_xy(JanusBall{}));
  EXPECT_FALSE(is_planar_xy(DualFlag{}));
  EXPECT_FALSE(geometry_name(JanusBall{}).empty());
}

// --- Janus profile -----------------------------------------------------------

TEST(JanusProfile, SmallShiftIsADiskSweep) {
  // For a small shift the overlap is a slab of the unit disk of height rho mu,
  // so G ~ int mu * pi rho mu = pi rho / 3.
  for (double rho : {1e-3, 1e-2}) EXPECT_NEAR(janus_profile(rho, true), kPi * rho / 3.0, 2e-2 * kPi * rho / 3.0);
}

TEST(JanusProfile, CubicMomentIsPiOverSix) {
  // int rho^3 G = pi/6 is what makes the small-omega limit omega^8 a^7 / 108.
  const auto r = integrate_adaptive([](double rho) { return rho * rho * rho * janus_profile(rho, true); }, 0.0, 2.0,
                                    {1e-9, 0.0, 400}, std::vector<double>{1.0});
  EXPECT_NEAR(r.value, kPi / 6.0, 1e-7);
}

TEST(JanusProfile, VanishesBeyondDiameterAndFlipsWithLabels) {
  EXPECT_EQ(janus_profile(2.0, true), 0.0);
  EXPECT_EQ(janus_profile(2.5, true), 0.0);
  for (double rho : {0.3, 1.0, 1.7}) EXPECT_NEAR(janus_profile(rho, false), -janus_profile(rho, true), 1e-12);
}

TEST(JanusIAB, SmallOmegaLimit) {
  QuadratureSpec q;
  for (double wa : {1e-3, 1e-2}) {
    const double v = janus_scaled_IAB(wa, true, q).value;
    const double lim = -8.0 * kPi * std::pow(wa, 8) / 108.0;
    EXPECT_NEAR(v / lim, 1.0, 1e-2) << wa;
  }
}

TEST(JanusIAB, LogLogSlopes) {
  QuadratureSpec q;
  auto slope = [&](double w1, double w2) {
    const double v1 = std::abs(janus_scaled_IAB(w1, true, q).value), v2 = std::abs(janus_scaled_IAB(w2, true, q).value);
    return std::log(v2 / v1) / std::log(w2 / w1);
  };
  EXPECT_NEAR(slope(0.01, 0.1), 8.0, 0.4);
  EXPECT_NEAR(slope(100.0, 1000.0), 4.0, 0.2);
}

TEST(JanusIAB, PhysicalUnitsAndSymmetry) {
  QuadratureSpec q;
  const double a = 3.0, w = 0.5;
  const auto s = janus_scaled_IAB(w * a, true, q);
  const auto phys = pair_integral_IAB(JanusBall{a, true}, w, q);
  EXPECT_NEAR(phys.value, s.value / (8.0 * kPi * a), 1e-12 * std::abs(phys.value));
  const auto flipped = pair_integral_IAB(JanusBall{a, false}, w, q);
  EXPECT_NEAR(flipped.value, -phys.value, 1e-12 * std::abs(phys.value));
  EXPECT_EQ(janus_scaled_IAB(0.0, true, q).value, 0.0);
}

TEST(JanusIAB, MonteCarloAgreesWithinThreeSigma) {
  QuadratureSpec q;
  q.mc_samples = 1u << 18;
  q.threads = 2;
  for (double w : {1.0, 3.0}) {
    const auto mc = mc_pair_oracle(JanusBall{1.0, true}, w, PairKind::IAB, q);
    const double det = janus_scaled_IAB(w, true, q).value / (8.0 * kPi);
    EXPECT_LT(std::abs(mc.value.z() - det), 3.0 * mc.error.z()) << w;
    // x and y components vanish by symmetry
    EXPECT_LT(std::abs(mc.value.x()), 4.0 * mc.error.x() + 1e-300);
  }
}

// --- Monte Carlo mechanics ------------------------------------------------------

TEST(MonteCarlo, CounterStreamIsAPureFunction) {
  CounterRng a(1, 2), b(1, 2), c(1, 3);
  EXPECT_EQ(a.bits(17), b.bits(17));
  EXPECT_NE(a.bits(17), c.bits(17));
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) mean += a.uniform(i);
  EXPECT_NEAR(mean / 100000.0, 0.5, 5e-3);
}

TEST(MonteCarlo, SamplesStayInsideTheRegion) {
  const auto g = to_generic(JanusBall{2.0, true});
  CounterRng r(5, 0);
  for (int i = 0; i < 2000; ++i) {
    const double u[3] = {r.uniform(3 * i), r.uniform(3 * i + 1), r.uniform(3 * i + 2)};
    const Vec3 p = sample_region(g.a, u);
    EXPECT_LE(p.norm(), 2.0 + 1e-12);
    EXPECT_GE(p.z(), 0.0);
  }
}

TEST(MonteCarlo, BitIdenticalAcrossThreadCounts) {
  QuadratureSpec q;
  q.mc_samples = 1u << 15;
  VectorEstimate ref;
  for (unsigned t : {1u, 4u, 8u}) {
    q.threads = t;
    const auto e = mc_pair_oracle(JanusBall{1.0, true}, 2.0, PairKind::IAB, q);
    if (t == 1) ref = e;
    EXPECT_EQ(e.value, ref.value);
    EXPECT_EQ(e.error, ref.error);
  }
}

TEST(MonteCarlo, ErrorShrinksAsInverseSquareRoot) {
  QuadratureSpec q;
  q.mc_samples = 1u << 14;
  const double e1 = mc_pair_oracle(JanusBall{1.0, true}, 2.0, PairKind::IAB, q).error.z();
  q.mc_samples = 1u << 18;
  const double e2 = mc_pair_oracle(JanusBall{1.0, true}, 2.0, PairKind::IAB, q).error.z();
  EXPECT_NEAR(e1 / e2, 4.0, 0.6);
}

TEST(MonteCarlo, SeedChangesTheEstimateButNotItsScale) {
  QuadratureSpec q;
  q.mc_samples = 1u << 15;
  const auto a = mc_pair_oracle(JanusBall{1.0, true}, 2.0, PairKind::IAB, q);
  q.rng_seed += 1;
  const auto b = mc_pair_oracle(JanusBall{1.0, true}, 2.0, PairKind::IAB, q);
  EXPECT_NE(a.value.z(), b.value.z());
  EXPECT_LT(std::abs(a.value.z() - b.value.z()), 5.0 * std::hypot(a.error.z(), b.error.z()));
}

// --- Wrench ---------------------------------------------------------------------

TEST(Wrench, ReducedAgreesWithDirectDoubleIntegral) {
  QuadratureSpec q;
  q.rel_tol = 1e-9;
  for (auto [a, b] : {std::pair{0.3, 0.3}, {1.0, 2.0}, {3.0, 1.5}}) {
    const double r = wrench_jhat(a, b, q).value, d = wrench_jhat_direct(a, b, q).value;
    EXPECT_NEAR(r, d, 1e-7 * std::abs(d)) << a << "," << b;
  }
}

TEST(Wrench, Asymptotes) {
  QuadratureSpec q;
  const double big = wrench_jhat(1e3, 1e3, q).value;
  EXPECT_NEAR(big / (11.0 / 30.0 * kPi * 1e3), 1.0, 0.02);
  const double x = 1e-2;
  const double small = wrench_jhat(x, x, q).value;
  EXPECT_NEAR(small / (56.0 / 675.0 * std::pow(x, 6)), 1.0, 0.01);
}

TEST(Wrench, CurveOrderingInTagLength) {
  QuadratureSpec q;
  for (double wa : {0.3, 3.0, 100.0}) {
    const double h = wrench_jhat(wa, 0.5 * wa, q).value, m = wrench_jhat(wa, wa, q).value,
                 d = wrench_jhat(wa, 2.0 * wa, q).value;
    EXPECT_LT(h, m) << wa;
    EXPECT_LT(m, d) << wa;
  }
}

TEST(Wrench, PhysicalFactorAndMirrorImage) {
  QuadratureSpec q;
  const DualWrench w{2.0, 1.0, 0.01, 0.02};
  const double omega = 0.7;
  const auto f = wrench_JAB_reduced(w.half_length, w.tag_length, w.area_a, w.area_b, omega, q);
  EXPECT_NEAR(f.j_ab, 2.0 * std::pow(omega, 4) * w.area_a * w.area_b * f.j_hat, 1e-12 * std::abs(f.j_ab));
  const auto z = pair_integral_JAB(w, omega, q).value;
  EXPECT_NEAR(z.z(), f.j_ab, 1e-12 * std::abs(f.j_ab));
  EXPECT_EQ(z.x(), 0.0);
  // A mirror image is the opposite-handed wrench.
  q.allow_monte_carlo = true;
  q.mc_samples = 1u << 17;
  const auto mz = pair_integral_JAB(mirrored(w, 0), omega, q);
  EXPECT_LT(std::abs(mz.value.z() + f.j_ab), 4.0 * mz.error.z());
}

TEST(Wrench, MonteCarloOracleAgrees) {
  QuadratureSpec q;
  q.mc_samples = 1u << 18;
  q.threads = 2;
  const DualWrench w{1.0, 1.0, 1.0, 1.0};
  for (double omega : {0.5, 2.0}) {
    const auto mc = mc_pair_oracle(w, omega, PairKind::JAB, q);
    const double det = wrench_JAB_reduced(1.0, 1.0, 1.0, 1.0, omega, q).j_ab;
    EXPECT_LT(std::abs(mc.value.z() - det), 3.0 * mc.error.z()) << omega;
  }
}

TEST(PairIntegrals, InversionSymmetricBodiesHaveNoForce) {
  QuadratureSpec q;
  EXPECT_EQ(pair_integral_IAB(DualWrench{}, 1.0, q).value, 0.0);
  EXPECT_EQ(pair_integral_JAB(JanusBall{}, 1.0, q).value, Vec3::Zero());
  EXPECT_THROW(pair_integral_JAB(DualFlag{}, 1.0, q), DomainError);
}
