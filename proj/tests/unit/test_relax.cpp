#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fluct/errors.hpp"
#include "fluct/relax.hpp"
#include "fluct/units.hpp"

using namespace fluct;
constexpr double kPi = std::numbers::pi;

namespace {
const UnitContext& U() { return default_units(); }
double rho(double kg_m3) { return U().to_natural(Quantity::MassDensity, kg_m3); }
}  // namespace

TEST(Power, QuadratureMatchesDrudeClosedForm) {
  const double vol = 50.0;
  for (auto [te, tb] : {std::pair{300.0, 600.0}, {300.0, 150.0}, {1000.0, 10.0}}) {
    const auto th = ThermalPair::from_kelvin(te, tb);
    const double quad = net_power(im_trace_of(gold(), vol), th).value;
    const double closed = net_power_drude(gold(), vol, th);
    EXPECT_NEAR(quad, closed, 1e-8 * std::abs(closed)) << te << " " << tb;
  }
  // A hot body emits: negative absorbed power.
  EXPECT_LT(net_power_drude(gold(), 1.0, ThermalPair::from_kelvin(300, 600)), 0.0);
  EXPECT_EQ(net_power_drude(gold(), 1.0, ThermalPair::from_kelvin(300, 300)), 0.0);
}

TEST(Cooling, TimeScaleOfGold) {
  const double tc = U().time_to_s(cooling_time_scale(CoolingModel{}, U().temperature_from_k(300)));
  EXPECT_NEAR(tc, 6.577e-5, 0.01e-5);
  EXPECT_TRUE(CoolingModel{}.valid_at(U().temperature_from_k(1000)));
  EXPECT_FALSE(CoolingModel{}.valid_at(U().temperature_from_k(100)));
}

TEST(Cooling, TimesAreAdditiveAndMonotone) {
  const double T = U().temperature_from_k(300);
  const CoolingModel cm;
  const double t1 = cooling_time(2.0, 1.5, T, cm), t2 = cooling_time(1.5, 1.1, T, cm), t12 = cooling_time(2.0, 1.1, T, cm);
  EXPECT_GT(t1, 0.0);
  EXPECT_NEAR(t1 + t2, t12, 1e-8 * t12);
  EXPECT_GT(cooling_time(2.0, 1.01, T, cm), t12);
  // warming from below
  EXPECT_GT(cooling_time(0.5, 0.9, T, cm), 0.0);
  EXPECT_EQ(cooling_time(1.5, 1.5, T, cm), 0.0);
}

TEST(Cooling, InvalidIntervals) {
  const double T = U().temperature_from_k(300);
  const CoolingModel cm;
  EXPECT_THROW(cooling_time(2.0, 1.0, T, cm), DomainError);
  EXPECT_THROW(cooling_time(2.0, 0.5, T, cm), DomainError);
  EXPECT_THROW(cooling_time(1.5, 2.0, T, cm), DomainError);
  EXPECT_THROW(cooling_time(-1.0, 0.5, T, cm), DomainError);
}

TEST(Inertia, WrenchMomentAgainstRodFormulas) {
  const DualWrench w{2.0, 1.0, 0.3, 0.1};
  const double ra = 5.0, rb = 7.0;
  // central rod about its middle plus two tags at lever arm a
  const double rod = ra * 0.3 * std::pow(4.0, 3) / 12.0;
  const double tags = 2.0 * rb * 0.1 * (std::pow(1.0, 3) / 3.0 + 4.0 * 1.0);
  EXPECT_NEAR(moment_of_inertia(w, ra, rb), rod + tags, 1e-12);
  EXPECT_THROW(moment_of_inertia(w, -1.0, 1.0), DomainError);
}

TEST(Inertia, JanusMass) {
  const double a = 3.0;
  const TwoPartBody b{JanusBall{a, true}, dielectric(1.0), gold()};
  EXPECT_NEAR(body_mass(b), 2.0 / 3.0 * kPi * a * a * a * (rho(2200) + rho(19300)), 1e-9 * body_mass(b));
  EXPECT_THROW(body_mass({JanusBall{a, true}, MonomialAbsorber{}, gold()}), DomainError);
}

TEST(Terminal, JanusClosedForm) {
  QuadratureSpec q;
  const double a = U().length_from_m(100e-9);
  const TwoPartBody b{JanusBall{a, true}, dielectric(1.0), gold()};
  RelaxationProblem p{b, body_mass(b), 0.0, 2.0, U().temperature_from_k(300), DriveModel::ClosedForm};
  const auto r = terminal_velocity(p, q);
  EXPECT_NEAR(U().to_si(Quantity::Velocity, r.value) * 1e9, -0.2009, 0.001);
  EXPECT_NEAR(r.integral, -321.16, 0.05);
  EXPECT_NEAR(r.value, r.prefactor * r.integral, 1e-12 * std::abs(r.value));
  p.u0 = 1.0;
  EXPECT_EQ(terminal_velocity(p, q).value, 0.0);
  // Starting cold reverses the drive.
  p.u0 = 0.5;
  EXPECT_GT(terminal_velocity(p, q).value, 0.0);
  p.body.geometry = JanusBall{a, false};
  p.u0 = 2.0;
  EXPECT_NEAR(terminal_velocity(p, q).value, -r.value, 1e-12 * std::abs(r.value));
}

TEST(Terminal, WrenchClosedForm) {
  QuadratureSpec q;
  const double l = U().length_from_m(1e-6), rw = U().length_from_m(50e-9), s = kPi * rw * rw;
  const DualWrench w{l, l, s, s};
  const TwoPartBody b{w, gold(), dielectric(1.0)};
  RelaxationProblem p{b, 0.0, moment_of_inertia(w, rho(19300), rho(2200)), 2.0, U().temperature_from_k(300),
                      DriveModel::ClosedForm};
  const auto r = terminal_angular_velocity(p, q);
  EXPECT_NEAR(U().to_si(Quantity::AngularFrequency, r.prefactor), 4.215e-7, 0.005e-7);
  EXPECT_NEAR(r.integral, -21188.0, 5.0);
  EXPECT_THROW(terminal_velocity(p, q), DomainError);
  p.moment_of_inertia = 0.0;
  EXPECT_THROW(terminal_angular_velocity(p, q), DomainError);
}

TEST(Terminal, NeedsTheRightMaterials) {
  QuadratureSpec q;
  const TwoPartBody b{JanusBall{10.0, true}, gold(), dielectric(1.0)};
  RelaxationProblem p{b, 1.0, 0.0, 2.0, 0.03, DriveModel::ClosedForm};
  EXPECT_THROW(terminal_velocity(p, q), DomainError);
}
