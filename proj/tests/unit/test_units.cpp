#include <gtest/gtest.h>

#include <cmath>

#include "fluct/errors.hpp"
#include "fluct/material.hpp"
#include "fluct/units.hpp"

using namespace fluct;

TEST(Units, RoundTripEveryQuantity) {
  const auto& u = default_units();
  for (int i = 0; i <= static_cast<int>(Quantity::MagneticField); ++i) {
    const auto q = static_cast<Quantity>(i);
    EXPECT_NEAR(u.to_si(q, u.to_natural(q, 3.7)), 3.7, 1e-14) << si_unit(q);
  }
}

TEST(Units, KnownConversions) {
  const auto& u = default_units();
  // hbar c = 197.327 eV nm
  EXPECT_NEAR(u.length_from_m(1e-9), 1.0 / 197.3269804, 1e-12);
  EXPECT_NEAR(u.temperature_from_k(300.0), 0.025852, 1e-6);
  EXPECT_NEAR(u.to_natural(Quantity::Velocity, 299792458.0), 1.0, 1e-15);
  // 1 eV^2 of force is e/(hbar c)... 1.602e-19 J / 1.973e-7 m
  EXPECT_NEAR(u.force_to_n(1.0), 1.602176634e-19 / 1.973269804e-7, 1e-20);
}

TEST(Units, ParseQuantity) {
  const auto& u = default_units();
  EXPECT_DOUBLE_EQ(parse_quantity("100 nm", Quantity::Length), u.length_from_m(100e-9));
  EXPECT_DOUBLE_EQ(parse_quantity("0.1um", Quantity::Length), u.length_from_m(100e-9));
  EXPECT_DOUBLE_EQ(parse_quantity("35 meV", Quantity::Energy), 0.035);
  EXPECT_DOUBLE_EQ(parse_quantity("0.5 c", Quantity::Velocity), 0.5);
  EXPECT_THROW(parse_quantity("300", Quantity::Temperature), std::invalid_argument);
  EXPECT_THROW(parse_quantity("300 furlongs", Quantity::Length), std::invalid_argument);
  EXPECT_THROW(parse_quantity("K", Quantity::Temperature), std::invalid_argument);
}

TEST(Material, DrudeSusceptibility) {
  const DrudeMetal g = gold();
  const Complex chi = drude_chi(1.0, g);
  const Complex expect = -81.0 / (1.0 * Complex(1.0, 0.035));
  EXPECT_NEAR(chi.real(), expect.real(), 1e-12);
  EXPECT_NEAR(chi.imag(), expect.imag(), 1e-12);
  EXPECT_GT(chi.imag(), 0.0);
  EXPECT_THROW(drude_chi(0.0, g), DomainError);
}

TEST(Material, SusceptibilityProductAntisymmetric) {
  const Material a = gold(), b = dielectric(2.0);
  for (double w : {0.01, 0.1, 1.0}) {
    EXPECT_DOUBLE_EQ(susceptibility_product(w, a, b), -susceptibility_product(w, b, a));
    EXPECT_EQ(susceptibility_product(w, a, a), 0.0);
    // Im chi_A Re chi_B with a lossless B
    EXPECT_NEAR(susceptibility_product(w, a, b), drude_chi(w, gold()).imag() * 2.0, 1e-12);
  }
}

TEST(Material, SkinDepthOfGoldAtRoomTemperature) {
  const double t = default_units().temperature_from_k(300.0);
  const double d = skin_depth(t, gold());
  EXPECT_NEAR(d, 44.85, 0.05);
}

TEST(Material, Presets) {
  EXPECT_TRUE(std::holds_alternative<DrudeMetal>(material_from_preset("gold")));
  const auto d = std::get<Dielectric>(material_from_preset("dielectric:2.5"));
  EXPECT_DOUBLE_EQ(d.chi0, 2.5);
  EXPECT_THROW(material_from_preset("silver"), std::invalid_argument);
  EXPECT_THROW(material_from_preset("dielectric:x"), std::invalid_argument);
}

TEST(Material, GyrotropicTensorIsAntisymmetricOffDiagonal) {
  GyrotropicSphere s{9.0, 0.035, cyclotron_frequency(1.0), 1.0};
  const auto chi = gyrotropic_chi(0.05, s);
  EXPECT_NEAR(std::abs(chi(0, 1) + chi(1, 0)), 0.0, 1e-12 * std::abs(chi(0, 1)));
  EXPECT_GT(std::abs(chi(0, 1)), 0.0);
  EXPECT_EQ(chi(0, 2), Complex(0.0));
  // ~ 0.1158 meV per tesla
  EXPECT_NEAR(cyclotron_frequency(1.0), 1.1577e-4, 1e-7);
}
