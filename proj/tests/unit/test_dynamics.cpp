#include "fluidact/dynamics.hpp"
#include "fluidact/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fluidact;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const ActuatorGeometry kGeom = reference::cantilever();
const StructuralMaterial kMat = reference::polysilicon();

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(BoundaryLayer, HandValues) {
    EXPECT_NEAR(boundary_layer_thickness(kTwoPi * 42.57e3, fluid_preset("air")), 1.086e-5,
                0.001e-5);
    EXPECT_NEAR(boundary_layer_thickness(kTwoPi * 13.77e3, fluid_preset("tap-water")), 4.456e-6,
                0.001e-6);
    EXPECT_EQ(boundary_layer_thickness(1e5, FluidMedium("inviscid", 1, 1000, 0)), 0.0);
    EXPECT_THROW(boundary_layer_thickness(1e5, fluid_preset("vacuum")), Inapplicable);
    EXPECT_THROW(boundary_layer_thickness(0.0, fluid_preset("air")), InvalidInput);
}

TEST(HydrodynamicFunction, Values) {
    const auto air = hydrodynamic_function(kTwoPi * 42.57e3, kGeom, fluid_preset("air"));
    EXPECT_NEAR(air.delta_over_width, 0.362, 0.001);
    EXPECT_NEAR(air.real, 2.431, 0.002);
    EXPECT_NEAR(air.imag, 1.735, 0.002);

    const auto water = hydrodynamic_function(kTwoPi * 13.77e3, kGeom, fluid_preset("tap-water"));
    EXPECT_NEAR(water.delta_over_width, 0.149, 0.001);
    EXPECT_NEAR(water.real, 1.620, 0.002);
    EXPECT_NEAR(water.imag, 0.625, 0.002);

    const auto inviscid = hydrodynamic_function(1e5, kGeom, FluidMedium("inviscid", 1, 1000, 0));
    EXPECT_EQ(inviscid.real, 1.0553);
    EXPECT_EQ(inviscid.imag, 0.0);
}

TEST(HydrodynamicFunction, DecreasesWithFrequency) {
    const auto water = fluid_preset("tap-water");
    double prev_r = INFINITY;
    double prev_i = INFINITY;
    double prev_m = INFINITY;
    for (double f = 10.0; f < 1e9; f *= 1.7) {
        const auto h = hydrodynamic_function(kTwoPi * f, kGeom, water);
        EXPECT_LT(h.real, prev_r);
        EXPECT_LT(h.imag, prev_i);
        EXPECT_GE(h.real, 1.0553);
        EXPECT_GE(h.imag, 0.0);
        const double m = effective_mass(kTwoPi * f, kGeom, kMat, water);
        EXPECT_LT(m, prev_m);
        EXPECT_GT(m, structural_mass(kGeom, kMat));
        prev_r = h.real;
        prev_i = h.imag;
        prev_m = m;
    }
    const auto far = hydrodynamic_function(kTwoPi * 1e15, kGeom, water);
    EXPECT_NEAR(far.real, 1.0553, 1e-3);
    EXPECT_NEAR(far.imag, 0.0, 1e-3);
}

TEST(EffectiveMass, Values) {
    EXPECT_NEAR(effective_mass(1.0, kGeom, kMat, fluid_preset("vacuum")), 3.495e-11, 1e-24);
    EXPECT_LT(rel(effective_mass(1.0, kGeom, kMat, fluid_preset("vacuum")), 3.49e-11), 0.005);
    EXPECT_LT(rel(effective_mass(kTwoPi * 42.57e3, kGeom, kMat, fluid_preset("air")), 3.5456e-11),
              0.001);
    const double water = effective_mass(kTwoPi * 13.77e3, kGeom, kMat, fluid_preset("tap-water"));
    EXPECT_NEAR(water, 3.21e-10, 0.01e-10);
    EXPECT_LT(rel(water, 3.09e-10), 0.10);
}

TEST(DampingCoefficient, Values) {
    EXPECT_LT(rel(damping_coefficient(kTwoPi * 42.57e3, kGeom, fluid_preset("air")), 9.68e-8), 0.002);
    EXPECT_LT(rel(damping_coefficient(kTwoPi * 42.57e3, kGeom, fluid_preset("air")), 9.69e-8), 0.01);
    const double water = damping_coefficient(kTwoPi * 13.77e3, kGeom, fluid_preset("tap-water"));
    EXPECT_NEAR(water, 9.6e-6, 0.1e-6);
    EXPECT_LT(rel(water, 1.06e-5), 0.15);
    EXPECT_EQ(damping_coefficient(1e5, kGeom, fluid_preset("vacuum")), 0.0);
}

TEST(QualityFactor, Values) {
    EXPECT_TRUE(std::isinf(quality_factor(1e5, kGeom, kMat, fluid_preset("vacuum"))));
    const double air = quality_factor(kTwoPi * 42.529e3, kGeom, kMat, fluid_preset("air"));
    EXPECT_NEAR(air, 98.0, 0.1);
    EXPECT_LT(rel(air, 98.31), 0.02);
    const double water = quality_factor(kTwoPi * 13.77e3, kGeom, kMat, fluid_preset("tap-water"));
    EXPECT_NEAR(water, 2.9, 0.05);
    EXPECT_LT(rel(water, 3.19), 0.15);
}

TEST(QualityFactor, EqualsOmegaMassOverDamping) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const FluidMedium fluid("f", 1.0, 0.1 + 2000 * u(rng), 1e-6 + 1e-2 * u(rng));
        const ActuatorGeometry geom(100e-6 + 500e-6 * u(rng), 10e-6 + 50e-6 * u(rng),
                                    0.5e-6 + 5e-6 * u(rng), 1e-10, 1e-6);
        const double omega = kTwoPi * (1e3 + 1e6 * u(rng));
        const double q = quality_factor(omega, geom, kMat, fluid);
        const double identity = omega * effective_mass(omega, geom, kMat, fluid) /
                                damping_coefficient(omega, geom, fluid);
        EXPECT_NEAR(q, identity, 1e-12 * identity);
    }
}

TEST(VacuumFrequency, ValueAndScaling) {
    const double f = vacuum_frequency(kGeom, kMat);
    EXPECT_NEAR(f, 42836.38907578985, 1e-6);
    EXPECT_LT(rel(f, 42.88e3), 0.01);
    const ActuatorGeometry longer(2 * kGeom.length(), kGeom.width(), kGeom.thickness(),
                                  kGeom.electrode_area(), kGeom.gap());
    EXPECT_NEAR(vacuum_frequency(longer, kMat), f / 4, 1e-9 * f);
    const ActuatorGeometry thicker(kGeom.length(), kGeom.width(), 2 * kGeom.thickness(),
                                   kGeom.electrode_area(), kGeom.gap());
    EXPECT_NEAR(vacuum_frequency(thicker, kMat), 2 * f, 1e-9 * f);
}

TEST(ModalStiffness, ReproducesVacuumFrequency) {
    const auto k = modal_stiffness(kGeom, kMat);
    EXPECT_EQ(k.source(), StiffnessSource::modal);
    EXPECT_NEAR(std::sqrt(k.k() / structural_mass(kGeom, kMat)) / kTwoPi,
                vacuum_frequency(kGeom, kMat), 1e-8);
}

TEST(ResonanceInFluid, Air) {
    const auto p = resonance_in_fluid(kGeom, kMat, fluid_preset("air"));
    EXPECT_NEAR(p.f_natural, 42529.07467348162, 42529.0 * 1e-9);
    EXPECT_LT(rel(p.f_natural, 42.57e3), 0.01);
    EXPECT_NEAR(p.q_factor, 97.99532211851285, 1e-6);
    EXPECT_NEAR(p.effective_mass, 3.5456921172517305e-11, 1e-19);
    EXPECT_NEAR(p.damping, 9.668552929077206e-08, 1e-15);
    EXPECT_FALSE(p.used_bisection);
}

TEST(ResonanceInFluid, Water) {
    const auto p = resonance_in_fluid(kGeom, kMat, fluid_preset("tap-water"));
    EXPECT_NEAR(p.f_natural, 14161.426211841497, 14161.0 * 1e-8);
    EXPECT_NEAR(p.f_peak, 13745.682384650627, 14161.0 * 1e-8);
    EXPECT_LT(rel(p.f_peak, 13.77e3), 0.05);
    EXPECT_NEAR(p.q_factor, 2.939826293942563, 1e-6);
    EXPECT_NEAR(p.effective_mass, 3.197855985691341e-10, 1e-17);
    EXPECT_NEAR(p.damping, 9.678857453441482e-06, 1e-13);
}

TEST(ResonanceInFluid, VacuumAndExplicitEvaluation) {
    const auto vac = resonance_in_fluid(kGeom, kMat, fluid_preset("vacuum"));
    EXPECT_EQ(vac.f_natural, vac.f_vacuum);
    EXPECT_EQ(vac.f_peak, vac.f_vacuum);
    EXPECT_TRUE(std::isinf(vac.q_factor));
    EXPECT_EQ(vac.damping, 0.0);

    const auto water = fluid_preset("tap-water");
    const auto at = resonance_in_fluid(kGeom, kMat, water, 13.77e3);
    EXPECT_EQ(at.evaluation_frequency, 13.77e3);
    EXPECT_EQ(at.effective_mass, effective_mass(kTwoPi * 13.77e3, kGeom, kMat, water));
    EXPECT_THROW(resonance_in_fluid(kGeom, kMat, water, -1.0), InvalidInput);
}

TEST(ResonanceInFluid, SelfConsistentAndOrdered) {
    for (const char* name : {"air", "tap-water", "ipa"}) {
        const auto fluid = fluid_preset(name);
        const auto p = resonance_in_fluid(kGeom, kMat, fluid);
        EXPECT_NEAR(resonance_relation(p.f_natural, kGeom, kMat, fluid), p.f_natural,
                    1e-9 * p.f_natural)
            << name;
        EXPECT_LE(p.f_natural, p.f_vacuum);
        EXPECT_LE(p.f_peak, p.f_natural);
        // Identical to sqrt(k/m*) with the modal stiffness.
        EXPECT_NEAR(natural_frequency(modal_stiffness(kGeom, kMat), kGeom, kMat, fluid),
                    p.f_natural, 1e-8 * p.f_natural);
    }
    const double air = resonance_in_fluid(kGeom, kMat, fluid_preset("air")).f_natural;
    const double water = resonance_in_fluid(kGeom, kMat, fluid_preset("tap-water")).f_natural;
    EXPECT_LT(water, air);
    EXPECT_LT(air, vacuum_frequency(kGeom, kMat));
}

TEST(ResonanceInFluid, PeakShiftAirToWater) {
    const double air = resonance_in_fluid(kGeom, kMat, fluid_preset("air")).f_peak;
    const double water = resonance_in_fluid(kGeom, kMat, fluid_preset("tap-water")).f_peak;
    const double shift = (air - water) / air;
    EXPECT_GE(shift, 0.65);
    EXPECT_LE(shift, 0.70);
}

TEST(DampedPeak, Limits) {
    EXPECT_EQ(damped_peak_frequency(1e3, INFINITY), 1e3);
    EXPECT_EQ(damped_peak_frequency(1e3, 0.5), 0.0);
    EXPECT_NEAR(damped_peak_frequency(1e3, 1.0), 1e3 * std::sqrt(0.5), 1e-9);
}

TEST(SqueezeFilm, CoefficientAsPublished) {
    // eta w^3 / g^3 = 8.59e-4 * (30/2)^3
    EXPECT_NEAR(squeeze_film_coefficient(kGeom, fluid_preset("tap-water")), 8.59e-4 * 3375.0,
                1e-12);
    EXPECT_NEAR(squeeze_film_coefficient(kGeom, fluid_preset("tap-water"), 1e-6),
                8 * 8.59e-4 * 3375.0, 1e-10);
    EXPECT_EQ(squeeze_film_coefficient(kGeom, fluid_preset("vacuum")), 0.0);
    EXPECT_THROW(squeeze_film_coefficient(kGeom, fluid_preset("air"), 0.0), InvalidInput);
}
