#include "fluidact/dynamics.hpp"
#include "fluidact/error.hpp"
#include "fluidact/oracle.hpp"
#include "fluidact/response.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fluidact;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

const ActuatorGeometry kGeom = reference::cantilever();
const StructuralMaterial kMat = reference::polysilicon();

// Period mean of the instantaneous Lagrangian (with the path-evaluated
// dissipative work) by the midpoint rule, which is spectrally accurate for
// periodic integrands.
double quadrature_mean(double m, double k, double c, double f, double a, double phi, double a_p,
                       double phi_p, double omega) {
    constexpr int n = 256;
    const double period = kTwoPi / omega;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) * period / n;
        const double z = a * std::cos(omega * t + phi);
        const double v = -a * omega * std::sin(omega * t + phi);
        const double v_path = -a_p * omega * std::sin(omega * t + phi_p);
        sum += 0.5 * m * v * v - 0.5 * k * z * z + f * std::cos(omega * t) * z - c * v_path * z;
    }
    return sum / n;
}

}  // namespace

TEST(AveragedLagrangian, MeanMatchesQuadrature) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
        const double m = u(rng), k = u(rng), c = u(rng), f = u(rng), w = u(rng);
        const double a = u(rng), phi = ph(rng), a_p = u(rng), phi_p = ph(rng);
        const AveragedLagrangian lag(m, k, c, f);
        const double expected = quadrature_mean(m, k, c, f, a, phi, a_p, phi_p, w);
        EXPECT_NEAR(lag.mean(a, phi, a_p, phi_p, w), expected, 1e-12 * (1.0 + std::abs(expected)));
    }
}

TEST(AveragedLagrangian, StationarityIsGradientOfMean) {
    const AveragedLagrangian lag(1.3, 0.7, 0.2, 0.9);
    const double a = 0.8, phi = -1.1, w = 0.9, h = 1e-6;
    const auto g = lag.stationarity(a, phi, w);
    const double d_a = (lag.mean(a + h, phi, a, phi, w) - lag.mean(a - h, phi, a, phi, w)) / (2 * h);
    const double d_phi =
        (lag.mean(a, phi + h, a, phi, w) - lag.mean(a, phi - h, a, phi, w)) / (2 * h);
    EXPECT_NEAR(g[0], d_a, 1e-9);
    EXPECT_NEAR(g[1], d_phi, 1e-9);
}

TEST(AveragedLagrangian, SolutionIsStationary) {
    const AveragedLagrangian lag(3.5e-11, 2.53, 9.7e-8, 1e-9);
    for (double f = 1e3; f < 2e5; f *= 1.3) {
        const auto p = lag.solve(kTwoPi * f);
        const auto g = lag.stationarity(p.amplitude, p.phase, kTwoPi * f);
        EXPECT_LT(std::abs(g[0]), 1e-12 * 1e-9);
        EXPECT_LT(std::abs(g[1]), 1e-12 * 1e-9 * p.amplitude);
    }
}

TEST(AveragedLagrangian, MatchesLorentzian) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double m = 1e-12 + 1e-9 * u(rng);
        const double k = 0.01 + 10 * u(rng);
        const double w0 = std::sqrt(k / m);
        const double q = 0.3 + 300 * u(rng);
        const double c = m * w0 / q;
        const double force = 1e-10 + 1e-6 * u(rng);
        const double w = w0 * (0.01 + 3 * u(rng));
        const auto p = AveragedLagrangian(m, k, c, force).solve(w);
        const auto ref = oracle::lorentzian(w, force, m, c, k);
        EXPECT_NEAR(p.amplitude, ref.amplitude, 1e-9 * ref.amplitude);
        EXPECT_NEAR(p.phase, ref.phase, 1e-9);
    }
}

TEST(AveragedLagrangian, Limits) {
    const AveragedLagrangian lag(1e-10, 2.0, 1e-7, 1e-8);
    const auto stat = lag.solve(0.0);
    EXPECT_NEAR(stat.amplitude, 0.5e-8, 1e-22);
    EXPECT_NEAR(stat.phase, 0.0, 1e-15);

    const double w0 = std::sqrt(2.0 / 1e-10);
    EXPECT_NEAR(lag.solve(w0).phase, -kPi / 2, 1e-12);
    EXPECT_NEAR(lag.solve(w0).amplitude, 1e-8 / (1e-7 * w0), 1e-20);

    const AveragedLagrangian undamped(1.0, 1.0, 0.0, 1.0);
    EXPECT_TRUE(std::isinf(undamped.solve(1.0).amplitude));
    EXPECT_NEAR(undamped.solve(2.0).amplitude, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(undamped.solve(2.0).phase, -kPi, 1e-15);
    EXPECT_NEAR(undamped.solve(0.5).phase, 0.0, 1e-15);

    EXPECT_EQ(AveragedLagrangian(1, 1, 1, 0).solve(1.0).amplitude, 0.0);
    EXPECT_THROW(AveragedLagrangian(0, 1, 1, 1), InvalidInput);
    EXPECT_THROW(AveragedLagrangian(1, 1, -1, 1), InvalidInput);
    EXPECT_THROW(lag.solve(-1.0), InvalidInput);
}

TEST(DriveForce, Decomposition) {
    const ParallelPlate plate{kGeom, reference::nitride_stack(), fluid_preset("tap-water")};
    const auto dc = decompose_drive_force(DriveSignal::dc(5.0), plate);
    EXPECT_GT(dc.static_component, 0.0);
    EXPECT_EQ(dc.harmonic_amplitude, 0.0);
    const auto ac = decompose_drive_force(DriveSignal::ac(5.0, 7e3), plate);
    EXPECT_EQ(ac.static_component, dc.static_component);
    EXPECT_EQ(ac.harmonic_amplitude, dc.static_component);
    EXPECT_EQ(ac.harmonic_frequency, 14e3);
}

TEST(HarmonicResponse, StaticLimitAndResonancePhase) {
    const auto spring = modal_stiffness(kGeom, kMat);
    const auto air = fluid_preset("air");
    const double force = 1e-9;
    const std::vector<double> low{1.0};
    EXPECT_NEAR(harmonic_response(low, force, kGeom, kMat, air, spring)[0].amplitude,
                force / spring.k(), 1e-6 * force / spring.k());

    const auto dyn = resonance_in_fluid(kGeom, kMat, air);
    const std::vector<double> at{dyn.f_natural};
    const auto p = harmonic_response(at, force, kGeom, kMat, air, spring)[0];
    EXPECT_NEAR(p.phase, -kPi / 2, 1e-6);
    EXPECT_NEAR(p.amplitude, dyn.q_factor * force / spring.k(), 1e-6 * p.amplitude);
}

TEST(HarmonicResponse, ParallelIsBitIdentical) {
    const auto spring = modal_stiffness(kGeom, kMat);
    const auto grid = linear_frequency_grid(1e3, 80e3, 997);
    for (const char* name : {"air", "tap-water"}) {
        const auto fluid = fluid_preset(name);
        const auto serial = harmonic_response(grid, 1e-9, kGeom, kMat, fluid, spring);
        ResponseOptions opts;
        opts.workers = 7;
        const auto parallel = harmonic_response(grid, 1e-9, kGeom, kMat, fluid, spring, opts);
        ASSERT_EQ(serial.size(), parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            EXPECT_EQ(serial[i].amplitude, parallel[i].amplitude);
            EXPECT_EQ(serial[i].phase, parallel[i].phase);
        }
    }
}

TEST(HarmonicResponse, FrozenPeakMatchesDampedPeak) {
    // With m* and c frozen at the natural frequency the sweep is a Lorentzian,
    // so its maximum sits at f0 sqrt(1 - 1/(2Q^2)).
    const auto spring = modal_stiffness(kGeom, kMat);
    for (const char* name : {"air", "tap-water"}) {
        const auto fluid = fluid_preset(name);
        const auto dyn = resonance_in_fluid(kGeom, kMat, fluid);
        ResponseOptions opts;
        opts.frozen_frequency = dyn.f_natural;
        const auto grid = linear_frequency_grid(0.5 * dyn.f_natural, 1.5 * dyn.f_natural, 20001);
        const auto peak = peak_response(harmonic_response(grid, 1e-9, kGeom, kMat, fluid, spring, opts));
        const double step = grid[1] - grid[0];
        EXPECT_NEAR(peak.frequency, dyn.f_peak, step) << name;
    }
}

TEST(HarmonicResponse, PeakShiftsDownInWater) {
    const auto spring = modal_stiffness(kGeom, kMat);
    const auto grid = linear_frequency_grid(1e3, 60e3, 5901);
    const auto air = peak_response(harmonic_response(grid, 1e-9, kGeom, kMat, fluid_preset("air"), spring));
    const auto water =
        peak_response(harmonic_response(grid, 1e-9, kGeom, kMat, fluid_preset("tap-water"), spring));
    const double shift = (air.frequency - water.frequency) / air.frequency;
    EXPECT_GE(shift, 0.65);
    EXPECT_LE(shift, 0.70);
    EXPECT_LT(water.amplitude, air.amplitude);
}

TEST(HarmonicResponse, SqueezeFilmAddsDamping) {
    const auto spring = modal_stiffness(kGeom, kMat);
    const auto water = fluid_preset("tap-water");
    const std::vector<double> at{14e3};
    ResponseOptions opts;
    opts.squeeze.enabled = true;
    const auto with = harmonic_response(at, 1e-9, kGeom, kMat, water, spring, opts)[0];
    const auto without = harmonic_response(at, 1e-9, kGeom, kMat, water, spring)[0];
    EXPECT_LT(with.amplitude, without.amplitude);
    EXPECT_NEAR(total_damping(kTwoPi * 14e3, kGeom, water, opts.squeeze),
                damping_coefficient(kTwoPi * 14e3, kGeom, water) +
                    squeeze_film_coefficient(kGeom, water),
                1e-15);
}

TEST(HarmonicResponse, RejectsBadInput) {
    const auto spring = modal_stiffness(kGeom, kMat);
    const auto air = fluid_preset("air");
    const std::vector<double> descending{2e3, 1e3};
    EXPECT_THROW(harmonic_response(descending, 1e-9, kGeom, kMat, air, spring), InvalidInput);
    const std::vector<double> zero{0.0};
    EXPECT_THROW(harmonic_response(zero, 1e-9, kGeom, kMat, air, spring), InvalidInput);
    ResponseOptions soft;
    soft.electrostatic_gradient = 10.0;
    const std::vector<double> one{1e3};
    EXPECT_THROW(harmonic_response(one, 1e-9, kGeom, kMat, air, spring, soft), InvalidInput);
    EXPECT_TRUE(harmonic_response({}, 1e-9, kGeom, kMat, air, spring).empty());
}

TEST(NormalizeResponse, Cases) {
    const std::vector<ResponsePoint> ref{{1, 1.0, 0}, {2, 4.0, 0}, {3, 2.0, 0}};
    const std::vector<ResponsePoint> pts{{1, 2.0, 0}, {2, 1.0, 0}};
    const auto self = normalize_response(ref, ref);
    EXPECT_EQ(peak_response(self).amplitude, 1.0);
    const auto other = normalize_response(pts, ref);
    EXPECT_EQ(other[0].amplitude, 0.5);
    EXPECT_EQ(other[1].amplitude, 0.25);
    EXPECT_TRUE(normalize_response({}, ref).empty());
    EXPECT_THROW(normalize_response(pts, {}), InvalidInput);
    const std::vector<ResponsePoint> flat{{1, 0.0, 0}};
    EXPECT_THROW(normalize_response(pts, flat), InvalidInput);
    EXPECT_THROW(peak_response({}), InvalidInput);
}

TEST(FrequencyGrid, Endpoints) {
    const auto g = linear_frequency_grid(1e3, 2e3, 11);
    EXPECT_EQ(g.front(), 1e3);
    EXPECT_EQ(g.back(), 2e3);
    EXPECT_NEAR(g[5], 1.5e3, 1e-9);
    EXPECT_THROW(linear_frequency_grid(1e3, 2e3, 1), InvalidInput);
    EXPECT_THROW(linear_frequency_grid(2e3, 1e3, 5), InvalidInput);
}
