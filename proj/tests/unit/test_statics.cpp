#include "fluidact/error.hpp"
#include "fluidact/statics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace fluidact;

namespace {

constexpr double kEps0 = 8.85e-12;
const SpringModel kSpring(1.448275529174325);

ParallelPlate plate_in(const char* fluid) {
    return {reference::cantilever(), reference::nitride_stack(), fluid_preset(fluid)};
}

// Plain bisection on F_elect - k z over [lo, hi]; test-only oracle.
double bisect_force_balance(const ParallelPlate& p, double k, double v, double lo, double hi) {
    const double span = effective_dielectric_thickness(p.stack, p.fluid) + p.geometry.gap();
    auto f = [&](double z) {
        return 0.5 * kEps0 * p.fluid.eps() * p.geometry.electrode_area() * v * v /
                   ((span - z) * (span - z)) -
               k * z;
    };
    const double f_lo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0) == (f_lo > 0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct RandomCase {
    ParallelPlate plate;
    SpringModel spring;
};

RandomCase random_case(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double gap = 0.5e-6 + 4.5e-6 * u(rng);
    const double l = 50e-6 + 400e-6 * u(rng);
    const double w = 10e-6 + 90e-6 * u(rng);
    const ActuatorGeometry geom(l, w, 2e-6, l * w * (0.2 + 0.8 * u(rng)), gap);
    const DielectricStack stack(600e-9 * u(rng), 600e-9 * u(rng), 1.0 + 10 * u(rng),
                                1.0 + 10 * u(rng));
    const FluidMedium fluid("random", 1.0 + 99.0 * u(rng), 1000.0, 1e-3);
    return {{geom, stack, fluid}, SpringModel(0.05 + 20.0 * u(rng))};
}

}  // namespace

TEST(ElectrostaticForce, HandValues) {
    EXPECT_EQ(electrostatic_force(plate_in("air"), 1e-6, 0.0), 0.0);
    // 1/2 eps0 S 64 / (2.075 um)^2
    EXPECT_NEAR(electrostatic_force(plate_in("air"), 0.0, 8.0), 4.9329e-7, 1e-10);
    // 1/2 eps0 80.1 S 36 / (6.0075 um)^2
    EXPECT_NEAR(electrostatic_force(plate_in("tap-water"), 2e-6, 6.0), 2.6517e-6, 1e-9);
}

TEST(ElectrostaticForce, Errors) {
    const ParallelPlate bare{reference::cantilever(), DielectricStack::bare(), fluid_preset("air")};
    EXPECT_THROW(electrostatic_force(bare, 2e-6, 1.0), TouchingSingularity);
    EXPECT_EQ(electrostatic_force(bare, 2e-6, 0.0), 0.0);
    EXPECT_THROW(electrostatic_force(plate_in("air"), -1e-9, 1.0), InvalidInput);
    EXPECT_THROW(electrostatic_force(plate_in("air"), 2.1e-6, 1.0), InvalidInput);
}

TEST(StabilityCondition, MatchesTableAsterisks) {
    EXPECT_TRUE(stability_condition(plate_in("tap-water")));
    EXPECT_FALSE(stability_condition(plate_in("air")));
    EXPECT_FALSE(stability_condition(plate_in("ipa")));
}

TEST(PullInDisplacement, Values) {
    const ParallelPlate bare{reference::cantilever(), DielectricStack::bare(), fluid_preset("ipa")};
    EXPECT_EQ(*pull_in_displacement(bare), 2e-6 / 3.0);
    EXPECT_NEAR(*pull_in_displacement(plate_in("air")), 2.075e-6 / 3.0, 1e-20);
    EXPECT_FALSE(pull_in_displacement(plate_in("tap-water")).has_value());
}

TEST(PullInVoltage, ClosedFormValues) {
    EXPECT_NEAR(*pull_in_voltage(plate_in("air"), kSpring), 7.6, 1e-12);
    // Frozen from an independent evaluation of sqrt(8 k (g+d)^3 / (27 eps0 eps S)).
    EXPECT_NEAR(*pull_in_voltage(plate_in("ipa"), kSpring), 3.7592208684041855, 1e-10);
    EXPECT_FALSE(pull_in_voltage(plate_in("tap-water"), kSpring).has_value());
}

TEST(PullInVoltage, NumericMatchesClosedForm) {
    const auto numeric = pull_in_voltage_numeric(plate_in("air"), kSpring);
    ASSERT_TRUE(numeric.has_value());
    EXPECT_NEAR(*numeric, 7.6, 7.6e-6);
    EXPECT_FALSE(pull_in_voltage_numeric(plate_in("tap-water"), kSpring).has_value());

    const ParallelPlate bare{reference::cantilever(), DielectricStack::bare(),
                             fluid_preset("tap-water")};
    const double g = 2e-6;
    const double classical =
        std::sqrt(8 * kSpring.k() * g * g * g / (27 * kEps0 * 80.1 * 7500e-12));
    EXPECT_NEAR(*pull_in_voltage(bare, kSpring), classical, 1e-12 * classical);
    EXPECT_NEAR(*pull_in_voltage_numeric(bare, kSpring), classical, 1e-6 * classical);
}

TEST(PullInVoltage, ScalingLaws) {
    const auto plate = plate_in("air");
    const double base = *pull_in_voltage(plate, kSpring);
    EXPECT_NEAR(*pull_in_voltage(plate, SpringModel(4 * kSpring.k())), 2 * base, 1e-12 * base);
    const auto& g = plate.geometry;
    const ParallelPlate quarter{
        ActuatorGeometry(g.length(), g.width(), g.thickness(), g.electrode_area() / 4, g.gap()),
        plate.stack, plate.fluid};
    EXPECT_NEAR(*pull_in_voltage(quarter, kSpring), 2 * base, 1e-12 * base);
}

TEST(GapCloseVoltage, Branches) {
    // Frozen from sqrt(2 k g d^2 / (eps0 eps S)).
    EXPECT_NEAR(gap_close_voltage(plate_in("tap-water"), kSpring), 6.270914022175158, 1e-10);
    EXPECT_NEAR(gap_close_voltage(plate_in("air"), kSpring), 7.6, 1e-12);
    const double v1 = stable_closure_voltage(plate_in("tap-water"), kSpring);
    const double v4 = stable_closure_voltage(plate_in("tap-water"), SpringModel(4 * kSpring.k()));
    EXPECT_NEAR(v4, 2 * v1, 1e-12 * v1);

    const ParallelPlate bare{reference::cantilever(), DielectricStack::bare(), fluid_preset("air")};
    EXPECT_NO_THROW(gap_close_voltage(bare, kSpring));
    EXPECT_THROW(stable_closure_voltage(bare, kSpring), InvalidInput);
}

TEST(SolveEquilibria, ZeroVoltage) {
    const auto roots = solve_equilibria(plate_in("air"), kSpring, 0.0);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_EQ(roots[0].displacement, 0.0);
    EXPECT_EQ(roots[0].stability, Stability::stable);
}

TEST(SolveEquilibria, AirAtFourVolts) {
    const auto plate = plate_in("air");
    const auto roots = solve_equilibria(plate, kSpring, 4.0);
    ASSERT_EQ(roots.size(), 2u);
    const double z_pi = *pull_in_displacement(plate);
    const double stable_oracle = bisect_force_balance(plate, kSpring.k(), 4.0, 0.0, z_pi);
    const double unstable_oracle = bisect_force_balance(plate, kSpring.k(), 4.0, z_pi, 2e-6);
    EXPECT_EQ(roots[0].stability, Stability::stable);
    EXPECT_NEAR(roots[0].displacement, stable_oracle, 1e-15);
    EXPECT_NEAR(roots[0].displacement, 9.3e-8, 0.1e-8);
    EXPECT_EQ(roots[1].stability, Stability::unstable);
    EXPECT_NEAR(roots[1].displacement, unstable_oracle, 1e-14);
    EXPECT_GT(roots[1].displacement, z_pi);
}

TEST(SolveEquilibria, WaterClosesAtContact) {
    const auto plate = plate_in("tap-water");
    const double v_close = stable_closure_voltage(plate, kSpring);
    const auto roots = solve_equilibria(plate, kSpring, v_close);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_EQ(roots[0].stability, Stability::stable);
    EXPECT_NEAR(roots[0].displacement, 2e-6, 1e-15);
    EXPECT_TRUE(solve_equilibria(plate, kSpring, 1.01 * v_close).empty());
}

TEST(SolveEquilibria, ResidualInvariantRandomized) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto c = random_case(rng);
        const double v = 1.2 * gap_close_voltage(c.plate, c.spring) * u(rng);
        for (const auto& r : solve_equilibria(c.plate, c.spring, v)) {
            EXPECT_LT(std::abs(r.residual), 1e-9 * c.spring.k() * c.plate.geometry.gap());
            EXPECT_GE(r.displacement, 0.0);
            EXPECT_LE(r.displacement, c.plate.geometry.gap());
            ++checked;
        }
    }
    EXPECT_GT(checked, 200);
}

TEST(StaticsProperties, ConditionEquivalence) {
    std::mt19937_64 rng(99);
    int stable = 0;
    for (int i = 0; i < 500; ++i) {
        const auto c = random_case(rng);
        const bool cond = stability_condition(c.plate);
        EXPECT_EQ(cond, !pull_in_displacement(c.plate).has_value());
        EXPECT_EQ(cond, !pull_in_voltage(c.plate, c.spring).has_value());
        stable += cond ? 1 : 0;
    }
    // Both regimes must actually be exercised.
    EXPECT_GT(stable, 50);
    EXPECT_LT(stable, 450);
}

TEST(StaticsProperties, NumericPullInAgreesRandomized) {
    std::mt19937_64 rng(5);
    int with_pull_in = 0;
    for (int i = 0; i < 100; ++i) {
        const auto c = random_case(rng);
        const auto closed = pull_in_voltage(c.plate, c.spring);
        const auto numeric = pull_in_voltage_numeric(c.plate, c.spring);
        ASSERT_EQ(closed.has_value(), numeric.has_value());
        if (closed) {
            EXPECT_NEAR(*numeric, *closed, 1e-6 * *closed);
            ++with_pull_in;
        }
    }
    EXPECT_GT(with_pull_in, 10);
}

TEST(StaticSweep, WaterRisesMonotonically) {
    const auto rows = static_sweep(plate_in("tap-water"), kSpring, 0.0, 6.3, 64);
    ASSERT_EQ(rows.size(), 64u);
    EXPECT_EQ(rows.front().displacement, 0.0);
    EXPECT_NEAR(rows.back().displacement, 2e-6, 1e-15);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_FALSE(rows[i].pulled_in);
        EXPECT_TRUE(rows[i].stable);
        EXPECT_GE(rows[i].displacement, rows[i - 1].displacement);
        EXPECT_GT(rows[i].voltage, rows[i - 1].voltage);
    }
}

TEST(StaticSweep, AirPullsInAtSevenPointSix) {
    const auto rows = static_sweep(plate_in("air"), kSpring, 0.0, 8.0, 81);
    const auto first = std::find_if(rows.begin(), rows.end(),
                                     [](const StaticSweepRow& r) { return r.pulled_in; });
    ASSERT_NE(first, rows.end());
    EXPECT_NEAR(first->voltage, 7.6, 0.1 + 1e-12);
    EXPECT_FALSE(first->stable);
    for (auto it = first; it != rows.end(); ++it) EXPECT_TRUE(it->pulled_in);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_GE(rows[i].displacement, rows[i - 1].displacement);
    }
}

TEST(StaticSweep, TieAtPullInCountsAsCollapse) {
    const double v_pi = *pull_in_voltage(plate_in("air"), kSpring);
    const auto rows = static_sweep(plate_in("air"), kSpring, v_pi, v_pi, 2);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].pulled_in);
}

TEST(StaticSweep, EmptyRangeAndErrors) {
    const auto rows = static_sweep(plate_in("air"), kSpring, 3.0, 3.0, 10);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].voltage, 3.0);
    EXPECT_THROW(static_sweep(plate_in("air"), kSpring, 3.0, 1.0, 10), InvalidInput);
    EXPECT_THROW(static_sweep(plate_in("air"), kSpring, 0.0, 1.0, 1), InvalidInput);
}

TEST(StaticSweep, ParallelMatchesSequential) {
    const auto seq = static_sweep(plate_in("air"), kSpring, 0.0, 8.0, 257, 1);
    const auto par = static_sweep(plate_in("air"), kSpring, 0.0, 8.0, 257, 4);
    ASSERT_EQ(seq.size(), par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        EXPECT_EQ(seq[i].voltage, par[i].voltage);
        EXPECT_EQ(seq[i].displacement, par[i].displacement);
        EXPECT_EQ(seq[i].pulled_in, par[i].pulled_in);
    }
}

TEST(Drive, EquivalentDcVoltage) {
    EXPECT_EQ(equivalent_dc_voltage(DriveSignal::ac(6.0, 1e6)), 6.0);
    EXPECT_EQ(equivalent_dc_voltage(DriveSignal::dc(8.0)), 8.0);
    EXPECT_EQ(equivalent_dc_voltage(DriveSignal::ac(0.0, 1e6)), 0.0);
}

TEST(Drive, ScreeningCheck) {
    const auto water = fluid_preset("tap-water");
    EXPECT_EQ(screening_check(DriveSignal::ac(1.0, 1e6), water), ScreeningStatus::ok);
    EXPECT_EQ(screening_check(DriveSignal::ac(1.0, 950e3), water), ScreeningStatus::ok);
    EXPECT_EQ(screening_check(DriveSignal::ac(1.0, 100e3), water), ScreeningStatus::warning);
    EXPECT_EQ(screening_check(DriveSignal::dc(1.0), water), ScreeningStatus::warning);
    EXPECT_EQ(screening_check(DriveSignal::dc(1.0), fluid_preset("air")), ScreeningStatus::ok);
    EXPECT_EQ(screening_check(DriveSignal::ac(1.0, 10e3), fluid_preset("ipa")),
              ScreeningStatus::warning);
}
