#pragma once

// Static force balance of the parallel-plate actuator,
//
//     1/2 eps0 eps S V^2 / (d + g - z)^2 = k z,
//
// with d the effective dielectric thickness. Equilibria, stability,
// pull-in and gap-closing voltages, and voltage sweeps along the stable branch.

#include "fluidact/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fluidact {

enum class Stability { stable, unstable };

struct EquilibriumPoint {
    double displacement = 0.0;
    Stability stability = Stability::stable;
    /// F_elect - k z at the returned displacement (N).
    double residual = 0.0;
};

struct StaticSweepRow {
    double voltage = 0.0;
    double displacement = 0.0;
    bool stable = true;
    bool pulled_in = false;
};

struct StaticTolerances {
    double displacement = 1e-12;  // m
    double residual = 1e-9;       // relative to k * g
    int max_iterations = 200;
};

/// Attractive force at displacement z in [0, g]. Throws TouchingSingularity
/// for z == g with no insulation.
double electrostatic_force(const ParallelPlate& plate, double z, double voltage);

/// d F_elect / d z, the electrostatic spring-softening term.
double electrostatic_stiffness(const ParallelPlate& plate, double z, double voltage);

/// True iff the plate can travel the whole gap without pull-in.
bool stability_condition(const ParallelPlate& plate);

/// (g + d) / 3 when that lies inside the gap; nullopt otherwise.
std::optional<double> pull_in_displacement(const ParallelPlate& plate);

std::optional<double> pull_in_voltage(const ParallelPlate& plate, const SpringModel& spring);

/// Bisection on V for the voltage at which the stable interior root of the
/// force balance disappears. Independent of the closed form above.
std::optional<double> pull_in_voltage_numeric(const ParallelPlate& plate,
                                              const SpringModel& spring,
                                              const StaticTolerances& tol = {});

/// Voltage at which the plate first reaches the fixed electrode: the stable
/// closure voltage when pull-in is suppressed, the pull-in voltage otherwise.
double gap_close_voltage(const ParallelPlate& plate, const SpringModel& spring);

/// Voltage holding the plate at z = g in stable equilibrium. Throws
/// InvalidInput when pull-in occurs first.
double stable_closure_voltage(const ParallelPlate& plate, const SpringModel& spring);

/// All equilibria in [0, g], ordered by displacement.
std::vector<EquilibriumPoint> solve_equilibria(const ParallelPlate& plate,
                                               const SpringModel& spring, double voltage,
                                               const StaticTolerances& tol = {});

/// `steps` evenly spaced voltages from v_start to v_end (a single row when the
/// range is empty). Past pull-in, rows report the plate at the electrode.
std::vector<StaticSweepRow> static_sweep(const ParallelPlate& plate, const SpringModel& spring,
                                         double v_start, double v_end, std::size_t steps,
                                         std::size_t workers = 1,
                                         const StaticTolerances& tol = {});

/// Quasi-static equivalent DC voltage: V_rms for AC drive.
double equivalent_dc_voltage(const DriveSignal& drive);

enum class ScreeningStatus { ok, warning };

/// Warns when a conductive medium would screen the electrodes: DC drive, or
/// AC below the medium's screening frequency.
ScreeningStatus screening_check(const DriveSignal& drive, const FluidMedium& fluid);

}  // namespace fluidact
