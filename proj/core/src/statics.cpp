#include "fluidact/statics.hpp"

#include "fluidact/error.hpp"
#include "fluidact/parallel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace fluidact {

namespace {

struct ForceBalance {
    double k;       // N/m
    double c;       // 1/2 eps0 eps S V^2
    double span;    // d + g
    double gap;

    // Cubic form k z (G - z)^2 - c; same sign as k z - F_elect.
    double cubic(double z) const {
        const double s = span - z;
        return k * z * s * s - c;
    }
    double cubic_slope(double z) const { return k * (span - z) * (span - 3.0 * z); }
    double residual(double z) const {
        const double s = span - z;
        return c / (s * s) - k * z;
    }
    bool stable_at(double z) const {
        const double s = span - z;
        return k > 2.0 * c / (s * s * s);
    }
};

ForceBalance make_balance(const ParallelPlate& plate, const SpringModel& spring, double voltage) {
    const double eps_s =
        constants::kVacuumPermittivity * plate.fluid.eps() * plate.geometry.electrode_area();
    return {spring.k(), 0.5 * eps_s * voltage * voltage,
            effective_dielectric_thickness(plate.stack, plate.fluid) + plate.geometry.gap(),
            plate.geometry.gap()};
}

// Safeguarded Newton on a bracket where `sign` * cubic is increasing.
double bracketed_root(const ForceBalance& fb, double lo, double hi, double sign,
                      const StaticTolerances& tol) {
    auto f = [&](double z) { return sign * fb.cubic(z); };
    const double residual_tol = tol.residual * fb.k * fb.gap;

    if (f(lo) >= 0.0) return lo;
    if (f(hi) <= 0.0) return hi;

    double z = 0.5 * (lo + hi);
    for (int it = 0; it < tol.max_iterations; ++it) {
        const double fz = f(z);
        if (fz == 0.0) return z;
        if (fz < 0.0) {
            lo = z;
        } else {
            hi = z;
        }
        const double slope = sign * fb.cubic_slope(z);
        double next = slope != 0.0 ? z - fz / slope : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - z);
        z = next;
        if ((step < tol.displacement || hi - lo < tol.displacement) &&
            std::abs(fb.residual(z)) <= residual_tol) {
            return z;
        }
        if (hi - lo <= std::abs(z) * 4e-16) break;
    }
    if (std::abs(fb.residual(z)) <= residual_tol) return z;
    throw ConvergenceError(fmt::format(
        "force balance did not converge in {} iterations (z = {} m, residual = {} N)",
        tol.max_iterations, z, fb.residual(z)));
}

}  // namespace

double electrostatic_force(const ParallelPlate& plate, double z, double voltage) {
    const double g = plate.geometry.gap();
    if (!(z >= 0.0 && z <= g)) {
        throw InvalidInput(fmt::format("displacement {} m outside the gap [0, {}]", z, g));
    }
    const double s = effective_dielectric_thickness(plate.stack, plate.fluid) + g - z;
    if (voltage == 0.0) return 0.0;
    if (s <= 0.0) {
        throw TouchingSingularity("electrostatic force is unbounded at contact without insulation");
    }
    const double eps_s =
        constants::kVacuumPermittivity * plate.fluid.eps() * plate.geometry.electrode_area();
    return 0.5 * eps_s * voltage * voltage / (s * s);
}

double electrostatic_stiffness(const ParallelPlate& plate, double z, double voltage) {
    const double f = electrostatic_force(plate, z, voltage);
    if (f == 0.0) return 0.0;
    const double s = effective_dielectric_thickness(plate.stack, plate.fluid) +
                     plate.geometry.gap() - z;
    return 2.0 * f / s;
}

bool stability_condition(const ParallelPlate& plate) { return suppresses_pull_in(plate); }

std::optional<double> pull_in_displacement(const ParallelPlate& plate) {
    if (stability_condition(plate)) return std::nullopt;
    const double span =
        effective_dielectric_thickness(plate.stack, plate.fluid) + plate.geometry.gap();
    return span / 3.0;
}

std::optional<double> pull_in_voltage(const ParallelPlate& plate, const SpringModel& spring) {
    if (!pull_in_displacement(plate)) return std::nullopt;
    const double span =
        effective_dielectric_thickness(plate.stack, plate.fluid) + plate.geometry.gap();
    const double eps_s =
        constants::kVacuumPermittivity * plate.fluid.eps() * plate.geometry.electrode_area();
    return std::sqrt(8.0 * spring.k() * span * span * span / (27.0 * eps_s));
}

std::optional<double> pull_in_voltage_numeric(const ParallelPlate& plate,
                                              const SpringModel& spring,
                                              const StaticTolerances& tol) {
    const double g = plate.geometry.gap();
    const double span = effective_dielectric_thickness(plate.stack, plate.fluid) + g;
    const double eps_s =
        constants::kVacuumPermittivity * plate.fluid.eps() * plate.geometry.electrode_area();

    auto has_stable_root = [&](double v) {
        const auto roots = solve_equilibria(plate, spring, v, tol);
        return std::any_of(roots.begin(), roots.end(), [](const EquilibriumPoint& p) {
            return p.stability == Stability::stable;
        });
    };

    // At this voltage the force at z = 0 already exceeds k g: no equilibrium.
    double hi = std::sqrt(2.0 * spring.k() * g * span * span / eps_s);
    double lo = 0.0;
    if (has_stable_root(hi)) {
        throw ConvergenceError("pull-in search failed to bracket the loss of equilibrium");
    }
    constexpr int kMaxBisections = 200;
    for (int it = 0; it < kMaxBisections && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (has_stable_root(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (hi - lo > 1e-12 * hi) {
        throw ConvergenceError("pull-in voltage bisection did not converge");
    }

    // A fold (pull-in) leaves a stable/unstable pair just below the critical
    // voltage; stable closure leaves a single root at the electrode.
    const auto roots = solve_equilibria(plate, spring, lo, tol);
    if (roots.size() < 2) return std::nullopt;
    return 0.5 * (lo + hi);
}

double stable_closure_voltage(const ParallelPlate& plate, const SpringModel& spring) {
    if (!stability_condition(plate)) {
        throw InvalidInput(fmt::format(
            "stable gap closure is impossible in '{}': pull-in occurs before contact",
            plate.fluid.name()));
    }
    const double d = effective_dielectric_thickness(plate.stack, plate.fluid);
    const double eps_s =
        constants::kVacuumPermittivity * plate.fluid.eps() * plate.geometry.electrode_area();
    return std::sqrt(2.0 * spring.k() * plate.geometry.gap() * d * d / eps_s);
}

double gap_close_voltage(const ParallelPlate& plate, const SpringModel& spring) {
    if (auto v = pull_in_voltage(plate, spring)) return *v;
    return stable_closure_voltage(plate, spring);
}

std::vector<EquilibriumPoint> solve_equilibria(const ParallelPlate& plate,
                                               const SpringModel& spring, double voltage,
                                               const StaticTolerances& tol) {
    if (!(voltage >= 0.0) || !std::isfinite(voltage)) {
        throw InvalidInput(fmt::format("voltage must be non-negative (got {})", voltage));
    }
    if (voltage == 0.0) return {{0.0, Stability::stable, 0.0}};

    const ForceBalance fb = make_balance(plate, spring, voltage);
    const double g = plate.geometry.gap();
    const double split = std::min(fb.span / 3.0, g);
    const double peak = fb.cubic(split);

    std::vector<EquilibriumPoint> roots;
    if (peak < 0.0) return roots;

    auto classify = [&](double z) {
        return EquilibriumPoint{z, fb.stable_at(z) ? Stability::stable : Stability::unstable,
                                fb.residual(z)};
    };

    if (peak == 0.0 && split < g) {
        // Double root at the fold: marginal, counted as collapse.
        roots.push_back({split, Stability::unstable, fb.residual(split)});
        return roots;
    }

    roots.push_back(classify(bracketed_root(fb, 0.0, split, 1.0, tol)));
    if (split < g && fb.cubic(g) <= 0.0) {
        auto far = classify(bracketed_root(fb, split, g, -1.0, tol));
        far.stability = Stability::unstable;
        roots.push_back(far);
    }
    return roots;
}

std::vector<StaticSweepRow> static_sweep(const ParallelPlate& plate, const SpringModel& spring,
                                         double v_start, double v_end, std::size_t steps,
                                         std::size_t workers, const StaticTolerances& tol) {
    if (!(v_start >= 0.0) || !(v_end >= v_start)) {
        throw InvalidInput(fmt::format("voltage range must be ascending and non-negative "
                                       "(got {} .. {})",
                                       v_start, v_end));
    }
    const bool empty_range = v_end == v_start;
    if (!empty_range && steps < 2) {
        throw InvalidInput("a voltage sweep needs at least 2 steps");
    }
    const std::size_t n = empty_range ? 1 : steps;
    const auto v_pull_in = pull_in_voltage(plate, spring);
    const double g = plate.geometry.gap();

    return parallel_map<StaticSweepRow>(n, workers, [&](std::size_t i) {
        const double v = empty_range ? v_start
                                     : v_start + (v_end - v_start) * static_cast<double>(i) /
                                                     static_cast<double>(n - 1);
        if (v_pull_in && v >= *v_pull_in) return StaticSweepRow{v, g, false, true};
        const auto roots = solve_equilibria(plate, spring, v, tol);
        for (const auto& r : roots) {
            if (r.stability == Stability::stable) {
                return StaticSweepRow{v, r.displacement, true, false};
            }
        }
        if (v_pull_in) return StaticSweepRow{v, g, false, true};
        // Stable contact: the plate rests on the insulated electrode.
        return StaticSweepRow{v, g, true, false};
    });
}

double equivalent_dc_voltage(const DriveSignal& drive) { return drive.voltage(); }

ScreeningStatus screening_check(const DriveSignal& drive, const FluidMedium& fluid) {
    const auto& fc = fluid.screening_frequency();
    if (!fc) return ScreeningStatus::ok;
    if (drive.kind() == DriveKind::dc || drive.frequency() < *fc) return ScreeningStatus::warning;
    return ScreeningStatus::ok;
}

}  // namespace fluidact
