#include "fluidact/dynamics.hpp"

#include "fluidact/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace fluidact {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFixedPointTolerance = 1e-9;
constexpr int kFixedPointIterations = 100;

struct FixedPointResult {
    double value;
    int iterations;
    bool used_bisection;
};

// Solves f = map(f) for f in (0, upper] where map(upper) <= upper and the
// map is increasing and sublinear near zero. Fixed-point iteration from
// `upper`; bisection on f - map(f) when the iteration stops contracting.
template <typename Map>
FixedPointResult solve_fixed_point(Map&& map, double upper) {
    double f = upper;
    double last_step = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= kFixedPointIterations; ++it) {
        const double next = map(f);
        const double step = std::abs(next - f);
        if (step <= kFixedPointTolerance * next) return {next, it, false};
        if (step >= last_step) break;
        last_step = step;
        f = next;
    }

    double lo = upper * 1e-6;
    double hi = upper;
    if (lo - map(lo) > 0.0 || hi - map(hi) < 0.0) {
        throw ConvergenceError("resonance relation has no bracketed solution");
    }
    int it = 0;
    for (; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - map(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), kFixedPointIterations + it, true};
}

double added_mass_prefactor(const ActuatorGeometry& geom, const FluidMedium& fluid) {
    return 0.25 * kPi * fluid.rho() * geom.width() * geom.width() * geom.length();
}

}  // namespace

double boundary_layer_thickness(double omega, const FluidMedium& fluid) {
    if (!(omega > 0.0)) {
        throw InvalidInput(fmt::format("angular frequency must be positive (got {})", omega));
    }
    if (fluid.is_vacuum()) {
        throw Inapplicable(fmt::format("boundary layer undefined in '{}' (zero density)",
                                       fluid.name()));
    }
    return std::sqrt(2.0 * fluid.eta() / (fluid.rho() * omega));
}

HydrodynamicFunction hydrodynamic_function(double omega, const ActuatorGeometry& geom,
                                           const FluidMedium& fluid) {
    const double x = boundary_layer_thickness(omega, fluid) / geom.width();
    return {hydro::kRealOffset + hydro::kRealLinear * x,
            hydro::kImagLinear * x + hydro::kImagQuadratic * x * x, omega, x};
}

double structural_mass(const ActuatorGeometry& geom, const StructuralMaterial& mat) {
    return mat.density() * geom.length() * geom.width() * geom.thickness();
}

double effective_mass(double omega, const ActuatorGeometry& geom, const StructuralMaterial& mat,
                      const FluidMedium& fluid) {
    const double m_struct = structural_mass(geom, mat);
    if (fluid.is_vacuum()) return m_struct;
    return added_mass_prefactor(geom, fluid) * hydrodynamic_function(omega, geom, fluid).real +
           m_struct;
}

double damping_coefficient(double omega, const ActuatorGeometry& geom, const FluidMedium& fluid) {
    if (fluid.is_vacuum()) return 0.0;
    return added_mass_prefactor(geom, fluid) * omega *
           hydrodynamic_function(omega, geom, fluid).imag;
}

double quality_factor(double omega, const ActuatorGeometry& geom, const StructuralMaterial& mat,
                      const FluidMedium& fluid) {
    if (fluid.is_vacuum()) return std::numeric_limits<double>::infinity();
    const auto gamma = hydrodynamic_function(omega, geom, fluid);
    if (gamma.imag == 0.0) return std::numeric_limits<double>::infinity();
    const double inertia_ratio =
        (4.0 / kPi) * (mat.density() / fluid.rho()) * (geom.thickness() / geom.width());
    return (inertia_ratio + gamma.real) / gamma.imag;
}

double vacuum_frequency(const ActuatorGeometry& geom, const StructuralMaterial& mat) {
    return constants::kFirstModeEigenvalueSq / (2.0 * kPi) * geom.thickness() /
           (geom.length() * geom.length()) *
           std::sqrt(mat.youngs_modulus() / (12.0 * mat.density()));
}

SpringModel modal_stiffness(const ActuatorGeometry& geom, const StructuralMaterial& mat) {
    const double omega = 2.0 * kPi * vacuum_frequency(geom, mat);
    return SpringModel(structural_mass(geom, mat) * omega * omega, StiffnessSource::modal);
}

double damped_peak_frequency(double f_natural, double q_factor) {
    if (std::isinf(q_factor)) return f_natural;
    if (!(q_factor > 1.0 / std::numbers::sqrt2)) return 0.0;
    return f_natural * std::sqrt(1.0 - 1.0 / (2.0 * q_factor * q_factor));
}

double resonance_relation(double f, const ActuatorGeometry& geom, const StructuralMaterial& mat,
                          const FluidMedium& fluid) {
    const double f_vac = vacuum_frequency(geom, mat);
    if (fluid.is_vacuum()) return f_vac;
    const double gamma_r = hydrodynamic_function(2.0 * kPi * f, geom, fluid).real;
    const double loading =
        0.25 * kPi * (fluid.rho() / mat.density()) * (geom.width() / geom.thickness()) * gamma_r;
    return f_vac / std::sqrt(1.0 + loading);
}

DynamicParameters resonance_in_fluid(const ActuatorGeometry& geom, const StructuralMaterial& mat,
                                     const FluidMedium& fluid,
                                     std::optional<double> evaluation_frequency) {
    if (evaluation_frequency && !(*evaluation_frequency > 0.0)) {
        throw InvalidInput(
            fmt::format("evaluation frequency must be positive (got {})", *evaluation_frequency));
    }
    DynamicParameters out;
    out.f_vacuum = vacuum_frequency(geom, mat);
    if (fluid.is_vacuum()) {
        out.f_natural = out.f_vacuum;
    } else {
        const auto fp = solve_fixed_point(
            [&](double f) { return resonance_relation(f, geom, mat, fluid); }, out.f_vacuum);
        out.f_natural = fp.value;
        out.iterations = fp.iterations;
        out.used_bisection = fp.used_bisection;
    }
    out.omega_natural = 2.0 * kPi * out.f_natural;
    out.evaluation_frequency = evaluation_frequency.value_or(out.f_natural);

    const double omega_eval = 2.0 * kPi * out.evaluation_frequency;
    out.effective_mass = effective_mass(omega_eval, geom, mat, fluid);
    out.damping = damping_coefficient(omega_eval, geom, fluid);
    out.q_factor = quality_factor(omega_eval, geom, mat, fluid);
    out.f_peak = damped_peak_frequency(out.f_natural, out.q_factor);
    return out;
}

double natural_frequency(const SpringModel& spring, const ActuatorGeometry& geom,
                         const StructuralMaterial& mat, const FluidMedium& fluid) {
    const double f_struct = std::sqrt(spring.k() / structural_mass(geom, mat)) / (2.0 * kPi);
    if (fluid.is_vacuum()) return f_struct;
    return solve_fixed_point(
               [&](double f) {
                   return std::sqrt(spring.k() / effective_mass(2.0 * kPi * f, geom, mat, fluid)) /
                          (2.0 * kPi);
               },
               f_struct)
        .value;
}

double squeeze_film_coefficient(const ActuatorGeometry& geom, const FluidMedium& fluid,
                                std::optional<double> gap) {
    const double h = gap.value_or(geom.gap());
    if (!(h > 0.0)) {
        throw InvalidInput(fmt::format("squeeze-film gap must be positive (got {})", h));
    }
    const double w = geom.width();
    return fluid.eta() * w * w * w / (h * h * h);
}

}  // namespace fluidact
