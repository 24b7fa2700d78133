#pragma once

// Hydrodynamic loading of a rectangular cantilever oscillating in a viscous
// fluid: added mass and damping from the polynomial fit of the rectangular
// hydrodynamic function, quality factor, and the implicit in-fluid resonance.

#include "fluidact/model.hpp"

#include <optional>

namespace fluidact {

namespace hydro {
inline constexpr double kRealOffset = 1.0553;
inline constexpr double kRealLinear = 3.7997;
inline constexpr double kImagLinear = 3.8018;
inline constexpr double kImagQuadratic = 2.7364;
}  // namespace hydro

struct HydrodynamicFunction {
    double real = hydro::kRealOffset;
    double imag = 0.0;
    double omega = 0.0;           // rad/s
    double delta_over_width = 0.0;
};

struct DynamicParameters {
    double effective_mass = 0.0;    // kg
    double damping = 0.0;           // kg/s
    double q_factor = 0.0;          // +inf without dissipation
    double f_vacuum = 0.0;          // Hz
    double f_natural = 0.0;         // Hz, self-consistent in-fluid resonance
    double f_peak = 0.0;            // Hz, damped amplitude peak (0 when overdamped)
    double omega_natural = 0.0;     // rad/s
    double evaluation_frequency = 0.0;  // Hz at which m*, damping and Q were evaluated
    int iterations = 0;
    bool used_bisection = false;
};

/// sqrt(2 eta / (rho omega)). Throws Inapplicable in vacuum.
double boundary_layer_thickness(double omega, const FluidMedium& fluid);

HydrodynamicFunction hydrodynamic_function(double omega, const ActuatorGeometry& geom,
                                           const FluidMedium& fluid);

double structural_mass(const ActuatorGeometry& geom, const StructuralMaterial& mat);

/// Structural mass plus the added fluid mass at angular frequency omega.
double effective_mass(double omega, const ActuatorGeometry& geom, const StructuralMaterial& mat,
                      const FluidMedium& fluid);

/// Viscous damping coefficient (kg/s) at angular frequency omega; 0 in vacuum.
double damping_coefficient(double omega, const ActuatorGeometry& geom, const FluidMedium& fluid);

/// Quality factor from the hydrodynamic function; +inf in vacuum or an
/// inviscid fluid.
double quality_factor(double omega, const ActuatorGeometry& geom, const StructuralMaterial& mat,
                      const FluidMedium& fluid);

/// First clamped-free flexural frequency of the bare beam (Hz).
double vacuum_frequency(const ActuatorGeometry& geom, const StructuralMaterial& mat);

/// Lumped stiffness whose resonance with the structural mass is the vacuum
/// frequency: m_struct (2 pi f_vacuum)^2.
SpringModel modal_stiffness(const ActuatorGeometry& geom, const StructuralMaterial& mat);

/// Damped amplitude-peak frequency f0 sqrt(1 - 1/(2Q^2)); 0 for Q <= 1/sqrt(2).
double damped_peak_frequency(double f_natural, double q_factor);

/// Solves f = f_vacuum / sqrt(1 + (pi/4)(rho/rho_lever)(w/t) Gamma_r(2 pi f))
/// by fixed-point iteration from f_vacuum (bisection fallback). m*, damping
/// and Q are reported at `evaluation_frequency` when given, otherwise at the
/// converged natural frequency.
DynamicParameters resonance_in_fluid(const ActuatorGeometry& geom, const StructuralMaterial& mat,
                                     const FluidMedium& fluid,
                                     std::optional<double> evaluation_frequency = std::nullopt);

/// Right-hand side of the in-fluid resonance relation at frequency f (Hz).
double resonance_relation(double f, const ActuatorGeometry& geom, const StructuralMaterial& mat,
                          const FluidMedium& fluid);

/// Self-consistent natural frequency of an arbitrary lumped spring loaded by
/// the frequency-dependent effective mass: 2 pi f = sqrt(k / m*(2 pi f)).
double natural_frequency(const SpringModel& spring, const ActuatorGeometry& geom,
                         const StructuralMaterial& mat, const FluidMedium& fluid);

enum class SqueezeGapMode { fixed_gap, instantaneous_gap };

/// Near-wall squeeze-out term c_sq = eta w^3 / g^3, applied as a damping
/// coefficient. The expression is used exactly as published; dimensionally it
/// is kg/(m s), one length short of a damping coefficient.
struct SqueezeFilmOption {
    bool enabled = false;
    SqueezeGapMode mode = SqueezeGapMode::fixed_gap;
};

/// eta w^3 / gap^3 for the given gap (the geometric gap by default).
double squeeze_film_coefficient(const ActuatorGeometry& geom, const FluidMedium& fluid,
                                std::optional<double> gap = std::nullopt);

}  // namespace fluidact
