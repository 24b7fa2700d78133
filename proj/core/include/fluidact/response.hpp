#pragma once

// Steady-state harmonic response from the period-averaged Lagrangian.
//
// With the trial motion z = A cos(wt + phi) under a force F cos(wt), the mean
// Lagrangian over one period is
//
//   <L> = 1/4 m* w^2 A^2 - 1/4 k A^2 + 1/2 F A cos(phi)
//         + 1/2 c w A A_p sin(phi_p - phi)
//
// where the last (dissipative) term is the work of the damping force -c dz/dt
// taken along the physical path (A_p, phi_p), which is not varied. Amplitude
// and phase follow from d<L>/dA = 0 and d<L>/dphi = 0 with A_p = A, phi_p = phi.

#include "fluidact/dynamics.hpp"
#include "fluidact/model.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fluidact {

struct ResponsePoint {
    double frequency = 0.0;  // Hz, mechanical (force) frequency
    double amplitude = 0.0;  // m
    double phase = 0.0;      // rad in (-pi, 0]; -pi only for undamped motion above resonance
};

struct ForceDecomposition {
    double static_component = 0.0;    // N
    double harmonic_amplitude = 0.0;  // N
    double harmonic_frequency = 0.0;  // Hz
};

/// Splits the electrostatic force of `drive` at operating displacement z0.
/// For V = V_rms sqrt(2) cos(wt), V^2 = V_rms^2 (1 + cos 2wt): a static part and
/// an equal part at twice the electrical frequency.
ForceDecomposition decompose_drive_force(const DriveSignal& drive, const ParallelPlate& plate,
                                         double operating_displacement = 0.0);

class AveragedLagrangian {
public:
    AveragedLagrangian(double mass, double stiffness, double damping, double force);

    /// Period mean of the Lagrangian for trial (A, phi) with the dissipative
    /// work evaluated along the path (A_path, phi_path).
    double mean(double amplitude, double phase, double path_amplitude, double path_phase,
                double omega) const;

    /// {d<L>/dA, d<L>/dphi} evaluated on the physical path.
    std::array<double, 2> stationarity(double amplitude, double phase, double omega) const;

    /// Solves the stationarity equations at omega by damped Newton iteration.
    /// Throws ConvergenceError if no seed converges.
    ResponsePoint solve(double omega) const;

    double mass() const { return mass_; }
    double stiffness() const { return stiffness_; }
    double damping() const { return damping_; }
    double force() const { return force_; }

private:
    double mass_;
    double stiffness_;
    double damping_;
    double force_;
};

struct ResponseOptions {
    SqueezeFilmOption squeeze;
    /// Evaluate m* and damping at this frequency (Hz) for every point instead
    /// of at each sweep frequency.
    std::optional<double> frozen_frequency;
    /// Electrostatic spring softening dF/dz (N/m) subtracted from k.
    double electrostatic_gradient = 0.0;
    std::size_t workers = 1;
};

/// Amplitude and phase over an ascending grid of positive mechanical
/// frequencies (Hz) for a harmonic force of amplitude `force_amplitude`.
std::vector<ResponsePoint> harmonic_response(std::span<const double> frequencies,
                                             double force_amplitude, const ActuatorGeometry& geom,
                                             const StructuralMaterial& mat,
                                             const FluidMedium& fluid, const SpringModel& spring,
                                             const ResponseOptions& options = {});

/// Damping coefficient used by the harmonic solve at angular frequency omega,
/// including the squeeze-film term when enabled.
double total_damping(double omega, const ActuatorGeometry& geom, const FluidMedium& fluid,
                     const SqueezeFilmOption& squeeze);

/// Divides every amplitude by the peak amplitude of `reference`.
std::vector<ResponsePoint> normalize_response(std::span<const ResponsePoint> points,
                                              std::span<const ResponsePoint> reference);

/// Point of maximum amplitude (first on ties). Throws on an empty sweep.
ResponsePoint peak_response(std::span<const ResponsePoint> points);

/// Evenly spaced grid of n >= 2 frequencies over [f_start, f_end].
std::vector<double> linear_frequency_grid(double f_start, double f_end, std::size_t n);

}  // namespace fluidact
