#pragma once

// Time integration of m* z'' = -k z - c z' + F_elect(t, z) with classical
// fixed-step RK4. m* and c are frozen at one evaluation frequency per run.

#include "fluidact/dynamics.hpp"
#include "fluidact/model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fluidact {

struct TransientSample {
    double time = 0.0;          // s
    double displacement = 0.0;  // m
    double velocity = 0.0;      // m/s
};

struct TransientConfig {
    double duration = 0.0;   // s
    double time_step = 0.0;  // s
    double initial_displacement = 0.0;
    double initial_velocity = 0.0;
    /// Frequency (Hz) at which m* and damping are evaluated. Defaults to the
    /// force frequency for AC drive and to the natural frequency otherwise.
    std::optional<double> evaluation_frequency;
    SqueezeFilmOption squeeze;
};

struct TransientResult {
    std::vector<TransientSample> samples;
    /// Set when the plate reached the fixed electrode; the trace ends there.
    std::optional<double> contact_time;
    double effective_mass = 0.0;
    double damping = 0.0;              // hydrodynamic (plus fixed-gap squeeze film)
    double evaluation_frequency = 0.0; // Hz
    double force_frequency = 0.0;      // Hz, 0 for DC
    double natural_frequency = 0.0;    // Hz, sqrt(k/m*) / 2pi
    /// Dominant oscillation frequency: the force frequency when driven,
    /// otherwise the natural frequency.
    double oscillation_frequency() const {
        return force_frequency > 0.0 ? force_frequency : natural_frequency;
    }
};

/// Requires duration > 0, time_step <= 1 / (20 max(f_natural, f_force)) and
/// |z0| <= g.
TransientResult simulate(const DriveSignal& drive, const ParallelPlate& plate,
                         const StructuralMaterial& mat, const SpringModel& spring,
                         const TransientConfig& config);

struct EnvelopeResult {
    std::vector<double> times;
    std::vector<double> envelope;
    double tau = 0.0;               // s
    double settling_time_99 = 0.0;  // s
    double final_amplitude = 0.0;   // m
    bool rising = true;
};

/// Oscillation envelope sampled every half period, with a least-squares fit
/// of A (1 - exp(-t/tau)) for ring-up or A exp(-t/tau) for ring-down.
/// Requires at least 10 oscillation periods.
EnvelopeResult envelope(std::span<const TransientSample> trace, double oscillation_frequency);
EnvelopeResult envelope(const TransientResult& result);

/// Mean half peak-to-peak amplitude over the final 10 periods. Throws
/// ConvergenceError when the amplitude still grows by more than 1% per period.
double steady_state_amplitude(std::span<const TransientSample> trace,
                              double oscillation_frequency);
double steady_state_amplitude(const TransientResult& result);

}  // namespace fluidact
