#include "fluidact/transient.hpp"

#include "fluidact/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace fluidact {

namespace {

constexpr double kPi = std::numbers::pi;

struct State {
    double z;
    double v;
};

void require_periods(std::span<const TransientSample> trace, double frequency, double periods) {
    if (!(frequency > 0.0)) {
        throw InvalidInput(fmt::format("oscillation frequency must be positive (got {})",
                                       frequency));
    }
    const double span = trace.empty() ? 0.0 : trace.back().time - trace.front().time;
    if (span < periods / frequency * (1.0 - 1e-9)) {
        throw InvalidInput(fmt::format("trace too short: {} s covers fewer than {} periods", span,
                                       periods));
    }
}

// Mean displacement over the final whole periods (at most 10).
double oscillation_center(std::span<const TransientSample> trace, double period) {
    const double span = trace.back().time - trace.front().time;
    const double window = std::min(10.0, std::floor(span / period + 1e-9)) * period;
    const double start = trace.back().time - window;
    double sum = 0.0;
    std::size_t count = 0;
    for (auto it = trace.rbegin(); it != trace.rend() && it->time > start; ++it) {
        sum += it->displacement;
        ++count;
    }
    return count > 0 ? sum / static_cast<double>(count) : trace.back().displacement;
}

struct FitResult {
    double tau;
    double residual;
};

// Least squares over tau of A * basis(t/tau) with A eliminated in closed form.
template <typename Basis>
FitResult fit_time_constant(const std::vector<double>& t, const std::vector<double>& y,
                            double tau_lo, double tau_hi, Basis&& basis) {
    double yy = 0.0;
    for (double v : y) yy += v * v;
    auto residual = [&](double log_tau) {
        const double tau = std::exp(log_tau);
        double by = 0.0;
        double bb = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double b = basis(t[i] / tau);
            by += b * y[i];
            bb += b * b;
        }
        return bb > 0.0 ? yy - by * by / bb : yy;
    };

    const double lo = std::log(tau_lo);
    const double hi = std::log(tau_hi);
    constexpr int kGrid = 400;
    int best = 0;
    double best_r = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kGrid; ++i) {
        const double r = residual(lo + (hi - lo) * i / kGrid);
        if (r < best_r) {
            best_r = r;
            best = i;
        }
    }
    // Golden-section refinement inside the neighbouring grid cells.
    double a = lo + (hi - lo) * std::max(best - 1, 0) / kGrid;
    double b = lo + (hi - lo) * std::min(best + 1, kGrid) / kGrid;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double rc = residual(c);
    double rd = residual(d);
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        if (rc < rd) {
            b = d;
            d = c;
            rd = rc;
            c = b - inv_phi * (b - a);
            rc = residual(c);
        } else {
            a = c;
            c = d;
            rc = rd;
            d = a + inv_phi * (b - a);
            rd = residual(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {std::exp(x), residual(x)};
}

}  // namespace

TransientResult simulate(const DriveSignal& drive, const ParallelPlate& plate,
                         const StructuralMaterial& mat, const SpringModel& spring,
                         const TransientConfig& config) {
    const auto& geom = plate.geometry;
    const double g = geom.gap();
    if (!(config.duration > 0.0)) {
        throw InvalidInput(fmt::format("duration must be positive (got {})", config.duration));
    }
    if (!(config.time_step > 0.0)) {
        throw InvalidInput(fmt::format("time step must be positive (got {})", config.time_step));
    }
    if (!(std::abs(config.initial_displacement) <= g)) {
        throw InvalidInput(fmt::format("initial displacement {} m outside [-g, g]",
                                       config.initial_displacement));
    }

    TransientResult out;
    const double v_level = drive.voltage();
    out.force_frequency = drive.kind() == DriveKind::ac ? 2.0 * drive.frequency() : 0.0;
    if (config.evaluation_frequency) {
        if (!(*config.evaluation_frequency > 0.0)) {
            throw InvalidInput("evaluation frequency must be positive");
        }
        out.evaluation_frequency = *config.evaluation_frequency;
    } else if (out.force_frequency > 0.0 && v_level > 0.0) {
        out.evaluation_frequency = out.force_frequency;
    } else {
        out.evaluation_frequency = natural_frequency(spring, geom, mat, plate.fluid);
    }
    const double omega_eval = 2.0 * kPi * out.evaluation_frequency;
    out.effective_mass = effective_mass(omega_eval, geom, mat, plate.fluid);
    out.damping = damping_coefficient(omega_eval, geom, plate.fluid);
    if (config.squeeze.enabled && config.squeeze.mode == SqueezeGapMode::fixed_gap) {
        out.damping += squeeze_film_coefficient(geom, plate.fluid);
    }
    out.natural_frequency = std::sqrt(spring.k() / out.effective_mass) / (2.0 * kPi);

    const double f_max = std::max(out.natural_frequency, out.force_frequency);
    if (config.time_step > 1.0 / (20.0 * f_max) * (1.0 + 1e-12)) {
        throw InvalidInput(fmt::format(
            "time step {} s too large: need at most 1/(20 f) = {} s", config.time_step,
            1.0 / (20.0 * f_max)));
    }

    const double m = out.effective_mass;
    const double c = out.damping;
    const double k = spring.k();
    const double span = effective_dielectric_thickness(plate.stack, plate.fluid) + g;
    const double half_eps_s = 0.5 * constants::kVacuumPermittivity * plate.fluid.eps() *
                              geom.electrode_area();
    const double v_sq = v_level * v_level;
    const double omega_force = 2.0 * kPi * out.force_frequency;
    const bool instantaneous_squeeze =
        config.squeeze.enabled && config.squeeze.mode == SqueezeGapMode::instantaneous_gap;
    const double squeeze_numerator =
        instantaneous_squeeze ? plate.fluid.eta() * std::pow(geom.width(), 3) : 0.0;

    auto acceleration = [&](double t, const State& s) {
        const double gap_left = span - s.z;
        const double drive_sq =
            out.force_frequency > 0.0 ? v_sq * (1.0 + std::cos(omega_force * t)) : v_sq;
        const double force = drive_sq == 0.0 ? 0.0 : half_eps_s * drive_sq / (gap_left * gap_left);
        double damping = c;
        if (instantaneous_squeeze) {
            const double h = g - s.z;
            damping += squeeze_numerator / (h * h * h);
        }
        return (-k * s.z - damping * s.v + force) / m;
    };

    const double dt = config.time_step;
    const auto steps = static_cast<std::size_t>(std::ceil(config.duration / dt - 1e-9));
    out.samples.reserve(steps + 1);

    State s{config.initial_displacement, config.initial_velocity};
    out.samples.push_back({0.0, s.z, s.v});
    if (s.z >= g) {
        out.contact_time = 0.0;
        return out;
    }

    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const State k1{s.v, acceleration(t, s)};
        const State s2{s.z + 0.5 * dt * k1.z, s.v + 0.5 * dt * k1.v};
        const State k2{s2.v, acceleration(t + 0.5 * dt, s2)};
        const State s3{s.z + 0.5 * dt * k2.z, s.v + 0.5 * dt * k2.v};
        const State k3{s3.v, acceleration(t + 0.5 * dt, s3)};
        const State s4{s.z + dt * k3.z, s.v + dt * k3.v};
        const State k4{s4.v, acceleration(t + dt, s4)};
        const State next{s.z + dt / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
                         s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};

        if (!std::isfinite(next.z) || !std::isfinite(next.v) || next.z >= g) {
            double frac = 1.0;
            double v_contact = s.v;
            if (std::isfinite(next.z) && std::isfinite(next.v) && next.z != s.z) {
                frac = std::clamp((g - s.z) / (next.z - s.z), 0.0, 1.0);
                v_contact = s.v + frac * (next.v - s.v);
            }
            // Keep time strictly increasing even for a contact at the step start.
            const double t_contact = std::max(t + frac * dt, std::nextafter(t, 2.0 * t + dt));
            out.samples.push_back({t_contact, g, v_contact});
            out.contact_time = t_contact;
            return out;
        }
        s = next;
        out.samples.push_back({static_cast<double>(i + 1) * dt, s.z, s.v});
    }
    return out;
}

EnvelopeResult envelope(std::span<const TransientSample> trace, double oscillation_frequency) {
    constexpr double kMinPeriods = 10.0;
    require_periods(trace, oscillation_frequency, kMinPeriods);

    const double period = 1.0 / oscillation_frequency;
    const double omega = 2.0 * kPi * oscillation_frequency;
    const double center = oscillation_center(trace, period);
    const double t0 = trace.front().time;
    const double dt = (trace.back().time - t0) / static_cast<double>(trace.size() - 1);

    // Quadrature amplitude sqrt(y^2 + (v/w)^2) sampled every half period.
    EnvelopeResult out;
    const double half = 0.5 * period;
    const double t_last = trace.back().time + 1e-9 * period;
    for (std::size_t j = 0; t0 + static_cast<double>(j) * half <= t_last; ++j) {
        const double t = t0 + static_cast<double>(j) * half;
        const auto idx = std::min(trace.size() - 1,
                                  static_cast<std::size_t>(std::llround((t - t0) / dt)));
        const auto& s = trace[idx];
        const double y = s.displacement - center;
        const double q = s.velocity / omega;
        out.times.push_back(s.time);
        out.envelope.push_back(std::sqrt(y * y + q * q));
    }

    const std::size_t n = out.envelope.size();
    const std::size_t tail = std::min<std::size_t>(n, 20);
    double final_sum = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) final_sum += out.envelope[i];
    out.final_amplitude = final_sum / static_cast<double>(tail);

    const auto [min_it, max_it] = std::minmax_element(out.envelope.begin(), out.envelope.end());
    const double e_max = *max_it;
    if (e_max == 0.0 || (e_max - *min_it) <= 1e-3 * e_max) {
        out.tau = 0.0;
        out.settling_time_99 = out.times.front();
        return out;
    }

    out.rising = out.final_amplitude > out.envelope.front();
    std::vector<double> rel_t(n);
    for (std::size_t i = 0; i < n; ++i) rel_t[i] = out.times[i] - t0;
    const double tau_lo = period * 1e-3;
    const double tau_hi = 10.0 * (trace.back().time - t0);
    out.tau = out.rising
                  ? fit_time_constant(rel_t, out.envelope, tau_lo, tau_hi,
                                      [](double x) { return -std::expm1(-x); })
                        .tau
                  : fit_time_constant(rel_t, out.envelope, tau_lo, tau_hi,
                                      [](double x) { return std::exp(-x); })
                        .tau;

    const double band = 0.01 * (out.rising ? out.final_amplitude : e_max);
    std::size_t settled = 0;
    for (std::size_t i = n; i-- > 0;) {
        if (std::abs(out.envelope[i] - out.final_amplitude) > band) {
            settled = i + 1;
            break;
        }
    }
    out.settling_time_99 =
        settled < n ? out.times[settled] : std::numeric_limits<double>::infinity();
    return out;
}

EnvelopeResult envelope(const TransientResult& result) {
    return envelope(result.samples, result.oscillation_frequency());
}

double steady_state_amplitude(std::span<const TransientSample> trace,
                              double oscillation_frequency) {
    constexpr int kPeriods = 10;
    require_periods(trace, oscillation_frequency, kPeriods);
    const double period = 1.0 / oscillation_frequency;
    const double t_end = trace.back().time;

    std::vector<double> amplitudes;
    for (int p = kPeriods; p >= 1; --p) {
        const double lo = t_end - p * period;
        const double hi = lo + period;
        double z_min = std::numeric_limits<double>::infinity();
        double z_max = -std::numeric_limits<double>::infinity();
        for (const auto& s : trace) {
            if (s.time < lo || s.time > hi) continue;
            z_min = std::min(z_min, s.displacement);
            z_max = std::max(z_max, s.displacement);
        }
        amplitudes.push_back(0.5 * (z_max - z_min));
    }
    const double last = amplitudes.back();
    const double previous = amplitudes[amplitudes.size() - 2];
    if (last - previous > 0.01 * last) {
        throw ConvergenceError(fmt::format(
            "trace not settled: amplitude still rising {:.2f}% per period",
            100.0 * (last - previous) / last));
    }
    double sum = 0.0;
    for (double a : amplitudes) sum += a;
    return sum / static_cast<double>(amplitudes.size());
}

double steady_state_amplitude(const TransientResult& result) {
    return steady_state_amplitude(result.samples, result.oscillation_frequency());
}

}  // namespace fluidact
