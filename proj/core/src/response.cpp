#include "fluidact/response.hpp"

#include "fluidact/error.hpp"
#include "fluidact/parallel.hpp"
#include "fluidact/statics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace fluidact {

namespace {

constexpr double kPi = std::numbers::pi;

struct Scaled {
    double a;    // A k / F
    double phi;
};

// Stationarity residuals in units of F: with r = m w^2 / k and b = c w / k,
//   a (1 - r) - cos(phi) = 0,   sin(phi) + b a = 0.
struct ScaledSystem {
    double r;
    double b;

    std::array<double, 2> residual(const Scaled& s) const {
        return {s.a * (1.0 - r) - std::cos(s.phi), std::sin(s.phi) + b * s.a};
    }
    double norm(const Scaled& s) const {
        const auto res = residual(s);
        return std::hypot(res[0], res[1]);
    }
};

std::optional<Scaled> newton(const ScaledSystem& sys, Scaled s) {
    constexpr int kMaxIterations = 100;
    double current = sys.norm(s);
    for (int it = 0; it < kMaxIterations; ++it) {
        const auto res = sys.residual(s);
        const double j11 = 1.0 - sys.r;
        const double j12 = std::sin(s.phi);
        const double j21 = sys.b;
        const double j22 = std::cos(s.phi);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
        const double da = -(j22 * res[0] - j12 * res[1]) / det;
        const double dphi = -(-j21 * res[0] + j11 * res[1]) / det;

        // Backtrack on the residual norm.
        double lambda = 1.0;
        Scaled trial{s.a + da, s.phi + dphi};
        double trial_norm = sys.norm(trial);
        while (trial_norm > current && lambda > 1e-6) {
            lambda *= 0.5;
            trial = {s.a + lambda * da, s.phi + lambda * dphi};
            trial_norm = sys.norm(trial);
        }
        if (trial_norm > current) break;  // round-off floor or a stalled seed
        const bool settled = std::abs(lambda * da) <= 4e-16 * std::max(1.0, std::abs(trial.a)) &&
                             std::abs(lambda * dphi) <= 4e-16 * std::max(1.0, std::abs(trial.phi));
        s = trial;
        current = trial_norm;
        if (settled || current == 0.0) break;
    }
    if (!(current <= 1e-12 * std::max(1.0, std::abs(s.a)))) return std::nullopt;
    return s;
}

Scaled canonical(Scaled s) {
    if (s.a < 0.0) {
        s.a = -s.a;
        s.phi += kPi;
    }
    s.phi = std::remainder(s.phi, 2.0 * kPi);  // (-pi, pi]
    if (s.phi > 0.0) {
        // sin(phi) = -b a <= 0, so a positive phase is +pi or round-off above 0.
        s.phi = s.phi > 0.5 * kPi ? -kPi : 0.0;
    }
    return s;
}

}  // namespace

ForceDecomposition decompose_drive_force(const DriveSignal& drive, const ParallelPlate& plate,
                                         double operating_displacement) {
    const double f = electrostatic_force(plate, operating_displacement, drive.voltage());
    if (drive.kind() == DriveKind::dc) return {f, 0.0, 0.0};
    return {f, f, 2.0 * drive.frequency()};
}

AveragedLagrangian::AveragedLagrangian(double mass, double stiffness, double damping,
                                       double force)
    : mass_(mass), stiffness_(stiffness), damping_(damping), force_(force) {
    if (!(mass > 0.0)) throw InvalidInput(fmt::format("mass must be positive (got {})", mass));
    if (!(stiffness > 0.0)) {
        throw InvalidInput(fmt::format("stiffness must be positive (got {})", stiffness));
    }
    if (!(damping >= 0.0)) {
        throw InvalidInput(fmt::format("damping must be non-negative (got {})", damping));
    }
    if (!(force >= 0.0)) {
        throw InvalidInput(fmt::format("force amplitude must be non-negative (got {})", force));
    }
}

double AveragedLagrangian::mean(double amplitude, double phase, double path_amplitude,
                                double path_phase, double omega) const {
    const double a2 = amplitude * amplitude;
    return 0.25 * mass_ * omega * omega * a2 - 0.25 * stiffness_ * a2 +
           0.5 * force_ * amplitude * std::cos(phase) +
           0.5 * damping_ * omega * amplitude * path_amplitude * std::sin(path_phase - phase);
}

std::array<double, 2> AveragedLagrangian::stationarity(double amplitude, double phase,
                                                       double omega) const {
    return {0.5 * (mass_ * omega * omega - stiffness_) * amplitude +
                0.5 * force_ * std::cos(phase),
            -0.5 * force_ * amplitude * std::sin(phase) -
                0.5 * damping_ * omega * amplitude * amplitude};
}

ResponsePoint AveragedLagrangian::solve(double omega) const {
    if (!(omega >= 0.0)) {
        throw InvalidInput(fmt::format("angular frequency must be non-negative (got {})", omega));
    }
    const ScaledSystem sys{mass_ * omega * omega / stiffness_, damping_ * omega / stiffness_};
    const double frequency = omega / (2.0 * kPi);

    if (sys.b == 0.0 && sys.r == 1.0) {
        return {frequency, std::numeric_limits<double>::infinity(), -0.5 * kPi};
    }

    std::vector<Scaled> seeds;
    if (sys.b > 0.0) seeds.push_back({1.0 / sys.b, -0.5 * kPi});
    seeds.push_back({1.0, 0.0});
    seeds.push_back({1.0, -kPi});
    seeds.push_back({1.0, -0.25 * kPi});
    seeds.push_back({1.0, -0.75 * kPi});

    for (const auto& seed : seeds) {
        if (auto s = newton(sys, seed)) {
            const Scaled c = canonical(*s);
            return {frequency, c.a * force_ / stiffness_, c.phi};
        }
    }
    throw ConvergenceError(fmt::format(
        "averaged-Lagrangian stationarity did not converge at {} Hz", frequency));
}

double total_damping(double omega, const ActuatorGeometry& geom, const FluidMedium& fluid,
                     const SqueezeFilmOption& squeeze) {
    double c = damping_coefficient(omega, geom, fluid);
    if (squeeze.enabled) c += squeeze_film_coefficient(geom, fluid);
    return c;
}

std::vector<ResponsePoint> harmonic_response(std::span<const double> frequencies,
                                             double force_amplitude, const ActuatorGeometry& geom,
                                             const StructuralMaterial& mat,
                                             const FluidMedium& fluid, const SpringModel& spring,
                                             const ResponseOptions& options) {
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        if (!(frequencies[i] > 0.0) || (i > 0 && !(frequencies[i] > frequencies[i - 1]))) {
            throw InvalidInput("frequency grid must be positive and strictly ascending");
        }
    }
    if (!(force_amplitude >= 0.0)) {
        throw InvalidInput(
            fmt::format("force amplitude must be non-negative (got {})", force_amplitude));
    }
    const double k = spring.k() - options.electrostatic_gradient;
    if (!(k > 0.0)) {
        throw InvalidInput("electrostatic softening exceeds the mechanical stiffness");
    }

    return parallel_map<ResponsePoint>(frequencies.size(), options.workers, [&](std::size_t i) {
        const double omega = 2.0 * kPi * frequencies[i];
        const double omega_eval =
            options.frozen_frequency ? 2.0 * kPi * *options.frozen_frequency : omega;
        const AveragedLagrangian lagrangian(effective_mass(omega_eval, geom, mat, fluid), k,
                                            total_damping(omega_eval, geom, fluid, options.squeeze),
                                            force_amplitude);
        auto p = lagrangian.solve(omega);
        p.frequency = frequencies[i];
        return p;
    });
}

std::vector<ResponsePoint> normalize_response(std::span<const ResponsePoint> points,
                                              std::span<const ResponsePoint> reference) {
    if (points.empty()) return {};
    if (reference.empty()) throw InvalidInput("reference sweep is empty");
    const double peak = peak_response(reference).amplitude;
    if (!(peak > 0.0) || !std::isfinite(peak)) {
        throw InvalidInput(fmt::format("reference peak amplitude must be positive and finite "
                                       "(got {})",
                                       peak));
    }
    std::vector<ResponsePoint> out(points.begin(), points.end());
    for (auto& p : out) p.amplitude /= peak;
    return out;
}

ResponsePoint peak_response(std::span<const ResponsePoint> points) {
    if (points.empty()) throw InvalidInput("cannot locate the peak of an empty sweep");
    return *std::max_element(points.begin(), points.end(),
                             [](const ResponsePoint& a, const ResponsePoint& b) {
                                 return a.amplitude < b.amplitude;
                             });
}

std::vector<double> linear_frequency_grid(double f_start, double f_end, std::size_t n) {
    if (n < 2 || !(f_start > 0.0) || !(f_end > f_start)) {
        throw InvalidInput(fmt::format(
            "frequency grid needs n >= 2 and 0 < f_start < f_end (got n={}, {} .. {})", n,
            f_start, f_end));
    }
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = f_start + (f_end - f_start) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    grid.back() = f_end;
    return grid;
}

}  // namespace fluidact
