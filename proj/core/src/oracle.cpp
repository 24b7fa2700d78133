#include "fluidact/oracle.hpp"

#include "fluidact/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace fluidact::oracle {

double total_potential(const ParallelPlate& plate, const SpringModel& spring, double z,
                       double voltage) {
    const double span =
        effective_dielectric_thickness(plate.stack, plate.fluid) + plate.geometry.gap();
    const double half_eps_s = 0.5 * constants::kVacuumPermittivity * plate.fluid.eps() *
                              plate.geometry.electrode_area();
    return 0.5 * spring.k() * z * z - half_eps_s * voltage * voltage / (span - z);
}

GridScanResult scan_potential(const ParallelPlate& plate, const SpringModel& spring,
                              double voltage, std::size_t n_points) {
    if (n_points < 1000) {
        throw InvalidInput(fmt::format("grid scan needs at least 1000 points (got {})", n_points));
    }
    const double g = plate.geometry.gap();
    GridScanResult out;
    out.spacing = g / static_cast<double>(n_points - 1);
    out.grid.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double z = i + 1 == n_points ? g : static_cast<double>(i) * out.spacing;
        out.grid.push_back({z, total_potential(plate, spring, z, voltage)});
    }

    const auto& u = out.grid;
    if (u[1].potential > u[0].potential) out.minima.push_back(u[0].z);
    for (std::size_t i = 1; i + 1 < n_points; ++i) {
        const double here = u[i].potential;
        if (here < u[i - 1].potential && here <= u[i + 1].potential) out.minima.push_back(u[i].z);
        if (here > u[i - 1].potential && here >= u[i + 1].potential) out.maxima.push_back(u[i].z);
    }
    return out;
}

double finite_difference_force_check(const ParallelPlate& plate, const SpringModel& spring,
                                     double z, double voltage, double step) {
    const double g = plate.geometry.gap();
    if (!(step > 0.0) || !(z > step) || !(z < g - step)) {
        throw InvalidInput(fmt::format("need 0 < h < z < g - h (z = {}, h = {})", z, step));
    }
    const double du_dz = (total_potential(plate, spring, z + step, voltage) -
                          total_potential(plate, spring, z - step, voltage)) /
                         (2.0 * step);

    const double span = effective_dielectric_thickness(plate.stack, plate.fluid) + g;
    const double f_elect = 0.5 * constants::kVacuumPermittivity * plate.fluid.eps() *
                           plate.geometry.electrode_area() * voltage * voltage /
                           ((span - z) * (span - z));
    const double f_spring = spring.k() * z;
    const double net = f_elect - f_spring;
    const double scale = std::max({std::abs(f_elect), std::abs(f_spring), std::abs(net)});
    return std::abs(-du_dz - net) / scale;
}

Lorentzian lorentzian(double omega, double force, double mass, double damping, double stiffness) {
    const double detuning = stiffness / mass - omega * omega;
    const double loss = damping * omega / mass;
    return {(force / mass) / std::hypot(detuning, loss), -std::atan2(loss, detuning)};
}

}  // namespace fluidact::oracle
