#pragma once

// Brute-force validators for the solvers. Nothing here shares a code path
// with the statics or response implementations.

#include "fluidact/model.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace fluidact::oracle {

struct GridPoint {
    double z;
    double potential;
};

struct GridScanResult {
    std::vector<GridPoint> grid;
    std::vector<double> minima;
    std::vector<double> maxima;
    double spacing = 0.0;
};

/// Total potential U(z) = 1/2 k z^2 - 1/2 eps0 eps S V^2 / (d + g - z).
double total_potential(const ParallelPlate& plate, const SpringModel& spring, double z,
                       double voltage);

/// Local extrema of U on a uniform grid of n_points >= 1000 over [0, g].
/// Endpoint minima (z = 0 with V = 0) are reported as minima.
GridScanResult scan_potential(const ParallelPlate& plate, const SpringModel& spring,
                              double voltage, std::size_t n_points = 10000);

/// Relative mismatch between -dU/dz by central differences and the analytic
/// net force F_elect - k z.
double finite_difference_force_check(const ParallelPlate& plate, const SpringModel& spring,
                                     double z, double voltage, double step);

struct Lorentzian {
    double amplitude;
    double phase;
};

/// Steady state of m z'' + c z' + k z = F cos(w t).
Lorentzian lorentzian(double omega, double force, double mass, double damping, double stiffness);

}  // namespace fluidact::oracle
