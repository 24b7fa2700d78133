#include "fluidact/model.hpp"

#include "fluidact/error.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

namespace fluidact {

namespace {

void require(bool ok, std::string_view what, double value) {
    if (!ok || std::isnan(value)) {
        throw InvalidInput(fmt::format("{} (got {})", what, value));
    }
}

}  // namespace

ActuatorGeometry::ActuatorGeometry(double length, double width, double thickness,
                                   double electrode_area, double gap)
    : length_(length),
      width_(width),
      thickness_(thickness),
      electrode_area_(electrode_area),
      gap_(gap) {
    require(length > 0, "length must be positive", length);
    require(width > 0, "width must be positive", width);
    require(thickness > 0, "thickness must be positive", thickness);
    require(electrode_area > 0, "electrode area must be positive", electrode_area);
    require(gap > 0, "gap must be positive", gap);
    // Relative slack absorbs unit-conversion rounding of S == L*w.
    require(electrode_area <= length * width * (1.0 + 1e-12),
            "electrode area cannot exceed the plate footprint", electrode_area);
}

DielectricStack::DielectricStack(double t1, double t2, double eps1, double eps2)
    : t1_(t1), t2_(t2), eps1_(eps1), eps2_(eps2) {
    require(t1 >= 0, "insulator thickness t1 must be non-negative", t1);
    require(t2 >= 0, "insulator thickness t2 must be non-negative", t2);
    require(eps1 >= 1, "insulator permittivity eps1 must be >= 1", eps1);
    require(eps2 >= 1, "insulator permittivity eps2 must be >= 1", eps2);
}

FluidMedium::FluidMedium(std::string name, double eps, double rho, double eta,
                         std::optional<double> screening_frequency, bool non_paper_defaults)
    : name_(std::move(name)),
      eps_(eps),
      rho_(rho),
      eta_(eta),
      screening_frequency_(screening_frequency),
      non_paper_defaults_(non_paper_defaults) {
    require(eps >= 1, "fluid permittivity must be >= 1", eps);
    require(rho >= 0, "fluid density must be non-negative", rho);
    require(eta >= 0, "fluid viscosity must be non-negative", eta);
    if (screening_frequency) {
        require(*screening_frequency > 0, "screening frequency must be positive",
                *screening_frequency);
    }
}

StructuralMaterial::StructuralMaterial(double youngs_modulus, double density)
    : youngs_modulus_(youngs_modulus), density_(density) {
    require(youngs_modulus > 0, "Young's modulus must be positive", youngs_modulus);
    require(density > 0, "structural density must be positive", density);
}

std::string_view to_string(StiffnessSource source) {
    switch (source) {
        case StiffnessSource::direct: return "direct";
        case StiffnessSource::calibrated: return "calibrated";
        case StiffnessSource::beam_end_load: return "beam-end-load";
        case StiffnessSource::beam_uniform_load: return "beam-uniform-load";
        case StiffnessSource::modal: return "modal";
    }
    return "unknown";
}

SpringModel::SpringModel(double k, StiffnessSource source) : k_(k), source_(source) {
    require(k > 0 && std::isfinite(k), "spring constant must be positive", k);
}

DriveSignal::DriveSignal(DriveKind kind, double voltage, double frequency)
    : kind_(kind), voltage_(voltage), frequency_(frequency) {
    require(voltage >= 0 && std::isfinite(voltage), "drive voltage must be non-negative",
            voltage);
    if (kind == DriveKind::ac) {
        require(frequency > 0 && std::isfinite(frequency),
                "AC drive frequency must be positive", frequency);
    }
}

DriveSignal DriveSignal::dc(double voltage) { return {DriveKind::dc, voltage, 0.0}; }

DriveSignal DriveSignal::ac(double rms_voltage, double frequency) {
    return {DriveKind::ac, rms_voltage, frequency};
}

double effective_dielectric_thickness(const DielectricStack& stack, const FluidMedium& fluid) {
    return fluid.eps() * (stack.t1() / stack.eps1() + stack.t2() / stack.eps2());
}

bool suppresses_pull_in(const ParallelPlate& plate) {
    return effective_dielectric_thickness(plate.stack, plate.fluid) > 2.0 * plate.geometry.gap();
}

SpringModel beam_stiffness(const ActuatorGeometry& geom, const StructuralMaterial& mat,
                           BeamLoad load) {
    const double inertia = geom.width() * std::pow(geom.thickness(), 3) / 12.0;
    const double ei_over_l3 = mat.youngs_modulus() * inertia / std::pow(geom.length(), 3);
    switch (load) {
        case BeamLoad::end_load:
            return SpringModel(3.0 * ei_over_l3, StiffnessSource::beam_end_load);
        case BeamLoad::uniform_load:
            return SpringModel(8.0 * ei_over_l3, StiffnessSource::beam_uniform_load);
    }
    throw InvalidInput("unknown beam load model");
}

SpringModel calibrate_stiffness(Observation observation, double voltage,
                                const ParallelPlate& plate) {
    require(voltage > 0 && std::isfinite(voltage), "calibration voltage must be positive",
            voltage);
    const double d = effective_dielectric_thickness(plate.stack, plate.fluid);
    const double g = plate.geometry.gap();
    const double eps_s =
        constants::kVacuumPermittivity * plate.fluid.eps() * plate.geometry.electrode_area();
    const bool stable_closure = suppresses_pull_in(plate);

    switch (observation) {
        case Observation::pull_in_voltage:
            if (stable_closure) {
                throw ModeMismatch(fmt::format(
                    "cannot calibrate on a pull-in voltage in '{}': the gap closes without "
                    "pull-in (d = {} m > 2g)",
                    plate.fluid.name(), d));
            }
            return SpringModel(27.0 * eps_s * voltage * voltage / (8.0 * std::pow(g + d, 3)),
                               StiffnessSource::calibrated);
        case Observation::close_voltage:
            if (!stable_closure) {
                throw ModeMismatch(fmt::format(
                    "cannot calibrate on a stable closing voltage in '{}': pull-in occurs "
                    "first (d = {} m <= 2g)",
                    plate.fluid.name(), d));
            }
            return SpringModel(eps_s * voltage * voltage / (2.0 * g * d * d),
                               StiffnessSource::calibrated);
    }
    throw InvalidInput("unknown calibration observation");
}

namespace {
constexpr std::array<std::string_view, 4> kPresetNames{"vacuum", "air", "ipa", "tap-water"};
}

std::span<const std::string_view> fluid_preset_names() { return kPresetNames; }

FluidMedium fluid_preset(std::string_view name) {
    if (name == "vacuum") return FluidMedium("vacuum", 1.0, 0.0, 0.0);
    // ~25 degC air.
    if (name == "air") return FluidMedium("air", 1.0, 1.18, 1.86e-5);
    if (name == "ipa") return FluidMedium("ipa", 21.3, 786.0, 2.04e-3, 17e3, true);
    if (name == "tap-water") return FluidMedium("tap-water", 80.1, 1000.0, 8.59e-4, 950e3);
    throw InvalidInput(fmt::format("unknown fluid preset '{}' (expected one of: vacuum, air, "
                                   "ipa, tap-water)",
                                   name));
}

namespace reference {

ActuatorGeometry cantilever() { return {250e-6, 30e-6, 2e-6, 7500e-12, 2e-6}; }

DielectricStack nitride_stack() { return {300e-9, 300e-9, 8.0, 8.0}; }

StructuralMaterial polysilicon() { return {160e9, 2330.0}; }

}  // namespace reference

}  // namespace fluidact
