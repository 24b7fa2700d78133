#pragma once

// Run configuration: a JSON document whose numeric keys carry their unit as
// a suffix (gap_um, voltage_V, frequency_kHz, ...). Everything is converted
// to SI here and nowhere else.

#include "fluidact/dynamics.hpp"
#include "fluidact/model.hpp"
#include "fluidact/statics.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace fluidact::cli {

/// Invalid configuration or command-line input (exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DirectSpring {
    double k;
};

struct CalibratedSpring {
    Observation observation;
    double voltage;
    /// Medium the observation was made in; defaults to the run fluid.
    std::optional<FluidMedium> fluid;
};

struct BeamSpring {
    BeamLoad load;
};

struct ModalSpring {};

using SpringSpec = std::variant<DirectSpring, CalibratedSpring, BeamSpring, ModalSpring>;

struct StaticSweepSpec {
    double start = 0.0;  // V
    double end = 0.0;    // V
    std::size_t points = 101;
};

struct FrequencySweepSpec {
    double start = 0.0;  // Hz
    double end = 0.0;    // Hz
    std::size_t points = 501;
};

struct TransientSpec {
    double duration = 0.0;              // s
    std::optional<double> time_step;    // s; default 1/(40 f_max)
    double initial_displacement = 0.0;  // m
    double initial_velocity = 0.0;      // m/s
    std::optional<double> evaluation_frequency;  // Hz
};

enum class OutputFormat { csv, json };

struct RunConfig {
    ActuatorGeometry geometry;
    DielectricStack dielectric;
    StructuralMaterial material;
    SpringSpec spring;
    FluidMedium fluid;
    DriveSignal drive = DriveSignal::dc(0.0);
    SqueezeFilmOption squeeze{};
    std::optional<double> dynamics_evaluation_frequency{};  // Hz
    std::optional<StaticSweepSpec> static_sweep{};
    std::optional<FrequencySweepSpec> frequency_sweep{};
    std::optional<TransientSpec> transient{};
    StaticTolerances tolerances{};
    std::size_t workers = 1;
    std::optional<std::filesystem::path> output_path{};
    std::optional<OutputFormat> output_format{};

    ParallelPlate plate() const { return {geometry, dielectric, fluid}; }
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Spring constant for the configured fluid. Calibrations are done in their
/// own medium, so the result does not change with `--fluid`.
SpringModel resolve_spring(const RunConfig& config);

FluidMedium parse_fluid(const nlohmann::json& value, const std::string& path);
OutputFormat parse_format(const std::string& text);

}  // namespace fluidact::cli
