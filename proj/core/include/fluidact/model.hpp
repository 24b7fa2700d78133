#pragma once

// Physical inputs shared by every solver. All values are SI; unit
// conversion happens at the configuration boundary only.

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace fluidact {

namespace constants {
inline constexpr double kVacuumPermittivity = 8.85e-12;  // F/m
// First clamped-free flexural eigenvalue squared, (1.8751)^2.
inline constexpr double kFirstModeEigenvalueSq = 3.51602;
}  // namespace constants

class ActuatorGeometry {
public:
    ActuatorGeometry(double length, double width, double thickness, double electrode_area,
                     double gap);

    double length() const { return length_; }
    double width() const { return width_; }
    double thickness() const { return thickness_; }
    double electrode_area() const { return electrode_area_; }
    double gap() const { return gap_; }

private:
    double length_;
    double width_;
    double thickness_;
    double electrode_area_;
    double gap_;
};

/// Insulating layers on the two electrodes, in series with the fluid gap.
class DielectricStack {
public:
    DielectricStack(double t1, double t2, double eps1, double eps2);
    static DielectricStack bare() { return {0.0, 0.0, 1.0, 1.0}; }

    double t1() const { return t1_; }
    double t2() const { return t2_; }
    double eps1() const { return eps1_; }
    double eps2() const { return eps2_; }

private:
    double t1_;
    double t2_;
    double eps1_;
    double eps2_;
};

class FluidMedium {
public:
    /// `screening_frequency` is the minimum AC frequency that avoids electrode
    /// potential screening in a conductive liquid; absent for insulators.
    /// `non_paper_defaults` marks media whose transport properties are
    /// placeholders rather than measured values.
    FluidMedium(std::string name, double eps, double rho, double eta,
                std::optional<double> screening_frequency = std::nullopt,
                bool non_paper_defaults = false);

    const std::string& name() const { return name_; }
    double eps() const { return eps_; }
    double rho() const { return rho_; }
    double eta() const { return eta_; }
    const std::optional<double>& screening_frequency() const { return screening_frequency_; }
    bool non_paper_defaults() const { return non_paper_defaults_; }
    bool is_vacuum() const { return rho_ == 0.0; }

private:
    std::string name_;
    double eps_;
    double rho_;
    double eta_;
    std::optional<double> screening_frequency_;
    bool non_paper_defaults_;
};

class StructuralMaterial {
public:
    StructuralMaterial(double youngs_modulus, double density);

    double youngs_modulus() const { return youngs_modulus_; }
    double density() const { return density_; }

private:
    double youngs_modulus_;
    double density_;
};

enum class StiffnessSource { direct, calibrated, beam_end_load, beam_uniform_load, modal };

std::string_view to_string(StiffnessSource source);

class SpringModel {
public:
    explicit SpringModel(double k, StiffnessSource source = StiffnessSource::direct);

    double k() const { return k_; }
    StiffnessSource source() const { return source_; }

private:
    double k_;
    StiffnessSource source_;
};

enum class DriveKind { dc, ac };

class DriveSignal {
public:
    static DriveSignal dc(double voltage);
    /// AC drive V = V_rms * sqrt(2) * cos(2 pi f t).
    static DriveSignal ac(double rms_voltage, double frequency);

    DriveKind kind() const { return kind_; }
    /// DC level or RMS amplitude.
    double voltage() const { return voltage_; }
    /// Electrical drive frequency; zero for DC.
    double frequency() const { return frequency_; }

private:
    DriveSignal(DriveKind kind, double voltage, double frequency);

    DriveKind kind_;
    double voltage_;
    double frequency_;
};

/// The electrostatic part of an actuator: plates, insulation and the medium
/// filling the gap.
struct ParallelPlate {
    ActuatorGeometry geometry;
    DielectricStack stack;
    FluidMedium fluid;
};

enum class BeamLoad { end_load, uniform_load };
enum class Observation { pull_in_voltage, close_voltage };

/// eps * (t1/eps1 + t2/eps2): insulation thickness referred to the fluid.
double effective_dielectric_thickness(const DielectricStack& stack, const FluidMedium& fluid);

/// True when the insulation is thick enough that the plate travels the
/// whole gap without collapsing (effective thickness exceeds twice the gap).
bool suppresses_pull_in(const ParallelPlate& plate);

SpringModel beam_stiffness(const ActuatorGeometry& geom, const StructuralMaterial& mat,
                           BeamLoad load);

/// Back-solves k from an observed pull-in or stable gap-closing voltage.
/// Throws ModeMismatch when the regime of `plate` contradicts `observation`.
SpringModel calibrate_stiffness(Observation observation, double voltage,
                                const ParallelPlate& plate);

FluidMedium fluid_preset(std::string_view name);
std::span<const std::string_view> fluid_preset_names();

// The 250 x 30 x 2 um nitride-encapsulated polysilicon cantilever.
namespace reference {
ActuatorGeometry cantilever();
DielectricStack nitride_stack();
StructuralMaterial polysilicon();
/// Pull-in voltage in air used to fix the lumped spring constant.
inline constexpr double kAirPullInVoltage = 7.6;
}  // namespace reference

}  // namespace fluidact
