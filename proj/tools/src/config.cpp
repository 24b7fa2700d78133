#include "config.hpp"

#include "fluidact/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

namespace fluidact::cli {

namespace {

using nlohmann::json;

enum class Kind {
    length,
    area,
    voltage,
    frequency,
    time,
    velocity,
    stiffness,
    density,
    viscosity,
    modulus
};

struct Unit {
    std::string_view suffix;
    double scale;
};

struct KindInfo {
    Kind kind;
    std::string_view name;
    std::vector<Unit> units;
};

const std::vector<KindInfo>& kinds() {
    static const std::vector<KindInfo> table{
        {Kind::length, "length", {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}}},
        {Kind::area, "area", {{"m2", 1.0}, {"mm2", 1e-6}, {"um2", 1e-12}}},
        {Kind::voltage, "voltage", {{"V", 1.0}, {"mV", 1e-3}}},
        {Kind::frequency, "frequency", {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}}},
        {Kind::time, "time", {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}}},
        {Kind::velocity, "velocity", {{"m_s", 1.0}}},
        {Kind::stiffness, "stiffness", {{"N_m", 1.0}}},
        {Kind::density, "density", {{"kg_m3", 1.0}}},
        {Kind::viscosity, "viscosity", {{"Pa_s", 1.0}, {"mPa_s", 1e-3}}},
        {Kind::modulus, "modulus", {{"Pa", 1.0}, {"MPa", 1e6}, {"GPa", 1e9}}},
    };
    return table;
}

const KindInfo& info(Kind kind) {
    return *std::find_if(kinds().begin(), kinds().end(),
                         [&](const KindInfo& k) { return k.kind == kind; });
}

const KindInfo* kind_of_suffix(std::string_view suffix) {
    for (const auto& k : kinds()) {
        for (const auto& u : k.units) {
            if (u.suffix == suffix) return &k;
        }
    }
    return nullptr;
}

std::string join_path(const std::string& parent, std::string_view key) {
    return parent.empty() ? std::string(key) : fmt::format("{}.{}", parent, key);
}

[[noreturn]] void fail(const std::string& path, std::string_view what) {
    throw ConfigError(fmt::format("{}: {}", path, what));
}

// One JSON object. Every key must be consumed before finish().
class Block {
public:
    Block(const json& value, std::string path) : value_(value), path_(std::move(path)) {
        if (!value_.is_object()) fail(path_, "expected an object");
    }

    const std::string& path() const { return path_; }

    bool has(std::string_view key) const { return value_.contains(std::string(key)); }

    /// Value of `<base>_<unit>` in SI. `canonical` names the suffix used in
    /// the "missing key" message.
    std::optional<double> quantity(std::string_view base, Kind kind, std::string_view canonical) {
        std::optional<double> out;
        std::string found;
        for (const auto& [key, val] : value_.items()) {
            if (key == base) {
                fail(join_path(path_, key),
                     fmt::format("missing unit suffix (e.g. {}_{})", base, canonical));
            }
            if (key.size() <= base.size() + 1 || key.compare(0, base.size(), base) != 0 ||
                key[base.size()] != '_') {
                continue;
            }
            const std::string_view suffix = std::string_view(key).substr(base.size() + 1);
            const KindInfo* suffix_kind = kind_of_suffix(suffix);
            if (suffix_kind == nullptr) continue;  // a different key sharing the prefix
            const std::string key_path = join_path(path_, key);
            if (suffix_kind->kind != kind) {
                std::string allowed;
                for (const auto& u : info(kind).units) {
                    allowed += allowed.empty() ? "" : ", ";
                    allowed += u.suffix;
                }
                fail(key_path, fmt::format("unit '{}' is a {} unit, expected a {} ({})", suffix,
                                           suffix_kind->name, info(kind).name, allowed));
            }
            if (out) {
                fail(key_path, fmt::format("duplicates {}", join_path(path_, found)));
            }
            double scale = 1.0;
            for (const auto& u : info(kind).units) {
                if (u.suffix == suffix) scale = u.scale;
            }
            out = number_at(key) * scale;
            found = key;
        }
        last_key_ = found.empty() ? fmt::format("{}_{}", base, canonical) : found;
        return out;
    }

    double required(std::string_view base, Kind kind, std::string_view canonical) {
        const auto v = quantity(base, kind, canonical);
        if (!v) fail(join_path(path_, fmt::format("{}_{}", base, canonical)), "missing key");
        return *v;
    }

    double positive(std::string_view base, Kind kind, std::string_view canonical) {
        const double v = required(base, kind, canonical);
        if (!(v > 0.0)) fail(join_path(path_, last_key_), "must be positive");
        return v;
    }

    std::optional<double> optional_positive(std::string_view base, Kind kind,
                                            std::string_view canonical) {
        const auto v = quantity(base, kind, canonical);
        if (v && !(*v > 0.0)) fail(join_path(path_, last_key_), "must be positive");
        return v;
    }

    std::optional<double> plain_number(std::string_view key) {
        if (!has(key)) return std::nullopt;
        return number_at(key);
    }

    double required_plain(std::string_view key) {
        if (!has(key)) fail(join_path(path_, key), "missing key");
        return number_at(key);
    }

    std::optional<std::size_t> count(std::string_view key) {
        if (!has(key)) return std::nullopt;
        const json& v = value_.at(std::string(key));
        used_.insert(std::string(key));
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            fail(join_path(path_, key), "expected a positive integer");
        }
        return static_cast<std::size_t>(v.get<long long>());
    }

    std::optional<std::string> text(std::string_view key) {
        if (!has(key)) return std::nullopt;
        const json& v = value_.at(std::string(key));
        used_.insert(std::string(key));
        if (!v.is_string()) fail(join_path(path_, key), "expected a string");
        return v.get<std::string>();
    }

    std::optional<bool> flag(std::string_view key) {
        if (!has(key)) return std::nullopt;
        const json& v = value_.at(std::string(key));
        used_.insert(std::string(key));
        if (!v.is_boolean()) fail(join_path(path_, key), "expected true or false");
        return v.get<bool>();
    }

    const json* child(std::string_view key) {
        if (!has(key)) return nullptr;
        used_.insert(std::string(key));
        return &value_.at(std::string(key));
    }

    void finish() const {
        for (const auto& [key, val] : value_.items()) {
            if (!used_.contains(key)) fail(join_path(path_, key), "unknown key");
        }
    }

private:
    double number_at(std::string_view key) {
        const json& v = value_.at(std::string(key));
        used_.insert(std::string(key));
        if (!v.is_number()) fail(join_path(path_, key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(join_path(path_, key), "expected a finite number");
        return d;
    }

    const json& value_;
    std::string path_;
    std::set<std::string> used_;
    std::string last_key_;
};

// Domain constructors validate their own arguments; attach the block path.
template <typename Fn>
auto build(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
}

ActuatorGeometry parse_geometry(const json& value) {
    Block b(value, "geometry");
    const double length = b.positive("length", Kind::length, "um");
    const double width = b.positive("width", Kind::length, "um");
    const double thickness = b.positive("thickness", Kind::length, "um");
    const double gap = b.positive("gap", Kind::length, "um");
    const double area = b.quantity("electrode_area", Kind::area, "um2").value_or(length * width);
    b.finish();
    return build("geometry",
                 [&] { return ActuatorGeometry(length, width, thickness, area, gap); });
}

DielectricStack parse_dielectric(const json& value) {
    Block b(value, "dielectric");
    const double t1 = b.quantity("t1", Kind::length, "nm").value_or(0.0);
    const double t2 = b.quantity("t2", Kind::length, "nm").value_or(0.0);
    const double eps1 = b.plain_number("eps1").value_or(1.0);
    const double eps2 = b.plain_number("eps2").value_or(1.0);
    b.finish();
    return build("dielectric", [&] { return DielectricStack(t1, t2, eps1, eps2); });
}

StructuralMaterial parse_material(const json& value) {
    Block b(value, "material");
    const double e = b.positive("youngs_modulus", Kind::modulus, "GPa");
    const double rho = b.positive("density", Kind::density, "kg_m3");
    b.finish();
    return build("material", [&] { return StructuralMaterial(e, rho); });
}

SpringSpec parse_spring(const json& value) {
    Block b(value, "spring");
    std::vector<SpringSpec> specs;
    if (const auto k = b.quantity("k", Kind::stiffness, "N_m")) {
        if (!(*k > 0.0)) fail("spring.k_N_m", "must be positive");
        specs.emplace_back(DirectSpring{*k});
    }
    if (const json* cal = b.child("calibration")) {
        Block c(*cal, "spring.calibration");
        const auto obs = c.text("observation");
        if (!obs) fail("spring.calibration.observation", "missing key (pull_in or close)");
        CalibratedSpring spec{};
        if (*obs == "pull_in") {
            spec.observation = Observation::pull_in_voltage;
        } else if (*obs == "close") {
            spec.observation = Observation::close_voltage;
        } else {
            fail("spring.calibration.observation",
                 fmt::format("expected pull_in or close (got '{}')", *obs));
        }
        spec.voltage = c.positive("voltage", Kind::voltage, "V");
        if (const json* f = c.child("fluid")) spec.fluid = parse_fluid(*f, "spring.calibration.fluid");
        c.finish();
        specs.emplace_back(spec);
    }
    if (const auto beam = b.text("beam")) {
        if (*beam == "end_load") {
            specs.emplace_back(BeamSpring{BeamLoad::end_load});
        } else if (*beam == "uniform_load") {
            specs.emplace_back(BeamSpring{BeamLoad::uniform_load});
        } else {
            fail("spring.beam", fmt::format("expected end_load or uniform_load (got '{}')", *beam));
        }
    }
    if (const auto modal = b.flag("modal")) {
        if (*modal) specs.emplace_back(ModalSpring{});
    }
    b.finish();
    if (specs.size() != 1) {
        fail("spring", fmt::format("exactly one of k_N_m, calibration, beam, modal is required "
                                   "(got {})",
                                   specs.size()));
    }
    return specs.front();
}

DriveSignal parse_drive(const json& value) {
    Block b(value, "drive");
    const auto kind = b.text("kind").value_or("dc");
    DriveSignal drive = DriveSignal::dc(0.0);
    if (kind == "dc") {
        const double v = b.required("voltage", Kind::voltage, "V");
        drive = build("drive.voltage_V", [&] { return DriveSignal::dc(v); });
    } else if (kind == "ac") {
        const double v = b.required("voltage_rms", Kind::voltage, "V");
        const double f = b.positive("frequency", Kind::frequency, "kHz");
        drive = build("drive", [&] { return DriveSignal::ac(v, f); });
    } else {
        fail("drive.kind", fmt::format("expected dc or ac (got '{}')", kind));
    }
    b.finish();
    return drive;
}

SqueezeFilmOption parse_squeeze(const json& value) {
    Block b(value, "squeeze_film");
    SqueezeFilmOption out;
    out.enabled = b.flag("enabled").value_or(false);
    if (const auto mode = b.text("mode")) {
        if (*mode == "fixed_gap") {
            out.mode = SqueezeGapMode::fixed_gap;
        } else if (*mode == "instantaneous_gap") {
            out.mode = SqueezeGapMode::instantaneous_gap;
        } else {
            fail("squeeze_film.mode",
                 fmt::format("expected fixed_gap or instantaneous_gap (got '{}')", *mode));
        }
    }
    b.finish();
    return out;
}

StaticSweepSpec parse_static_sweep(const json& value) {
    Block b(value, "static_sweep");
    StaticSweepSpec out;
    out.start = b.required("start", Kind::voltage, "V");
    out.end = b.required("end", Kind::voltage, "V");
    out.points = b.count("points").value_or(out.points);
    b.finish();
    if (out.start < 0.0) fail("static_sweep.start_V", "must be non-negative");
    if (out.end < out.start) fail("static_sweep.end_V", "must not be below start_V");
    return out;
}

FrequencySweepSpec parse_frequency_sweep(const json& value) {
    Block b(value, "frequency_sweep");
    FrequencySweepSpec out;
    out.start = b.positive("start", Kind::frequency, "kHz");
    out.end = b.positive("end", Kind::frequency, "kHz");
    out.points = b.count("points").value_or(out.points);
    b.finish();
    if (!(out.end > out.start)) fail("frequency_sweep.end_kHz", "must exceed start_kHz");
    return out;
}

TransientSpec parse_transient(const json& value) {
    Block b(value, "transient");
    TransientSpec out;
    out.duration = b.positive("duration", Kind::time, "ms");
    out.time_step = b.optional_positive("time_step", Kind::time, "ns");
    out.initial_displacement = b.quantity("initial_displacement", Kind::length, "nm").value_or(0.0);
    out.initial_velocity = b.quantity("initial_velocity", Kind::velocity, "m_s").value_or(0.0);
    out.evaluation_frequency = b.optional_positive("evaluation_frequency", Kind::frequency, "kHz");
    b.finish();
    return out;
}

}  // namespace

FluidMedium parse_fluid(const json& value, const std::string& path) {
    if (value.is_string()) {
        return build(path, [&] { return fluid_preset(value.get<std::string>()); });
    }
    Block b(value, path);
    const auto name = b.text("name").value_or("custom");
    const double eps = b.required_plain("eps");
    const double rho = b.required("density", Kind::density, "kg_m3");
    const double eta = b.required("viscosity", Kind::viscosity, "Pa_s");
    const auto fc = b.optional_positive("screening_frequency", Kind::frequency, "kHz");
    b.finish();
    return build(path, [&] { return FluidMedium(name, eps, rho, eta, fc); });
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError(fmt::format("format must be csv or json (got '{}')", text));
}

RunConfig parse_config(const json& doc) {
    Block root(doc, "");
    auto section = [&](std::string_view key) -> const json& {
        const json* v = root.child(key);
        if (v == nullptr) fail(std::string(key), "missing block");
        return *v;
    };

    const ActuatorGeometry geometry = parse_geometry(section("geometry"));
    const json* dielectric = root.child("dielectric");
    const DielectricStack stack = dielectric ? parse_dielectric(*dielectric) : DielectricStack::bare();
    const StructuralMaterial material = parse_material(section("material"));
    const SpringSpec spring = parse_spring(section("spring"));
    const FluidMedium fluid = parse_fluid(section("fluid"), "fluid");

    RunConfig cfg{.geometry = geometry,
                  .dielectric = stack,
                  .material = material,
                  .spring = spring,
                  .fluid = fluid};
    if (const json* d = root.child("drive")) cfg.drive = parse_drive(*d);
    if (const json* s = root.child("squeeze_film")) cfg.squeeze = parse_squeeze(*s);
    if (const json* d = root.child("dynamics")) {
        Block b(*d, "dynamics");
        cfg.dynamics_evaluation_frequency =
            b.optional_positive("evaluation_frequency", Kind::frequency, "kHz");
        b.finish();
    }
    if (const json* s = root.child("static_sweep")) cfg.static_sweep = parse_static_sweep(*s);
    if (const json* s = root.child("frequency_sweep")) cfg.frequency_sweep = parse_frequency_sweep(*s);
    if (const json* s = root.child("transient")) cfg.transient = parse_transient(*s);
    if (const json* s = root.child("solver")) {
        Block b(*s, "solver");
        cfg.workers = b.count("workers").value_or(1);
        if (const auto tol = b.optional_positive("displacement_tolerance", Kind::length, "m")) {
            cfg.tolerances.displacement = *tol;
        }
        if (const auto r = b.plain_number("residual_tolerance")) {
            if (!(*r > 0.0)) fail("solver.residual_tolerance", "must be positive");
            cfg.tolerances.residual = *r;
        }
        if (const auto it = b.count("max_iterations")) {
            cfg.tolerances.max_iterations = static_cast<int>(*it);
        }
        b.finish();
    }
    if (const json* o = root.child("output")) {
        Block b(*o, "output");
        if (const auto p = b.text("path")) cfg.output_path = *p;
        if (const auto f = b.text("format")) {
            try {
                cfg.output_format = parse_format(*f);
            } catch (const ConfigError& e) {
                fail("output.format", e.what());
            }
        }
        b.finish();
    }
    root.finish();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("{}: cannot open config file", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    json doc;
    try {
        doc = json::parse(text.str(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
    return parse_config(doc);
}

SpringModel resolve_spring(const RunConfig& config) {
    return std::visit(
        [&](const auto& spec) -> SpringModel {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, DirectSpring>) {
                return SpringModel(spec.k);
            } else if constexpr (std::is_same_v<T, CalibratedSpring>) {
                const ParallelPlate plate{config.geometry, config.dielectric,
                                          spec.fluid.value_or(config.fluid)};
                try {
                    return calibrate_stiffness(spec.observation, spec.voltage, plate);
                } catch (const InvalidInput& e) {
                    throw ConfigError(fmt::format("spring.calibration: {}", e.what()));
                }
            } else if constexpr (std::is_same_v<T, BeamSpring>) {
                return beam_stiffness(config.geometry, config.material, spec.load);
            } else {
                return modal_stiffness(config.geometry, config.material);
            }
        },
        config.spring);
}

}  // namespace fluidact::cli
