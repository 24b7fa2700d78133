#include "commands.hpp"

#include "output.hpp"

#include "fluidact/dynamics.hpp"
#include "fluidact/error.hpp"
#include "fluidact/oracle.hpp"
#include "fluidact/response.hpp"
#include "fluidact/statics.hpp"
#include "fluidact/transient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace fluidact::cli {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

OutputFormat format_or(const Options& options, const RunConfig& config, OutputFormat fallback) {
    if (options.format) return *options.format;
    return config.output_format.value_or(fallback);
}

std::string render_scalar(const json& doc, OutputFormat format) {
    return format == OutputFormat::json ? json_text(doc) : json_to_key_value_csv(doc);
}

SpringModel dynamic_spring(const RunConfig& config, const Options& options) {
    return options.stiffness == StiffnessChoice::modal
               ? modal_stiffness(config.geometry, config.material)
               : resolve_spring(config);
}

void placeholder_warning(const RunConfig& config, CommandOutput& out) {
    if (config.fluid.non_paper_defaults()) {
        out.warnings.push_back(fmt::format(
            "{}: density and viscosity are placeholder values, not measured data",
            config.fluid.name()));
    }
}

void screening_warning(const RunConfig& config, CommandOutput& out) {
    if (screening_check(config.drive, config.fluid) == ScreeningStatus::warning) {
        out.warnings.push_back(fmt::format(
            "{} screens the electrodes below {:.6g} Hz; drive AC above that frequency",
            config.fluid.name(), config.fluid.screening_frequency().value_or(0.0)));
    }
    placeholder_warning(config, out);
}

json statics_summary(const RunConfig& config, const SpringModel& spring) {
    const auto plate = config.plate();
    const double d = effective_dielectric_thickness(plate.stack, plate.fluid);
    const auto v_pi = pull_in_voltage(plate, spring);
    return {
        {"fluid", config.fluid.name()},
        {"spring_N_m", spring.k()},
        {"spring_source", std::string(to_string(spring.source()))},
        {"gap_m", plate.geometry.gap()},
        {"effective_dielectric_thickness_m", d},
        {"condition2", stability_condition(plate)},
        {"stable_over_full_gap", !v_pi.has_value()},
        {"pull_in_V", optional_number(v_pi)},
        {"pull_in_z_m", optional_number(pull_in_displacement(plate))},
        {"close_V", gap_close_voltage(plate, spring)},
    };
}

}  // namespace

RunConfig with_overrides(RunConfig config, const Options& options) {
    if (options.fluid) config.fluid = parse_fluid(json(*options.fluid), "--fluid");
    if (options.squeeze_film) config.squeeze.enabled = true;
    return config;
}

CommandOutput check_stability(const RunConfig& config, const Options& options) {
    const auto spring = resolve_spring(config);
    const json doc = statics_summary(config, spring);
    CommandOutput out;
    out.data = render_scalar(doc, format_or(options, config, OutputFormat::json));
    out.summary.push_back(
        fmt::format("stable over full gap: {}", doc["stable_over_full_gap"].get<bool>()));
    if (doc["pull_in_V"].is_null()) {
        out.summary.push_back(fmt::format("gap closes stably at {:.4g} V", doc["close_V"].get<double>()));
    } else {
        out.summary.push_back(fmt::format("pull-in at {:.4g} V, z = {:.4g} m",
                                          doc["pull_in_V"].get<double>(),
                                          doc["pull_in_z_m"].get<double>()));
    }
    return out;
}

CommandOutput pull_in(const RunConfig& config, const Options& options) {
    const auto spring = resolve_spring(config);
    json doc = statics_summary(config, spring);
    doc["pull_in_V_numeric"] =
        optional_number(pull_in_voltage_numeric(config.plate(), spring, config.tolerances));
    CommandOutput out;
    out.data = render_scalar(doc, format_or(options, config, OutputFormat::json));
    if (doc["pull_in_V"].is_null()) {
        out.summary.push_back(fmt::format("no pull-in (d > 2g); gap closes at {:.4g} V",
                                          doc["close_V"].get<double>()));
    } else {
        out.summary.push_back(fmt::format("pull-in voltage {:.4g} V at z = {:.4g} m",
                                          doc["pull_in_V"].get<double>(),
                                          doc["pull_in_z_m"].get<double>()));
    }
    return out;
}

CommandOutput dynamics(const RunConfig& config, const Options& options) {
    const auto& geom = config.geometry;
    const auto p =
        resonance_in_fluid(geom, config.material, config.fluid, config.dynamics_evaluation_frequency);
    const double omega = kTwoPi * p.evaluation_frequency;
    json doc{
        {"fluid", config.fluid.name()},
        {"f_vacuum_Hz", p.f_vacuum},
        {"f_natural_Hz", p.f_natural},
        {"f_peak_Hz", p.f_peak},
        {"Q", std::isinf(p.q_factor) ? json(nullptr) : json(p.q_factor)},
        {"Q_infinite", std::isinf(p.q_factor)},
        {"effective_mass_kg", p.effective_mass},
        {"damping_kg_s", p.damping},
        {"evaluation_frequency_Hz", p.evaluation_frequency},
        {"modal_stiffness_N_m", modal_stiffness(geom, config.material).k()},
        {"fixed_point_iterations", p.iterations},
        {"used_bisection", p.used_bisection},
    };
    if (config.fluid.is_vacuum()) {
        doc["boundary_layer_m"] = nullptr;
        doc["gamma_real"] = nullptr;
        doc["gamma_imag"] = nullptr;
    } else {
        const auto h = hydrodynamic_function(omega, geom, config.fluid);
        doc["boundary_layer_m"] = boundary_layer_thickness(omega, config.fluid);
        doc["gamma_real"] = h.real;
        doc["gamma_imag"] = h.imag;
    }
    if (config.squeeze.enabled) {
        doc["squeeze_film_damping_kg_s"] = squeeze_film_coefficient(geom, config.fluid);
    }
    CommandOutput out;
    placeholder_warning(config, out);
    out.data = render_scalar(doc, format_or(options, config, OutputFormat::json));
    out.summary.push_back(fmt::format(
        "{}: f_natural = {:.5g} Hz, f_peak = {:.5g} Hz, Q = {}", config.fluid.name(), p.f_natural,
        p.f_peak, std::isinf(p.q_factor) ? std::string("infinite") : fmt::format("{:.4g}", p.q_factor)));
    return out;
}

CommandOutput static_sweep(const RunConfig& config, const Options& options) {
    if (!config.static_sweep) throw ConfigError("static_sweep: missing block (required by static-sweep)");
    const auto& spec = *config.static_sweep;
    const auto spring = resolve_spring(config);
    const std::size_t points = options.points.value_or(spec.points);
    const auto rows = fluidact::static_sweep(config.plate(), spring, spec.start, spec.end, points,
                                             config.workers, config.tolerances);

    CommandOutput out;
    if (format_or(options, config, OutputFormat::csv) == OutputFormat::csv) {
        CsvTable table({"voltage_V", "displacement_m", "stable", "pulled_in"});
        for (const auto& r : rows) {
            table.add({csv_number(r.voltage), csv_number(r.displacement), csv_bool(r.stable),
                       csv_bool(r.pulled_in)});
        }
        out.data = table.str();
    } else {
        json doc = statics_summary(config, spring);
        json list = json::array();
        for (const auto& r : rows) {
            list.push_back({{"voltage_V", r.voltage},
                            {"displacement_m", r.displacement},
                            {"stable", r.stable},
                            {"pulled_in", r.pulled_in}});
        }
        doc["rows"] = std::move(list);
        out.data = json_text(doc);
    }
    const auto first_pull =
        std::find_if(rows.begin(), rows.end(), [](const StaticSweepRow& r) { return r.pulled_in; });
    out.summary.push_back(
        first_pull == rows.end()
            ? fmt::format("{} points, no pull-in", rows.size())
            : fmt::format("{} points, pulled in from {:.4g} V", rows.size(), first_pull->voltage));
    return out;
}

CommandOutput freq_response(const RunConfig& config, const Options& options) {
    if (!config.frequency_sweep) {
        throw ConfigError("frequency_sweep: missing block (required by freq-response)");
    }
    const auto& spec = *config.frequency_sweep;
    const double voltage = config.drive.voltage();
    if (!(voltage > 0.0)) throw ConfigError("drive: freq-response needs a non-zero drive voltage");
    const auto spring = dynamic_spring(config, options);
    const auto grid = linear_frequency_grid(spec.start, spec.end, options.points.value_or(spec.points));

    auto sweep = [&](const RunConfig& cfg) {
        const auto plate = cfg.plate();
        const auto force = decompose_drive_force(cfg.drive, plate);
        ResponseOptions opts;
        opts.squeeze = cfg.squeeze;
        opts.workers = cfg.workers;
        if (options.softened) {
            const auto roots = solve_equilibria(plate, spring, voltage, cfg.tolerances);
            if (roots.empty() || roots.front().stability != Stability::stable) {
                throw ConfigError("drive: no stable operating point for --softened-k");
            }
            opts.electrostatic_gradient =
                electrostatic_stiffness(plate, roots.front().displacement, voltage);
        }
        return std::pair{force.harmonic_amplitude,
                         harmonic_response(grid, force.harmonic_amplitude, cfg.geometry,
                                           cfg.material, cfg.fluid, spring, opts)};
    };

    const auto [force, points] = sweep(config);
    std::vector<ResponsePoint> normalized;
    std::string reference_name = config.fluid.name();
    if (options.normalize_to) {
        RunConfig ref = config;
        ref.fluid = parse_fluid(json(*options.normalize_to), "--normalize-to");
        reference_name = ref.fluid.name();
        normalized = normalize_response(points, sweep(ref).second);
    } else {
        normalized = normalize_response(points, points);
    }
    const auto peak = peak_response(points);

    CommandOutput out;
    placeholder_warning(config, out);
    if (format_or(options, config, OutputFormat::csv) == OutputFormat::csv) {
        CsvTable table({"frequency_Hz", "amplitude_m", "amplitude_norm", "phase_rad"});
        for (std::size_t i = 0; i < points.size(); ++i) {
            table.add({csv_number(points[i].frequency), csv_number(points[i].amplitude),
                       csv_number(normalized[i].amplitude), csv_number(points[i].phase)});
        }
        out.data = table.str();
    } else {
        const bool ac = config.drive.kind() == DriveKind::ac;
        json list = json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            list.push_back({{"frequency_Hz", points[i].frequency},
                            {"drive_frequency_Hz", ac ? 0.5 * points[i].frequency : 0.0},
                            {"amplitude_m", points[i].amplitude},
                            {"amplitude_norm", normalized[i].amplitude},
                            {"phase_rad", points[i].phase}});
        }
        out.data = json_text({{"fluid", config.fluid.name()},
                              {"normalized_to", reference_name},
                              {"force_amplitude_N", force},
                              {"stiffness_N_m", spring.k()},
                              {"stiffness_source", std::string(to_string(spring.source()))},
                              {"peak_frequency_Hz", peak.frequency},
                              {"peak_amplitude_m", peak.amplitude},
                              {"points", std::move(list)}});
    }
    out.summary.push_back(fmt::format("{}: peak {:.4g} m at {:.5g} Hz (mechanical frequency)",
                                      config.fluid.name(), peak.amplitude, peak.frequency));
    return out;
}

CommandOutput transient(const RunConfig& config, const Options& options) {
    if (!config.transient) throw ConfigError("transient: missing block (required by transient)");
    const auto& spec = *config.transient;
    const auto spring = dynamic_spring(config, options);

    TransientConfig tc;
    tc.duration = spec.duration;
    tc.initial_displacement = spec.initial_displacement;
    tc.initial_velocity = spec.initial_velocity;
    tc.evaluation_frequency = spec.evaluation_frequency;
    tc.squeeze = config.squeeze;
    if (spec.time_step) {
        tc.time_step = *spec.time_step;
    } else {
        // The vacuum frequency bounds the loaded one from above.
        const double f_bound =
            std::sqrt(spring.k() / structural_mass(config.geometry, config.material)) / kTwoPi;
        const double f_force =
            config.drive.kind() == DriveKind::ac ? 2.0 * config.drive.frequency() : 0.0;
        tc.time_step = 1.0 / (40.0 * std::max(f_bound, f_force));
    }
    if (options.points) {
        tc.time_step = spec.duration / static_cast<double>(*options.points);
    }

    const auto result = simulate(config.drive, config.plate(), config.material, spring, tc);
    CommandOutput out;
    screening_warning(config, out);

    std::optional<EnvelopeResult> env;
    if (!result.contact_time) {
        try {
            env = envelope(result);
        } catch (const InvalidInput& e) {
            if (options.envelope) throw;
            out.warnings.push_back(fmt::format("no envelope: {}", e.what()));
        }
    } else if (options.envelope) {
        throw ConvergenceError(
            fmt::format("contact at {:.6g} s; no envelope for a pulled-in trace", *result.contact_time));
    }

    if (format_or(options, config, OutputFormat::csv) == OutputFormat::csv) {
        if (options.envelope) {
            CsvTable table({"time_s", "envelope_m"});
            for (std::size_t i = 0; i < env->times.size(); ++i) {
                table.add({csv_number(env->times[i]), csv_number(env->envelope[i])});
            }
            out.data = table.str();
        } else {
            CsvTable table({"time_s", "displacement_m", "velocity_m_s"});
            for (const auto& s : result.samples) {
                table.add({csv_number(s.time), csv_number(s.displacement), csv_number(s.velocity)});
            }
            out.data = table.str();
        }
    } else {
        json doc{
            {"fluid", config.fluid.name()},
            {"stiffness_N_m", spring.k()},
            {"time_step_s", tc.time_step},
            {"contact_time_s", optional_number(result.contact_time)},
            {"effective_mass_kg", result.effective_mass},
            {"damping_kg_s", result.damping},
            {"evaluation_frequency_Hz", result.evaluation_frequency},
            {"force_frequency_Hz", result.force_frequency},
            {"natural_frequency_Hz", result.natural_frequency},
            {"expected_tau_s", result.damping > 0.0
                                   ? json(2.0 * result.effective_mass / result.damping)
                                   : json(nullptr)},
        };
        if (env) {
            doc["tau_s"] = env->tau;
            doc["settling_time_99_s"] = std::isfinite(env->settling_time_99)
                                            ? json(env->settling_time_99)
                                            : json(nullptr);
            doc["final_amplitude_m"] = env->final_amplitude;
            doc["rising"] = env->rising;
            json e = json::array();
            for (std::size_t i = 0; i < env->times.size(); ++i) {
                e.push_back({{"time_s", env->times[i]}, {"envelope_m", env->envelope[i]}});
            }
            doc["envelope"] = std::move(e);
        }
        if (!options.envelope) {
            json samples = json::array();
            for (const auto& s : result.samples) {
                samples.push_back({{"time_s", s.time},
                                   {"displacement_m", s.displacement},
                                   {"velocity_m_s", s.velocity}});
            }
            doc["samples"] = std::move(samples);
        }
        out.data = json_text(doc);
    }

    if (result.contact_time) {
        out.summary.push_back(fmt::format("contact at t = {:.6g} s", *result.contact_time));
    } else {
        out.summary.push_back(fmt::format("no contact over {:.6g} s", spec.duration));
    }
    if (env && env->tau > 0.0) {
        out.summary.push_back(fmt::format("envelope tau = {:.4g} s, 99% settling at {:.4g} s",
                                          env->tau, env->settling_time_99));
    }
    return out;
}

CommandOutput oracle_scan(const RunConfig& config, const Options& options) {
    const auto spring = resolve_spring(config);
    const double voltage = options.voltage.value_or(equivalent_dc_voltage(config.drive));
    const std::size_t n = options.points.value_or(10000);
    const auto plate = config.plate();
    const auto scan = oracle::scan_potential(plate, spring, voltage, n);
    const auto roots = solve_equilibria(plate, spring, voltage, config.tolerances);

    json solver = json::array();
    for (const auto& r : roots) {
        solver.push_back({{"displacement_m", r.displacement},
                          {"stable", r.stability == Stability::stable},
                          {"residual_N", r.residual}});
    }
    const json doc{{"voltage_V", voltage},
                   {"grid_points", n},
                   {"spacing_m", scan.spacing},
                   {"grid_minima_m", scan.minima},
                   {"grid_maxima_m", scan.maxima},
                   {"solver", std::move(solver)}};
    CommandOutput out;
    out.data = json_text(doc);
    out.summary.push_back(fmt::format("grid: {} minima, {} maxima; solver: {} roots",
                                      scan.minima.size(), scan.maxima.size(), roots.size()));
    return out;
}

}  // namespace fluidact::cli
