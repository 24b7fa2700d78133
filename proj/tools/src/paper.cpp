#include "paper.hpp"

#include "output.hpp"
#include "reference_data.hpp"

#include "fluidact/dynamics.hpp"
#include "fluidact/response.hpp"
#include "fluidact/statics.hpp"
#include "fluidact/transient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <fmt/format.h>

namespace fluidact::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Computed {
    double value;
    std::optional<double> reference;  // overrides the file value (derived references)
};

RunConfig in_fluid(const RunConfig& base, const char* fluid) {
    RunConfig cfg = base;
    cfg.fluid = fluid_preset(fluid);
    return cfg;
}

std::string response_csv(const std::vector<ResponsePoint>& points,
                         const std::vector<ResponsePoint>& normalized) {
    CsvTable table({"frequency_Hz", "amplitude_m", "amplitude_norm", "phase_rad"});
    for (std::size_t i = 0; i < points.size(); ++i) {
        table.add({csv_number(points[i].frequency), csv_number(points[i].amplitude),
                   csv_number(normalized[i].amplitude), csv_number(points[i].phase)});
    }
    return table.str();
}

// Resonant ring-up from rest: AC drive at half the natural frequency, so the
// force oscillates at f0. Returns the fitted and the expected 2 m*/c.
std::pair<double, double> ring_up(const RunConfig& cfg, const SpringModel& spring, double periods,
                                  PaperReport& report, const std::string& tag) {
    const auto plate = cfg.plate();
    const double f0 = natural_frequency(spring, plate.geometry, cfg.material, plate.fluid);
    TransientConfig tc;
    tc.duration = periods / f0;
    tc.time_step = 1.0 / (40.0 * f0);
    const auto result = simulate(DriveSignal::ac(0.5, 0.5 * f0), plate, cfg.material, spring, tc);
    if (result.contact_time) return {kNaN, kNaN};
    const auto env = envelope(result);

    CsvTable trace({"time_s", "displacement_m", "velocity_m_s"});
    for (const auto& s : result.samples) {
        trace.add({csv_number(s.time), csv_number(s.displacement), csv_number(s.velocity)});
    }
    CsvTable envelope_table({"time_s", "envelope_m"});
    for (std::size_t i = 0; i < env.times.size(); ++i) {
        envelope_table.add({csv_number(env.times[i]), csv_number(env.envelope[i])});
    }
    report.files.emplace_back(fmt::format("fig7_{}_transient.csv", tag), trace.str());
    report.files.emplace_back(fmt::format("fig7_{}_envelope.csv", tag), envelope_table.str());
    return {env.tau, 2.0 * result.effective_mass / result.damping};
}

std::map<std::string, Computed> compute(const RunConfig& base, std::size_t workers,
                                        PaperReport& report) {
    std::map<std::string, Computed> out;
    const auto spring = resolve_spring(base);

    // Statics: one spring constant for every medium.
    const auto air = in_fluid(base, "air").plate();
    const auto water = in_fluid(base, "tap-water").plate();
    const auto ipa = in_fluid(base, "ipa").plate();
    out["air.pull_in_voltage"] = {pull_in_voltage(air, spring).value_or(kNaN), {}};
    out["water.close_voltage"] = {gap_close_voltage(water, spring), {}};
    out["ipa.pull_in_voltage"] = {pull_in_voltage(ipa, spring).value_or(kNaN), {}};
    out["air.pull_in_occurs"] = {pull_in_voltage(air, spring) ? 1.0 : 0.0, {}};
    out["ipa.pull_in_occurs"] = {pull_in_voltage(ipa, spring) ? 1.0 : 0.0, {}};
    out["water.pull_in_occurs"] = {pull_in_voltage(water, spring) ? 1.0 : 0.0, {}};
    const ParallelPlate bare{base.geometry, DielectricStack::bare(), fluid_preset("air")};
    out["bare.pull_in_fraction"] = {*pull_in_displacement(bare) / base.geometry.gap(), {}};

    // Dynamics.
    const auto& geom = base.geometry;
    const auto& mat = base.material;
    const auto vac = resonance_in_fluid(geom, mat, fluid_preset("vacuum"));
    out["vacuum.frequency"] = {vac.f_vacuum, {}};
    out["vacuum.effective_mass"] = {vac.effective_mass, {}};
    out["vacuum.q_infinite"] = {std::isinf(vac.q_factor) ? 1.0 : 0.0, {}};
    const auto dyn_air = resonance_in_fluid(geom, mat, fluid_preset("air"));
    out["air.frequency"] = {dyn_air.f_natural, {}};
    out["air.q_factor"] = {dyn_air.q_factor, {}};
    out["air.effective_mass"] = {dyn_air.effective_mass, {}};
    out["air.damping"] = {dyn_air.damping, {}};
    const auto dyn_water = resonance_in_fluid(geom, mat, fluid_preset("tap-water"));
    out["water.peak_frequency"] = {dyn_water.f_peak, {}};
    out["water.q_factor"] = {dyn_water.q_factor, {}};
    out["water.effective_mass"] = {dyn_water.effective_mass, {}};
    out["water.damping"] = {dyn_water.damping, {}};

    // Frequency response (Figs. 4-6), driven at 0.5 V rms with the modal spring.
    const auto modal = modal_stiffness(geom, mat);
    ResponseOptions opts;
    opts.squeeze = base.squeeze;
    opts.workers = workers;
    auto sweep = [&](const ParallelPlate& plate, const std::vector<double>& grid) {
        const double force = decompose_drive_force(DriveSignal::ac(0.5, 1.0), plate).harmonic_amplitude;
        return harmonic_response(grid, force, geom, mat, plate.fluid, modal, opts);
    };
    const auto wide = linear_frequency_grid(1e3, 60e3, 1181);
    const auto wide_air = sweep(air, wide);
    const auto wide_water = sweep(water, wide);
    report.files.emplace_back("fig4_air.csv", response_csv(wide_air, normalize_response(wide_air, wide_air)));
    report.files.emplace_back("fig4_water.csv",
                              response_csv(wide_water, normalize_response(wide_water, wide_air)));
    const double f_air = peak_response(wide_air).frequency;
    const double f_water = peak_response(wide_water).frequency;
    out["peak_shift"] = {(f_air - f_water) / f_air, {}};

    const auto narrow_air = sweep(air, linear_frequency_grid(41e3, 44e3, 601));
    report.files.emplace_back("fig5_air.csv",
                              response_csv(narrow_air, normalize_response(narrow_air, narrow_air)));
    const auto narrow_water = sweep(water, linear_frequency_grid(2e3, 30e3, 561));
    report.files.emplace_back("fig6_water.csv",
                              response_csv(narrow_water, normalize_response(narrow_water, narrow_water)));

    // Transient envelopes (Fig. 7).
    const auto [tau_air, expected_air] = ring_up(in_fluid(base, "air"), modal, 600.0, report, "air");
    out["air.ring_time_constant"] = {tau_air, expected_air};
    const auto [tau_water, expected_water] =
        ring_up(in_fluid(base, "tap-water"), modal, 100.0, report, "water");
    out["water.ring_time_constant"] = {tau_water, expected_water};
    return out;
}

}  // namespace

bool PaperReport::pass() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

const json& reference_data() {
    static const json data = json::parse(kReferenceData);
    return data;
}

RunConfig reference_config() { return parse_config(reference_data().at("cantilever")); }

PaperReport reproduce_paper(const RunConfig& config, std::size_t workers) {
    PaperReport report;
    const auto& data = reference_data();
    report.data_version = data.at("version").get<int>();
    const auto computed = compute(config, workers, report);

    for (const auto& spec : data.at("rows")) {
        ReportRow row;
        row.id = spec.at("id").get<std::string>();
        row.quantity = spec.at("quantity").get<std::string>();
        row.unit = spec.at("unit").get<std::string>();
        row.source = spec.at("source").get<std::string>();
        const auto it = computed.find(row.id);
        if (it == computed.end()) {
            throw ConfigError(fmt::format("reference data row '{}' has no computation", row.id));
        }
        row.computed = it->second.value;
        if (spec.contains("nominal")) row.nominal = spec.at("nominal").get<double>();
        row.reference = it->second.reference ? *it->second.reference : spec.at("reference").get<double>();
        row.relative_error = row.reference != 0.0
                                 ? std::abs(row.computed - row.reference) / std::abs(row.reference)
                                 : std::abs(row.computed - row.reference);
        if (spec.contains("range")) {
            row.range = {spec.at("range")[0].get<double>(), spec.at("range")[1].get<double>()};
            row.pass = row.computed >= row.range->first && row.computed <= row.range->second;
        } else {
            row.tolerance = spec.at("tolerance").get<double>();
            row.pass = row.unit == "bool" ? row.computed == row.reference
                                          : row.relative_error <= *row.tolerance;
        }
        if (std::isnan(row.computed)) row.pass = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string report_table(const PaperReport& report) {
    std::string out = fmt::format("{:<38} {:>13} {:>13} {:>10} {:>12}  {}\n", "quantity", "reference",
                                  "computed", "rel.err", "tolerance", "status");
    for (const auto& r : report.rows) {
        const std::string tol = r.range ? fmt::format("[{:g},{:g}]", r.range->first, r.range->second)
                                        : fmt::format("{:g}", *r.tolerance);
        std::string quantity = fmt::format("{} [{}]", r.quantity, r.unit);
        fmt::format_to(std::back_inserter(out), "{:<38} {:>13.6g} {:>13.6g} {:>10.2e} {:>12}  {}\n",
                       quantity, r.reference, r.computed, r.relative_error, tol,
                       r.pass ? "PASS" : "FAIL");
        if (r.nominal) {
            fmt::format_to(std::back_inserter(out), "{:<38} {:>13.6g}  (published)\n", "", *r.nominal);
        }
    }
    fmt::format_to(std::back_inserter(out), "overall: {} (reference data v{})\n",
                   report.pass() ? "PASS" : "FAIL", report.data_version);
    return out;
}

json report_json(const PaperReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row{{"id", r.id},
                 {"quantity", r.quantity},
                 {"unit", r.unit},
                 {"source", r.source},
                 {"reference", r.reference},
                 {"computed", r.computed},
                 {"relative_error", r.relative_error},
                 {"pass", r.pass}};
        if (r.tolerance) row["tolerance"] = *r.tolerance;
        if (r.range) row["range"] = {r.range->first, r.range->second};
        if (r.nominal) row["published"] = *r.nominal;
        rows.push_back(std::move(row));
    }
    return {{"reference_data_version", report.data_version}, {"pass", report.pass()}, {"rows", rows}};
}

std::string report_csv(const PaperReport& report) {
    CsvTable table({"id", "reference", "computed", "relative_error", "tolerance", "pass"});
    for (const auto& r : report.rows) {
        const std::string tol = r.range ? fmt::format("{:g}..{:g}", r.range->first, r.range->second)
                                        : csv_number(*r.tolerance);
        table.add({r.id, csv_number(r.reference), csv_number(r.computed),
                   csv_number(r.relative_error), tol, csv_bool(r.pass)});
    }
    return table.str();
}

}  // namespace fluidact::cli
