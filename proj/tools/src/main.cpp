#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "paper.hpp"

#include "fluidact/error.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include <fmt/format.h>

namespace {

using namespace fluidact;
using namespace fluidact::cli;

enum ExitCode { kOk = 0, kConfigError = 1, kNonConvergence = 2, kReproduceFailed = 3 };

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    std::string fluid;
    std::string stiffness = "modal";
    std::string normalize_to;
    std::size_t points = 0;
    double voltage = -1.0;
    bool squeeze_film = false;
    bool quiet = false;
    bool envelope = false;
    bool softened = false;
    std::size_t workers = 0;
};

Options to_options(const Flags& f) {
    Options o;
    if (!f.fluid.empty()) o.fluid = f.fluid;
    o.squeeze_film = f.squeeze_film;
    if (f.points > 0) o.points = f.points;
    if (!f.format.empty()) o.format = parse_format(f.format);
    o.stiffness = f.stiffness == "config" ? StiffnessChoice::config : StiffnessChoice::modal;
    o.envelope = f.envelope;
    o.softened = f.softened;
    if (!f.normalize_to.empty()) o.normalize_to = f.normalize_to;
    if (f.voltage >= 0.0) o.voltage = f.voltage;
    return o;
}

void emit(const CommandOutput& out, const std::optional<std::filesystem::path>& path, bool quiet) {
    if (!quiet) {
        for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
    }
    if (path) {
        write_file(*path, out.data);
        if (!quiet) {
            for (const auto& line : out.summary) std::cout << line << '\n';
        }
    } else {
        std::cout << out.data;
        if (!quiet) {
            for (const auto& line : out.summary) std::cerr << line << '\n';
        }
    }
}

int run_command(const std::string& name, const Flags& flags) {
    using Handler = std::function<CommandOutput(const RunConfig&, const Options&)>;
    static const std::map<std::string, Handler> handlers{
        {"check-stability", cli::check_stability}, {"pull-in", cli::pull_in},
        {"dynamics", cli::dynamics},               {"static-sweep", cli::static_sweep},
        {"freq-response", cli::freq_response},     {"transient", cli::transient},
        {"oracle-scan", cli::oracle_scan},
    };
    const Options options = to_options(flags);
    RunConfig config = with_overrides(load_config(flags.config), options);
    if (flags.workers > 0) config.workers = flags.workers;
    const auto out = handlers.at(name)(config, options);
    std::optional<std::filesystem::path> path = config.output_path;
    if (!flags.out.empty()) path = flags.out;
    emit(out, path, flags.quiet);
    return out.exit_code;
}

int run_reproduce(const Flags& flags) {
    const Options options = to_options(flags);
    RunConfig config = flags.config.empty() ? reference_config() : load_config(flags.config);
    Options squeeze_only;
    squeeze_only.squeeze_film = options.squeeze_film;
    config = with_overrides(config, squeeze_only);
    const auto report = reproduce_paper(config, flags.workers > 0 ? flags.workers : 1);

    if (!flags.out.empty()) {
        const std::filesystem::path dir = flags.out;
        write_file(dir / "report.json", json_text(report_json(report)));
        write_file(dir / "report.csv", report_csv(report));
        for (const auto& [file, text] : report.files) write_file(dir / file, text);
    }
    if (options.format == OutputFormat::json) {
        std::cout << json_text(report_json(report));
    } else if (options.format == OutputFormat::csv) {
        std::cout << report_csv(report);
    } else if (!flags.quiet) {
        std::cout << report_table(report);
    }
    if (!report.pass()) {
        std::cerr << "reproduce-paper: failing rows:";
        for (const auto& r : report.rows) {
            if (!r.pass) std::cerr << ' ' << r.id;
        }
        std::cerr << '\n';
        return kReproduceFailed;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electrostatic parallel-plate actuators in fluids: statics, resonance, response "
                 "and transients"};
    app.require_subcommand(1);
    Flags flags;

    auto common = [&](CLI::App* sub, bool config_required) {
        auto* cfg = sub->add_option("--config", flags.config, "JSON run configuration");
        if (config_required) cfg->required()->check(CLI::ExistingFile);
        else cfg->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "Output file (directory for reproduce-paper)");
        sub->add_option("--format", flags.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--squeeze-film", flags.squeeze_film, "Add the squeeze-film damping term");
        sub->add_flag("--quiet", flags.quiet, "Suppress summaries and warnings");
        sub->add_option("--workers", flags.workers, "Worker threads for sweeps")
            ->check(CLI::PositiveNumber);
    };
    auto with_fluid = [&](CLI::App* sub) {
        sub->add_option("--fluid", flags.fluid, "Fluid preset overriding the config")
            ->check(CLI::IsMember({"vacuum", "air", "ipa", "tap-water"}));
    };

    auto* stability = app.add_subcommand("check-stability", "Classify the static travel range");
    common(stability, true);
    with_fluid(stability);

    auto* sweep = app.add_subcommand("static-sweep", "Equilibrium displacement versus voltage");
    common(sweep, true);
    with_fluid(sweep);
    sweep->add_option("--points", flags.points, "Number of voltages")->check(CLI::PositiveNumber);

    auto* pull = app.add_subcommand("pull-in", "Pull-in voltage and displacement");
    common(pull, true);
    with_fluid(pull);

    auto* dyn = app.add_subcommand("dynamics", "Resonance, Q, effective mass and damping");
    common(dyn, true);
    with_fluid(dyn);

    auto* freq = app.add_subcommand("freq-response", "Harmonic amplitude and phase sweep");
    common(freq, true);
    with_fluid(freq);
    freq->add_option("--points", flags.points, "Number of frequencies")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}));
    freq->add_option("--stiffness", flags.stiffness,
                     "modal: k from the vacuum resonance; config: the spring block")
        ->check(CLI::IsMember({"modal", "config"}));
    freq->add_option("--normalize-to", flags.normalize_to,
                     "Normalize amplitudes to the peak in this fluid")
        ->check(CLI::IsMember({"vacuum", "air", "ipa", "tap-water"}));
    freq->add_flag("--softened-k", flags.softened,
                   "Subtract the electrostatic stiffness at the DC operating point");

    auto* trans = app.add_subcommand("transient", "Time-domain response (RK4)");
    common(trans, true);
    with_fluid(trans);
    trans->add_option("--points", flags.points, "Number of time steps")->check(CLI::PositiveNumber);
    trans->add_option("--stiffness", flags.stiffness,
                      "modal: k from the vacuum resonance; config: the spring block")
        ->check(CLI::IsMember({"modal", "config"}));
    trans->add_flag("--envelope", flags.envelope, "Emit the oscillation envelope instead of the trace");

    auto* paper = app.add_subcommand("reproduce-paper",
                                     "Recompute the reference tables and figure data");
    common(paper, false);

    auto* scan = app.add_subcommand("oracle-scan", "Grid scan of the potential energy");
    scan->group("");  // hidden
    common(scan, true);
    with_fluid(scan);
    scan->add_option("--points", flags.points, "Grid points (>= 1000)");
    scan->add_option("--voltage", flags.voltage, "Voltage in V (default: drive level)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        if (chosen == paper) return run_reproduce(flags);
        return run_command(chosen->get_name(), flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfigError;
    } catch (const ConvergenceError& e) {
        std::cerr << "did not converge: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
