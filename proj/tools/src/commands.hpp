#pragma once

#include "config.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fluidact::cli {

enum class StiffnessChoice {
    modal,   // k = m_struct * w_vac^2, consistent with the resonance relation
    config,  // whatever the spring block specifies
};

struct Options {
    std::optional<std::string> fluid{};
    bool squeeze_film = false;
    std::optional<std::size_t> points;
    std::optional<OutputFormat> format;
    StiffnessChoice stiffness = StiffnessChoice::modal;
    bool envelope = false;
    bool softened = false;
    std::optional<std::string> normalize_to{};
    std::optional<double> voltage{};
};

struct CommandOutput {
    std::string data;
    std::vector<std::string> summary;
    std::vector<std::string> warnings;
    int exit_code = 0;
};

/// Applies --fluid and --squeeze-film.
RunConfig with_overrides(RunConfig config, const Options& options);

CommandOutput check_stability(const RunConfig& config, const Options& options);
CommandOutput pull_in(const RunConfig& config, const Options& options);
CommandOutput dynamics(const RunConfig& config, const Options& options);
CommandOutput static_sweep(const RunConfig& config, const Options& options);
CommandOutput freq_response(const RunConfig& config, const Options& options);
CommandOutput transient(const RunConfig& config, const Options& options);
CommandOutput oracle_scan(const RunConfig& config, const Options& options);

}  // namespace fluidact::cli
