#pragma once

// Recomputes the published tables and figure data for the reference
// cantilever and compares them against the versioned reference file.

#include "config.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fluidact::cli {

struct ReportRow {
    std::string id;
    std::string quantity;
    std::string unit;
    std::string source;
    double reference = 0.0;
    double computed = 0.0;
    double relative_error = 0.0;
    std::optional<double> tolerance;
    std::optional<std::pair<double, double>> range;
    std::optional<double> nominal;  // printed value when the comparison is against a derived reference
    bool pass = false;
};

struct PaperReport {
    int data_version = 0;
    std::vector<ReportRow> rows;
    /// Figure data as (file name, CSV text).
    std::vector<std::pair<std::string, std::string>> files;
    bool pass() const;
};

/// The reference data bundled at build time.
const nlohmann::json& reference_data();

/// The cantilever configuration stored with the reference data.
RunConfig reference_config();

PaperReport reproduce_paper(const RunConfig& config, std::size_t workers = 1);

std::string report_table(const PaperReport& report);
nlohmann::json report_json(const PaperReport& report);
std::string report_csv(const PaperReport& report);

}  // namespace fluidact::cli
