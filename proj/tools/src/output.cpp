#include "output.hpp"

#include "config.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace fluidact::cli {

std::string csv_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return fmt::format("{:.9g}", value);
}

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != header_.size()) {
        throw std::logic_error(fmt::format("csv row has {} fields, header has {}", row.size(),
                                           header_.size()));
    }
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out = fmt::format("{}\n", fmt::join(header_, ","));
    for (const auto& row : rows_) fmt::format_to(std::back_inserter(out), "{}\n", fmt::join(row, ","));
    return out;
}

std::string json_text(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

std::string json_to_key_value_csv(const nlohmann::json& doc) {
    CsvTable table({"quantity", "value"});
    for (const auto& [key, value] : doc.items()) {
        if (value.is_number_float()) {
            table.add({key, csv_number(value.get<double>())});
        } else if (value.is_boolean()) {
            table.add({key, csv_bool(value.get<bool>())});
        } else if (value.is_null()) {
            table.add({key, ""});
        } else if (value.is_string()) {
            table.add({key, value.get<std::string>()});
        } else if (value.is_number()) {
            table.add({key, value.dump()});
        }
    }
    return table.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(fmt::format("{}: cannot open for writing", path.string()));
    out << text;
    if (!out) throw ConfigError(fmt::format("{}: write failed", path.string()));
}

}  // namespace fluidact::cli
