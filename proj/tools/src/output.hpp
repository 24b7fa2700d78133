#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fluidact::cli {

/// 9 significant digits; inf and nan spelled out.
std::string csv_number(double value);
inline std::string csv_bool(bool value) { return value ? "true" : "false"; }

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row);
    std::string str() const;
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Pretty-printed with full double precision; non-finite numbers become null.
std::string json_text(const nlohmann::json& doc);

/// Two-column `quantity,value` rendering of a flat JSON object.
std::string json_to_key_value_csv(const nlohmann::json& doc);

void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace fluidact::cli
