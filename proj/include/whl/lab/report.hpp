#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace whl::lab {

inline constexpr const char* kVersion = "0.1.0";

/**
 * Tabular result of an experiment: rows of numbers or strings under named columns,
 * plus a free-form summary and metadata. No clock-dependent fields, so equal
 * inputs give byte-identical output.
 */
struct Report {
    std::string title;
    std::vector<std::string> columns;
    std::vector<nlohmann::json> rows;  // each an array matching `columns`
    nlohmann::json summary = nlohmann::json::object();
    nlohmann::json metadata = nlohmann::json::object();
    bool passed = true;

    void add_row(nlohmann::json row);
    /// Records a named assertion in summary["checks"] and folds it into `passed`.
    void check(const std::string& name, bool ok, double value, double threshold);

    /// Header line plus one line per row; numbers printed with %.17g.
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Shortest round-trip-safe decimal rendering used by the CSV writer.
std::string format_number(double v);

}  // namespace whl::lab
