#include "whl/lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace whl::lab {

std::string format_number(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Report::add_row(nlohmann::json row)
{
    if (!row.is_array() || row.size() != columns.size()) throw std::invalid_argument("Report: row width mismatch");
    rows.push_back(std::move(row));
}

void Report::check(const std::string& name, bool ok, double value, double threshold)
{
    summary["checks"].push_back({{"name", name}, {"passed", ok}, {"value", value}, {"threshold", threshold}});
    passed = passed && ok;
}

std::string Report::to_csv() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            const auto& cell = row[i];
            if (cell.is_number()) {
                out << format_number(cell.get<double>());
            } else if (cell.is_string()) {
                out << cell.get<std::string>();
            } else if (cell.is_boolean()) {
                out << (cell.get<bool>() ? "true" : "false");
            } else if (!cell.is_null()) {
                out << cell.dump();
            }
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json Report::to_json() const
{
    return {{"title", title}, {"columns", columns}, {"rows", rows},
            {"summary", summary}, {"metadata", metadata}, {"passed", passed}};
}

}  // namespace whl::lab
