#pragma once

// Tabular output for the command-line tool. Doubles are written with 17
// significant digits so that CSV files round-trip exactly; missing values
// are empty CSV fields and JSON nulls.
//
// Needs nlohmann/json (vendor/json.hpp) on the include path.

#include <cmath>
#include <cstdio>
#include <deque>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace nlse {

using Cell = std::variant<std::monostate, double, long long, std::string>;

inline Cell cell(double v) { return std::isfinite(v) ? Cell{v} : Cell{}; }
inline Cell cell(std::optional<double> v) { return v ? cell(*v) : Cell{}; }
inline Cell cell(int v) { return Cell{static_cast<long long>(v)}; }
inline Cell cell(long long v) { return Cell{v}; }
inline Cell cell(bool v) { return Cell{std::string(v ? "true" : "false")}; }
inline Cell cell(std::string v) { return Cell{std::move(v)}; }
inline Cell cell(const char* v) { return Cell{std::string(v)}; }

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::string command;
    std::deque<Table> tables; // stable references for table()
    bool no_solution = false; ///< the requested state does not exist
    int failures = 0;         ///< failed self-checks

    Table& table(const std::string& name, std::vector<std::string> columns) {
        tables.push_back({name, std::move(columns), {}});
        return tables.back();
    }
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<std::string>(c)) {
        const auto& s = std::get<std::string>(c);
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    }
    return {};
}

/// Every table as "# name", a header row and the data rows; tables are
/// separated by a blank line.
inline void write_csv(std::ostream& os, const Report& report) {
    bool first = true;
    for (const auto& t : report.tables) {
        if (!first) os << '\n';
        first = false;
        os << "# " << t.name << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << t.columns[i];
        }
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
            os << '\n';
        }
    }
}

inline nlohmann::ordered_json to_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return nullptr;
}

/// {"command": ..., "tables": {name: [{column: value, ...}, ...]}}
inline nlohmann::ordered_json to_json(const Report& report) {
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const auto& t : report.tables) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i) {
                obj[t.columns[i]] = to_json(row[i]);
            }
            rows.push_back(std::move(obj));
        }
        tables[t.name] = std::move(rows);
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["command"] = report.command;
    out["tables"] = std::move(tables);
    return out;
}

inline void write_json(std::ostream& os, const Report& report) {
    os << to_json(report).dump(2) << '\n';
}

} // namespace nlse
