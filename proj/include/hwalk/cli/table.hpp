#pragma once

// Record tables emitted by the command-line front end, with CSV and JSON writers.
// CSV: fixed header row, floating point at 9 significant digits, notes as trailing
// "# ..." lines. JSON: an array of objects with the same field names and values.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace hwalk::cli {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

enum class Format { csv, json };

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
    for (const auto& note : t.notes) os << "# " << note << '\n';
}

inline nlohmann::ordered_json to_json(const Table& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& name = t.columns[i];
            const Cell& c = row[i];
            if (std::holds_alternative<std::monostate>(c)) {
                obj[name] = nullptr;
            } else if (const auto* iv = std::get_if<std::int64_t>(&c)) {
                obj[name] = *iv;
            } else if (const auto* dv = std::get_if<double>(&c)) {
                // Same rounding as the CSV writer so both formats carry identical values.
                obj[name] = std::stod(format_double(*dv));
            } else {
                obj[name] = std::get<std::string>(c);
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

inline void write(std::ostream& os, const Table& t, Format f) {
    if (f == Format::csv) {
        write_csv(os, t);
    } else {
        write_json(os, t);
    }
}

}  // namespace hwalk::cli
