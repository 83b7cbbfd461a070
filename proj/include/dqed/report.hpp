#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

// Sweep-table output: CSV with a comment header echoing the run
// configuration, or JSON as one object per row in an array. Doubles are
// emitted with max_digits10 so parsing an emitted file reproduces the
// values bit-identically.

namespace dqed::report {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;  // names, units in the name where useful
    std::vector<std::vector<Cell>> rows;
    std::map<std::string, std::string> config;  // echoed for reproducibility

    void add_row(std::vector<Cell> row);
};

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Inverse parsers used by the round-trip checks and downstream tooling.
Table parse_csv(const std::string& text);
Table parse_json(const std::string& text);

std::string format_double(double v);  // shortest round-trippable form

void write_file(const std::string& path, const std::string& content);

}  // namespace dqed::report
