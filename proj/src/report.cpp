#include "dqed/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dqed::report {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("Table::add_row: column count mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    char buf[40];
    // round-trippable: 17 significant digits always suffice for binary64
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s = buf;
    // keep the double-ness visible so parsers do not read "3" as an integer
    if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
    return s;
}

namespace {

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c))
        return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (const auto& [k, v] : t.config) os << "# " << k << "=" << v << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_to_string(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string to_json(const Table& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj;
        for (size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<double>(c))
                obj[t.columns[i]] = std::get<double>(c);
            else if (std::holds_alternative<long long>(c))
                obj[t.columns[i]] = std::get<long long>(c);
            else
                obj[t.columns[i]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(1);
}

namespace {

Cell parse_cell(const std::string& s) {
    if (s.empty()) return std::string();
    // integer?
    {
        long long v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && p == s.data() + s.size()) return v;
    }
    {
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && p == s.data() + s.size()) return v;
    }
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                while (!key.empty() && key.front() == ' ') key.erase(0, 1);
                t.config[key] = line.substr(eq + 1);
            }
            continue;
        }
        if (!have_header) {
            t.columns = split_csv_line(line);
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& s : split_csv_line(line)) row.push_back(parse_cell(s));
        t.add_row(std::move(row));
    }
    return t;
}

Table parse_json(const std::string& text) {
    Table t;
    const nlohmann::json arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw std::invalid_argument("parse_json: expected array");
    for (const auto& obj : arr) {
        if (t.columns.empty())
            for (auto it = obj.begin(); it != obj.end(); ++it)
                t.columns.push_back(it.key());
        std::vector<Cell> row;
        for (const auto& col : t.columns) {
            const auto& v = obj.at(col);
            if (v.is_number_float())
                row.push_back(v.get<double>());
            else if (v.is_number_integer())
                row.push_back(v.get<long long>());
            else
                row.push_back(v.get<std::string>());
        }
        t.add_row(std::move(row));
    }
    return t;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

}  // namespace dqed::report
