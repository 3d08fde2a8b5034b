#include "viv/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

#include "viv/errors.hpp"

namespace viv::csv {

std::string format_number(double v) {
    return nlohmann::json(v).dump();
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

double parse_field(const std::string& text, const std::string& file, int line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw parse_error(file + ":" + std::to_string(line_no) +
                          ": not a number: '" + text + "'");
    }
    return v;
}

double parse_field_or_nan(const std::string& text, const std::string& file,
                          int line_no) {
    if (text.empty()) return std::numeric_limits<double>::quiet_NaN();
    return parse_field(text, file, line_no);
}

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    Table t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (t.header.empty()) {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw parse_error(path + ":" + std::to_string(line_no) +
                              ": expected " + std::to_string(t.header.size()) +
                              " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            row[i] = parse_field_or_nan(fields[i], path, line_no);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw parse_error(path + ": empty file");
    return t;
}

}  // namespace viv::csv
