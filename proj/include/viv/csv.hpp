#pragma once

#include <string>
#include <vector>

namespace viv::csv {

/// Shortest round-trip decimal text for a double (what the JSON library
/// emits), so CSV output is byte-deterministic and re-parses exactly.
std::string format_number(double v);

/// Splits one CSV line on commas. No quoting support; the lab's files never
/// need it.
std::vector<std::string> split_line(const std::string& line);

/// Parses a double field; throws parse_error with file/line context.
double parse_field(const std::string& text, const std::string& file, int line_no);

/// Same, but an empty field reads as NaN (the writer's missing-signal form).
double parse_field_or_nan(const std::string& text, const std::string& file,
                          int line_no);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

/// Reads a whole numeric CSV with a header row. Blank lines are skipped.
Table read_table(const std::string& path);

}  // namespace viv::csv
