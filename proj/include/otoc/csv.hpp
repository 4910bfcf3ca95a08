#pragma once

// Minimal CSV layer: comma-separated, '.' radix, one header row, '\n' line
// endings, doubles printed with "%.17g" so that identical runs produce
// byte-identical files. Censored values travel as empty cells.

#include <optional>
#include <string>
#include <vector>

namespace otoc {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string format_double(double x);

// Numeric cell helper; empty cells map to nullopt, anything unparseable
// throws std::runtime_error.
std::optional<double> parse_cell(const std::string& cell);

// Overwrites `path`; throws std::runtime_error when the file cannot be
// written or the rows are ragged.
void write_csv(const std::string& path, const CsvTable& table);

// Throws std::runtime_error on unreadable files, missing header or ragged
// rows. A header-only file parses to an empty `rows`.
CsvTable read_csv(const std::string& path);

}  // namespace otoc
