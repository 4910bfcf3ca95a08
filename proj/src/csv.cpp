#include "otoc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace otoc {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::optional<double> parse_cell(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(cell, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("csv: cell '" + cell + "' is not numeric");
    }
    if (used != cell.size()) {
        throw std::runtime_error("csv: cell '" + cell + "' is not numeric");
    }
    return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("csv: cannot write '" + path + "'");
    }
    auto write_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::runtime_error("csv: ragged row while writing '" + path + "'");
        }
        write_row(row);
    }
    if (!out) {
        throw std::runtime_error("csv: write failed for '" + path + "'");
    }
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("csv: cannot read '" + path + "'");
    }
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(',', start);
            if (pos == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        return cells;
    };
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header) {
            table.header = split(line);
            have_header = true;
            continue;
        }
        auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw std::runtime_error("csv: row with " + std::to_string(cells.size()) +
                                     " cells does not match header in '" + path + "'");
        }
        table.rows.push_back(std::move(cells));
    }
    if (!have_header) {
        throw std::runtime_error("csv: '" + path + "' has no header row");
    }
    return table;
}

}  // namespace otoc
