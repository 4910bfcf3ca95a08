#pragma once

// Static, self-contained SVG renderings of the CSV outputs. No external
// plotting dependencies; axes are in microseconds.

#include <optional>
#include <string>

namespace otoc {

enum class PlotKind { otoc, qpd, nonclassicality, ratio };

std::optional<PlotKind> plot_kind_from_string(const std::string& name);
std::string to_string(PlotKind kind);

// Renders `csv_path` into `svg_path`. otoc: one polyline per data column.
// qpd: the sixteen real parts, with time regions where any value leaves
// [0, 1] shaded. nonclassicality: the series plus a shaded band between the
// first maximum and the following return to the threshold, when both exist.
// ratio: timescale ratio against h/J, censored rows skipped. Throws
// std::runtime_error on malformed or data-free CSVs (no file is written).
void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path);

}  // namespace otoc
