#include "otoc/svg_plot.hpp"

#include "otoc/csv.hpp"
#include "otoc/qpd_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace otoc {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 190.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 58.0;

const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
    std::string label;
    std::vector<std::optional<double>> y;
};

struct PlotData {
    std::string title, x_label, y_label;
    std::vector<double> x;
    std::vector<Series> series;
    // Vertical shaded regions in x units (e.g. nonclassical windows).
    std::vector<std::pair<double, double>> bands;
    bool legend = true;
    bool markers = false;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string render(const PlotData& data) {
    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    for (double v : data.x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& s : data.series) {
        for (const auto& v : s.y) {
            if (!v) continue;
            ymin = std::min(ymin, *v);
            ymax = std::max(ymax, *v);
        }
    }
    if (!std::isfinite(ymin)) {
        throw std::runtime_error("plot: no numeric data to draw");
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        const double pad = std::max(1e-12, std::abs(ymin) * 0.1 + 1e-3);
        ymin -= pad;
        ymax += pad;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }

    auto sx = [&](double v) { return x0 + (v - xmin) / (xmax - xmin) * (x1 - x0); };
    auto sy = [&](double v) { return y0 + (v - ymin) / (ymax - ymin) * (y1 - y0); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt((x0 + x1) / 2) << "\" y=\"22\" font-size=\"16\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\">" << data.title << "</text>\n";

    for (const auto& [b0, b1] : data.bands) {
        const double l = std::clamp(sx(std::max(b0, xmin)), x0, x1);
        const double r = std::clamp(sx(std::min(b1, xmax)), x0, x1);
        if (r <= l) continue;
        svg << "<rect x=\"" << fmt(l) << "\" y=\"" << fmt(y1) << "\" width=\"" << fmt(r - l)
            << "\" height=\"" << fmt(y0 - y1) << "\" fill=\"#cccccc\" opacity=\"0.45\"/>\n";
    }

    // Axes and ticks.
    svg << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1)
        << "\" y2=\"" << fmt(y0) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0)
        << "\" y2=\"" << fmt(y1) << "\" stroke=\"black\"/>\n";
    const int n_ticks = 6;
    for (int i = 0; i <= n_ticks; ++i) {
        const double vx = xmin + (xmax - xmin) * i / n_ticks;
        svg << "<line x1=\"" << fmt(sx(vx)) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(sx(vx))
            << "\" y2=\"" << fmt(y0 + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(sx(vx)) << "\" y=\"" << fmt(y0 + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << fmt_tick(vx) << "</text>\n";
        const double vy = ymin + (ymax - ymin) * i / n_ticks;
        svg << "<line x1=\"" << fmt(x0 - 5) << "\" y1=\"" << fmt(sy(vy)) << "\" x2=\"" << fmt(x0)
            << "\" y2=\"" << fmt(sy(vy)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(x0 - 9) << "\" y=\"" << fmt(sy(vy) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">"
            << fmt_tick(vy) << "</text>\n";
    }
    svg << "<text x=\"" << fmt((x0 + x1) / 2) << "\" y=\"" << fmt(kHeight - 14)
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << data.x_label << "</text>\n";
    svg << "<text x=\"20\" y=\"" << fmt((y0 + y1) / 2) << "\" font-size=\"14\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 20 "
        << fmt((y0 + y1) / 2) << ")\">" << data.y_label << "</text>\n";

    for (std::size_t s = 0; s < data.series.size(); ++s) {
        const char* color = kPalette[s % 10];
        // Gaps (missing cells) split the curve into separate polylines.
        std::ostringstream points;
        bool open = false;
        auto flush = [&]() {
            if (open) {
                svg << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.5\" points=\"" << points.str() << "\"/>\n";
            }
            points.str("");
            open = false;
        };
        for (std::size_t i = 0; i < data.x.size(); ++i) {
            const auto& v = data.series[s].y[i];
            if (!v) {
                flush();
                continue;
            }
            points << fmt(sx(data.x[i])) << ',' << fmt(sy(*v)) << ' ';
            open = true;
            if (data.markers) {
                svg << "<circle cx=\"" << fmt(sx(data.x[i])) << "\" cy=\"" << fmt(sy(*v))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            }
        }
        flush();
        if (data.legend) {
            const double ly = y1 + 16.0 * double(s);
            svg << "<line x1=\"" << fmt(x1 + 10) << "\" y1=\"" << fmt(ly) << "\" x2=\""
                << fmt(x1 + 34) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
                << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << fmt(x1 + 40) << "\" y=\"" << fmt(ly + 4)
                << "\" font-size=\"12\" font-family=\"sans-serif\">" << data.series[s].label
                << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::size_t find_column(const CsvTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == name) return i;
    }
    throw std::runtime_error("plot: csv is missing column '" + name + "'");
}

std::vector<std::optional<double>> column(const CsvTable& table, std::size_t index) {
    std::vector<std::optional<double>> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) out.push_back(parse_cell(row[index]));
    return out;
}

std::vector<double> required_column(const CsvTable& table, std::size_t index,
                                    const std::string& name) {
    std::vector<double> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto v = parse_cell(row[index]);
        if (!v) throw std::runtime_error("plot: empty cell in required column '" + name + "'");
        out.push_back(*v);
    }
    return out;
}

// Merge consecutive flagged x positions into [first, last] windows extended
// by half a grid step on each side.
std::vector<std::pair<double, double>> flag_bands(const std::vector<double>& x,
                                                  const std::vector<bool>& flagged) {
    std::vector<std::pair<double, double>> bands;
    const double half = x.size() > 1 ? 0.5 * (x[1] - x[0]) : 0.0;
    std::size_t i = 0;
    while (i < x.size()) {
        if (!flagged[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < x.size() && flagged[j + 1]) ++j;
        bands.emplace_back(x[i] - half, x[j] + half);
        i = j + 1;
    }
    return bands;
}

PlotData build_otoc(const CsvTable& table) {
    PlotData data;
    data.title = "out-of-time-ordered correlator";
    data.x_label = "t (us)";
    data.y_label = "F(t)";
    const std::size_t tcol = find_column(table, "t_us");
    data.x = required_column(table, tcol, "t_us");
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c == tcol) continue;
        data.series.push_back({table.header[c], column(table, c)});
    }
    return data;
}

PlotData build_qpd(const CsvTable& table) {
    PlotData data;
    data.title = "quasiprobability distribution (16 outcome tuples, real parts)";
    data.x_label = "t (us)";
    data.y_label = "Re p";
    data.legend = false;
    const std::size_t tcol = find_column(table, "t_us");
    data.x = required_column(table, tcol, "t_us");
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c].rfind("re_", 0) == 0) {
            data.series.push_back({table.header[c], column(table, c)});
        }
    }
    if (data.series.empty()) {
        throw std::runtime_error("plot: qpd csv has no re_* columns");
    }
    // Shade the times where any quasiprobability leaves [0, 1]: that is the
    // nonclassical window.
    std::vector<bool> nonclassical(data.x.size(), false);
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        for (const auto& s : data.series) {
            if (s.y[i] && (*s.y[i] < -1e-12 || *s.y[i] > 1.0 + 1e-12)) {
                nonclassical[i] = true;
                break;
            }
        }
    }
    data.bands = flag_bands(data.x, nonclassical);
    return data;
}

PlotData build_nonclassicality(const CsvTable& table) {
    PlotData data;
    data.title = "total nonclassicality";
    data.x_label = "t (us)";
    data.y_label = "N(t)";
    data.legend = false;
    const std::size_t tcol = find_column(table, "t_us");
    const std::size_t ncol = find_column(table, "n_tilde");
    data.x = required_column(table, tcol, "t_us");
    data.series.push_back({"n_tilde", column(table, ncol)});

    // Shade between the first maximum and the following return to the
    // threshold when both are on the horizon (default grid-squared
    // threshold; a custom analysis threshold lives in timescales.csv).
    if (data.x.size() >= 2) {
        NonclassicalitySeries series;
        series.times = data.x;
        for (const auto& v : data.series[0].y) series.values.push_back(v.value_or(0.0));
        const TimescaleReport report = extract_timescales(series);
        if (report.t_m && report.t_z) {
            data.bands.emplace_back(*report.t_m, *report.t_z);
        }
    }
    return data;
}

PlotData build_ratio(const CsvTable& table) {
    PlotData data;
    data.title = "scrambling-witness timescale ratio";
    data.x_label = "h/J";
    data.y_label = "(t_z - t_m)/(t_m - t_star)";
    data.legend = false;
    data.markers = true;
    const std::size_t hcol = find_column(table, "h_over_j");
    const std::size_t rcol = find_column(table, "ratio");
    data.x = required_column(table, hcol, "h_over_j");
    data.series.push_back({"ratio", column(table, rcol)});
    return data;
}

}  // namespace

std::optional<PlotKind> plot_kind_from_string(const std::string& name) {
    if (name == "otoc") return PlotKind::otoc;
    if (name == "qpd") return PlotKind::qpd;
    if (name == "nonclassicality") return PlotKind::nonclassicality;
    if (name == "ratio") return PlotKind::ratio;
    return std::nullopt;
}

std::string to_string(PlotKind kind) {
    switch (kind) {
        case PlotKind::otoc: return "otoc";
        case PlotKind::qpd: return "qpd";
        case PlotKind::nonclassicality: return "nonclassicality";
        case PlotKind::ratio: return "ratio";
    }
    return "?";
}

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
    const CsvTable table = read_csv(csv_path);
    if (table.rows.empty()) {
        throw std::runtime_error("plot: '" + csv_path + "' has a header but no data rows");
    }
    PlotData data;
    switch (kind) {
        case PlotKind::otoc: data = build_otoc(table); break;
        case PlotKind::qpd: data = build_qpd(table); break;
        case PlotKind::nonclassicality: data = build_nonclassicality(table); break;
        case PlotKind::ratio: data = build_ratio(table); break;
    }
    const std::string svg = render(data);
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("plot: cannot write '" + svg_path + "'");
    }
    out << svg;
    if (!out) {
        throw std::runtime_error("plot: write failed for '" + svg_path + "'");
    }
}

}  // namespace otoc
