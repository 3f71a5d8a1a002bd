#pragma once
// Deterministic file output for experiment artifacts. Doubles are always
// written with 17 significant digits, so rerunning a seeded config produces
// byte-identical files.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qvt::io {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("io: cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("io: short write to " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("io: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

/// Comma separated table of plain tokens. Cells must not contain commas or
/// newlines; the experiment tables are numeric, so no quoting is needed.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string to_string(const Csv& csv) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(csv.header);
    for (const auto& row : csv.rows) {
        if (row.size() != csv.header.size())
            throw std::invalid_argument("io: csv row width does not match the header");
        line(row);
    }
    return out;
}

inline void write_csv(const std::string& path, const Csv& csv) {
    write_text_file(path, to_string(csv));
}

inline Csv read_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    Csv csv;
    std::size_t start = 0;
    bool first = true;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::vector<std::string> cells;
        std::size_t cell = start;
        while (cell <= end) {
            std::size_t comma = text.find(',', cell);
            if (comma == std::string::npos || comma > end) comma = end;
            cells.emplace_back(text.substr(cell, comma - cell));
            cell = comma + 1;
        }
        if (first) {
            csv.header = std::move(cells);
            first = false;
        } else {
            csv.rows.push_back(std::move(cells));
        }
        start = end + 1;
    }
    return csv;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_file(const std::string& path) {
    return fnv1a64(read_text_file(path));
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

struct ScatterSeries {
    std::string label;
    std::string color; // any SVG color token
    std::vector<std::pair<double, double>> points;
};

/// Minimal self-contained scatter plot; horizontal guide lines mark
/// thresholds. Output is deterministic for identical inputs.
inline std::string scatter_svg(const std::string& title, const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<ScatterSeries>& series,
                               const std::vector<double>& guides = {}) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool seen = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!seen) {
                xmin = xmax = x;
                ymin = ymax = y;
                seen = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    for (double g : guides) {
        ymin = std::min(ymin, g);
        ymax = std::max(ymax, g);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
    xmin -= xpad, xmax += xpad, ymin -= ypad, ymax += ypad;

    const double w = 640, h = 420, ml = 58, mr = 16, mt = 34, mb = 44;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
           "viewBox=\"0 0 640 420\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" + title +
           "</text>\n";
    // axes
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(h - mb) + "\" x2=\"" + num(w - mr) +
           "\" y2=\"" + num(h - mb) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
           num(h - mb) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(h - mb + 16) +
               "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
        svg += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(py(yv) + 4) +
               "\" text-anchor=\"end\">" + num(yv) + "</text>\n";
    }
    svg += "<text x=\"" + num((ml + w - mr) / 2) + "\" y=\"" + num(h - 8) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"14\" y=\"" + num((mt + h - mb) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " + num((mt + h - mb) / 2) +
           ")\">" + y_label + "</text>\n";
    for (double g : guides) {
        svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(py(g)) + "\" x2=\"" + num(w - mr) +
               "\" y2=\"" + num(py(g)) +
               "\" stroke=\"gray\" stroke-dasharray=\"5 4\"/>\n";
        svg += "<text x=\"" + num(w - mr - 4) + "\" y=\"" + num(py(g) - 4) +
               "\" text-anchor=\"end\" fill=\"gray\">" + num(g) + "</text>\n";
    }
    double legend_y = mt + 8;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points)
            svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
                   "\" r=\"3.5\" fill=\"" + s.color + "\"/>\n";
        svg += "<circle cx=\"" + num(ml + 12) + "\" cy=\"" + num(legend_y) +
               "\" r=\"3.5\" fill=\"" + s.color + "\"/>\n";
        svg += "<text x=\"" + num(ml + 20) + "\" y=\"" + num(legend_y + 4) + "\">" + s.label +
               "</text>\n";
        legend_y += 16;
    }
    svg += "</svg>\n";
    return svg;
}

inline void write_scatter_svg(const std::string& path, const std::string& title,
                              const std::string& x_label, const std::string& y_label,
                              const std::vector<ScatterSeries>& series,
                              const std::vector<double>& guides = {}) {
    write_text_file(path, scatter_svg(title, x_label, y_label, series, guides));
}

} // namespace qvt::io
