#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "cwlm/errors.hpp"
#include "csv.hpp"

namespace cwlm::cli {

namespace {

struct Rgb {
    int r, g, b;
};

// Compact viridis-like ramp for heatmaps.
const Rgb kRamp[] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};

Rgb ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * 4.0;
    const int k = std::min(3, static_cast<int>(pos));
    const double f = pos - k;
    return {static_cast<int>(kRamp[k].r + f * (kRamp[k + 1].r - kRamp[k].r)),
            static_cast<int>(kRamp[k].g + f * (kRamp[k + 1].g - kRamp[k].g)),
            static_cast<int>(kRamp[k].b + f * (kRamp[k + 1].b - kRamp[k].b))};
}

// Blue-white-red ramp for signed fields.
Rgb diverging_color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    if (t < 0.0) {
        const double f = 1.0 + t;
        return {static_cast<int>(33 + f * 222), static_cast<int>(102 + f * 153),
                static_cast<int>(172 + f * 83)};
    }
    const double f = 1.0 - t;
    return {static_cast<int>(178 + f * 77), static_cast<int>(24 + f * 231),
            static_cast<int>(43 + f * 212)};
}

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf"};

} // namespace

void write_heatmap_svg(const std::filesystem::path& path, const std::vector<double>& o1,
                       const std::vector<double>& o2, const std::vector<double>& values,
                       const std::string& title, bool symmetric_scale) {
    const int n1 = static_cast<int>(o1.size());
    const int n2 = static_cast<int>(o2.size());
    if (n1 == 0 || n2 == 0) throw Error("empty heatmap");

    // Downsample to at most 256 cells per axis by block averaging.
    const int b1 = std::max(1, n1 / 256);
    const int b2 = std::max(1, n2 / 256);
    const int m1 = n1 / b1;
    const int m2 = n2 / b2;
    std::vector<double> block(static_cast<std::size_t>(m1) * m2, 0.0);
    for (int i = 0; i < m1 * b1; ++i)
        for (int j = 0; j < m2 * b2; ++j) {
            const double v = values[static_cast<std::size_t>(i) * n2 + j];
            if (std::isnan(v)) continue;
            block[static_cast<std::size_t>(i / b1) * m2 + j / b2] += v / (b1 * b2);
        }

    double lo = block[0], hi = block[0];
    for (double v : block) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (symmetric_scale) {
        const double a = std::max(std::abs(lo), std::abs(hi));
        lo = -a;
        hi = a;
    }
    if (hi <= lo) hi = lo + 1.0;

    const int width = 640, height = 640, margin = 60;
    const double cw = static_cast<double>(width - 2 * margin) / m1;
    const double ch = static_cast<double>(height - 2 * margin) / m2;

    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j) {
            const double v = block[static_cast<std::size_t>(i) * m2 + j];
            const Rgb c = symmetric_scale
                              ? diverging_color(2.0 * (v - lo) / (hi - lo) - 1.0)
                              : ramp_color((v - lo) / (hi - lo));
            const double x = margin + i * cw;
            // o2 increases upward.
            const double y = height - margin - (j + 1) * ch;
            out << "<rect x='" << x << "' y='" << y << "' width='" << cw + 0.5 << "' height='"
                << ch + 0.5 << "' fill='rgb(" << c.r << ',' << c.g << ',' << c.b << ")'/>\n";
        }
    // Axis labels at the grid corners.
    out << "<text x='" << margin << "' y='" << height - margin + 30 << "' font-size='12'>o1="
        << format_value(o1.front()) << "</text>\n";
    out << "<text x='" << width - margin << "' y='" << height - margin + 30
        << "' text-anchor='end' font-size='12'>" << format_value(o1.back()) << "</text>\n";
    out << "<text x='" << margin - 6 << "' y='" << height - margin
        << "' text-anchor='end' font-size='12'>o2=" << format_value(o2.front()) << "</text>\n";
    out << "<text x='" << margin - 6 << "' y='" << margin + 12
        << "' text-anchor='end' font-size='12'>" << format_value(o2.back()) << "</text>\n";
    out << "</svg>\n";
}

void write_lines_svg(const std::filesystem::path& path, const std::vector<LineSeries>& series,
                     const std::string& title) {
    if (series.empty()) throw Error("no series to plot");
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (std::isnan(s.y[k])) continue;
            x_lo = std::min(x_lo, s.x[k]);
            x_hi = std::max(x_hi, s.x[k]);
            y_lo = std::min(y_lo, s.y[k]);
            y_hi = std::max(y_hi, s.y[k]);
        }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;

    const int width = 720, height = 480, margin = 60;
    const auto px = [&](double x) {
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
    };
    const auto py = [&](double y) {
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
    };

    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    out << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
        << "' y2='" << height - margin << "' stroke='black'/>\n";
    out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
        << height - margin << "' stroke='black'/>\n";
    out << "<text x='" << margin << "' y='" << height - margin + 30 << "' font-size='12'>"
        << format_value(x_lo) << "</text>\n";
    out << "<text x='" << width - margin << "' y='" << height - margin + 30
        << "' text-anchor='end' font-size='12'>" << format_value(x_hi) << "</text>\n";
    out << "<text x='" << margin - 6 << "' y='" << height - margin
        << "' text-anchor='end' font-size='12'>" << format_value(y_lo) << "</text>\n";
    out << "<text x='" << margin - 6 << "' y='" << margin + 12
        << "' text-anchor='end' font-size='12'>" << format_value(y_hi) << "</text>\n";

    int color = 0;
    for (const auto& s : series) {
        out << "<polyline fill='none' stroke='" << kSeriesColors[color % 7]
            << "' stroke-width='1.5' points='";
        bool pen_down = false;
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (std::isnan(s.y[k])) {
                pen_down = false;
                continue;
            }
            out << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
            pen_down = true;
        }
        (void)pen_down;
        out << "'/>\n";
        out << "<text x='" << width - margin - 4 << "' y='" << margin + 16 + 16 * color
            << "' text-anchor='end' font-size='12' fill='" << kSeriesColors[color % 7] << "'>"
            << s.label << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
}

} // namespace cwlm::cli
