#include "pedyn/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pedyn/common.hpp"
#include "pedyn/hexfloat.hpp"

namespace pedyn {

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

/// Pixel coordinates rounded to 1/100 so the emitted text is stable.
std::string px(double v) {
    return format_number(std::round(v * 100.0) / 100.0);
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range data_range(const std::vector<Series>& series, bool use_x) {
    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (const Series& s : series) {
        const std::vector<double>& v = use_x ? s.xs : s.ys;
        for (double d : v) {
            if (!std::isfinite(d)) continue;
            if (!any) {
                lo = hi = d;
                any = true;
            } else {
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
        }
    }
    if (!any) return {0.0, 1.0};
    if (lo == hi) {
        const double pad = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.1;
        return {lo - pad, hi + pad};
    }
    return {lo, hi};
}

Range pad_range(Range r, double frac) {
    const double pad = (r.hi - r.lo) * frac;
    return {r.lo - pad, r.hi + pad};
}

/// Tick positions at a "nice" step (1, 2 or 5 times a power of ten).
std::vector<double> nice_ticks(const Range& r, std::size_t target) {
    const double span = r.hi - r.lo;
    if (span <= 0.0 || target < 2) return {r.lo, r.hi};
    const double raw_step = span / static_cast<double>(target - 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    const double norm = raw_step / mag;
    double step;
    if (norm <= 1.0) step = 1.0;
    else if (norm <= 2.0) step = 2.0;
    else if (norm <= 5.0) step = 5.0;
    else step = 10.0;
    step *= mag;
    std::vector<double> ticks;
    const double first = std::ceil(r.lo / step) * step;
    for (double t = first; t <= r.hi + step * 1e-9; t += step) {
        // Snap values that should be exact multiples, so labels read
        // "0.2" rather than "0.20000000000000001".
        ticks.push_back(std::round(t / step) * step);
    }
    return ticks;
}

} // namespace

std::string render_chart(const std::string& title, const std::string& x_label,
                         const std::vector<Panel>& panels, std::size_t width,
                         std::size_t panel_height) {
    require(!panels.empty(), "render_chart: no panels");
    const double margin_left = 78.0;
    const double margin_right = 160.0;
    const double title_height = 34.0;
    const double panel_gap = 34.0;
    const double x_axis_height = 46.0;
    const double w = static_cast<double>(width);
    const double ph = static_cast<double>(panel_height);
    const double plot_w = w - margin_left - margin_right;
    const double total_h = title_height +
                           static_cast<double>(panels.size()) * (ph + panel_gap) +
                           x_axis_height;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(w) << "\" height=\""
        << px(total_h) << "\" viewBox=\"0 0 " << px(w) << " " << px(total_h) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << px(w / 2.0) << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\" fill=\"#222\">" << escape_xml(title)
        << "</text>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        const double top = title_height + static_cast<double>(p) * (ph + panel_gap);
        const double bottom = top + ph;
        const Range xr = pad_range(data_range(panel.series, true), 0.02);
        const Range yr = pad_range(data_range(panel.series, false), 0.06);
        auto to_px_x = [&](double v) {
            return margin_left + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
        };
        auto to_px_y = [&](double v) {
            return bottom - (v - yr.lo) / (yr.hi - yr.lo) * ph;
        };

        svg << "<rect x=\"" << px(margin_left) << "\" y=\"" << px(top) << "\" width=\""
            << px(plot_w) << "\" height=\"" << px(ph)
            << "\" fill=\"#fafafa\" stroke=\"#cccccc\"/>\n";
        svg << "<text x=\"" << px(margin_left) << "\" y=\"" << px(top - 8.0)
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\">"
            << escape_xml(panel.title) << "</text>\n";
        if (!panel.y_label.empty()) {
            const double cy = (top + bottom) / 2.0;
            svg << "<text x=\"16\" y=\"" << px(cy)
                << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#444\" "
                << "text-anchor=\"middle\" transform=\"rotate(-90 16 " << px(cy) << ")\">"
                << escape_xml(panel.y_label) << "</text>\n";
        }

        for (double t : nice_ticks(yr, 5)) {
            const double y = to_px_y(t);
            svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(y) << "\" x2=\""
                << px(margin_left + plot_w) << "\" y2=\"" << px(y)
                << "\" stroke=\"#e6e6e6\"/>\n";
            svg << "<text x=\"" << px(margin_left - 6.0) << "\" y=\"" << px(y + 4.0)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
                << "fill=\"#444\">" << format_number(t) << "</text>\n";
        }
        for (double t : nice_ticks(xr, 7)) {
            const double x = to_px_x(t);
            svg << "<line x1=\"" << px(x) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(x)
                << "\" y2=\"" << px(bottom + 4.0) << "\" stroke=\"#999999\"/>\n";
            svg << "<text x=\"" << px(x) << "\" y=\"" << px(bottom + 16.0)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
                << "fill=\"#444\">" << format_number(t) << "</text>\n";
        }

        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const Series& s = panel.series[si];
            require(s.xs.size() == s.ys.size(), "render_chart: xs/ys length mismatch");
            const char* color = kPalette[si % kPaletteSize];
            std::string points;
            auto flush = [&]() {
                if (!points.empty()) {
                    svg << "<polyline fill=\"none\" stroke=\"" << color
                        << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
                    points.clear();
                }
            };
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if (!std::isfinite(s.ys[i]) || !std::isfinite(s.xs[i])) {
                    flush();
                    continue;
                }
                if (!points.empty()) points += ' ';
                points += px(to_px_x(s.xs[i]));
                points += ',';
                points += px(to_px_y(s.ys[i]));
            }
            flush();

            if (!s.label.empty()) {
                const double ly = top + 14.0 + 16.0 * static_cast<double>(si);
                const double lx = margin_left + plot_w + 10.0;
                svg << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4.0) << "\" x2=\""
                    << px(lx + 18.0) << "\" y2=\"" << px(ly - 4.0) << "\" stroke=\"" << color
                    << "\" stroke-width=\"2\"/>\n";
                svg << "<text x=\"" << px(lx + 24.0) << "\" y=\"" << px(ly)
                    << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">"
                    << escape_xml(s.label) << "</text>\n";
            }
        }
    }

    svg << "<text x=\"" << px(margin_left + plot_w / 2.0) << "\" y=\"" << px(total_h - 12.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "fill=\"#222\">" << escape_xml(x_label) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

} // namespace pedyn
