#ifndef PEDYN_SVG_PLOT_HPP
#define PEDYN_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace pedyn {

/// One polyline. A NaN y-value breaks the line, leaving a gap; that is how
/// intermittent signals (a goal's trend while the goal is inactive) are
/// drawn without connecting across the inactive stretches.
struct Series {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

/// One stacked subplot with its own y-axis.
struct Panel {
    std::string title;
    std::string y_label;
    std::vector<Series> series;
};

/// Renders stacked line-chart panels into a self-contained SVG document.
/// Pure function of its inputs: identical data yields identical bytes, so
/// plots can be regenerated from logs at any time and diffed.
std::string render_chart(const std::string& title, const std::string& x_label,
                         const std::vector<Panel>& panels, std::size_t width = 960,
                         std::size_t panel_height = 220);

void write_text_file(const std::string& path, const std::string& content);

} // namespace pedyn

#endif // PEDYN_SVG_PLOT_HPP
