#pragma once

#include <span>
#include <string>
#include <vector>

namespace epm::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y; ///< non-finite points break the polyline
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Self-contained SVG with the panels laid out left to right; axes, ticks and a legend per panel.
std::string render(std::span<const Panel> panels);

} // namespace epm::svg
