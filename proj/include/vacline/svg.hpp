#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vacline::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    std::string colour = "#1f77b4";
    bool markers = false;  ///< circles instead of a polyline
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::optional<double> vertical_marker;  ///< dashed line at this x
    int width = 720;
    int height = 480;
};

/// Standalone SVG document with axes, ticks and a legend.
std::string render(const Plot& plot);

}  // namespace vacline::svg
