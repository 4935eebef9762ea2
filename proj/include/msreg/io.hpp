#pragma once

#include "msreg/sample.hpp"

#include <string>
#include <vector>

namespace msreg {

// CSV with header `t,y` (one sample) or `t,y,sample` (long format).
std::vector<Sample> read_samples_csv(const std::string& path);

void write_fit_csv(const std::string& path, const std::vector<double>& t,
                   const std::vector<double>& values);

// Minimal static SVG: scatter overlays plus polylines, linear axes.
struct SvgSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool line = false; // points otherwise
    std::string label;
};

void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series,
                    int width = 800, int height = 500, const std::string& title = {});

// Multi-panel power curves, one panel per scenario.
struct PowerPanel {
    std::string title;
    std::vector<double> etas;
    // one curve per method: (label, powers aligned with etas)
    std::vector<std::pair<std::string, std::vector<double>>> curves;
};

void write_svg_power(const std::string& path, const std::vector<PowerPanel>& panels,
                     int panel_width = 400, int panel_height = 300);

} // namespace msreg
