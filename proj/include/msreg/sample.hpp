#pragma once

#include <string>
#include <utility>
#include <vector>

namespace msreg {

// One ordered (t, y) dataset on [0,1].
struct Sample {
    std::vector<double> t; // strictly increasing, in [0,1]
    std::vector<double> y;
    std::string label;

    int n() const { return static_cast<int>(t.size()); }
};

Sample validate_sample(std::vector<std::pair<double, double>> points,
                       std::string label = {});

// Union support of k samples with precision-weighted responses and the
// cumulative sums the taut string runs on.
struct MergedGrid {
    std::vector<double> t;            // distinct sorted, size n
    std::vector<double> y;            // weighted values y_m
    std::vector<double> sigma_weight; // sum of 1/sigma^2 contributing at t_m
    std::vector<double> cum_y;        // size n+1, cum_y[0] = 0
    std::vector<double> cum_w;        // size n+1, cum_w[0] = 0, strictly increasing
    // source_map[m] lists (sample index, point index) pairs contributing at t_m.
    std::vector<std::vector<std::pair<int, int>>> source_map;

    int n() const { return static_cast<int>(t.size()); }
};

MergedGrid merge_samples(const std::vector<Sample>& samples,
                         const std::vector<double>& scales);

} // namespace msreg
