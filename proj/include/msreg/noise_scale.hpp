#pragma once

#include "msreg/sample.hpp"

namespace msreg {

enum class ScaleMethod { MedianDiff, HonestOrderStat };

struct ScaleEstimate {
    double value = 0.0;
    ScaleMethod method = ScaleMethod::MedianDiff;
    int n = 0;
    bool index_clamped = false; // HonestOrderStat only
};

// (1.4826 / sqrt(2)) * median of absolute successive differences.
ScaleEstimate sigma_median(const std::vector<double>& y);
ScaleEstimate sigma_median(const Sample& s);

// High order statistic of the scaled successive differences; conservative by
// construction (over-estimates sigma with probability ~0.99). Needs n >= 100.
ScaleEstimate sigma_honest(const std::vector<double>& y);
ScaleEstimate sigma_honest(const Sample& s);

} // namespace msreg
