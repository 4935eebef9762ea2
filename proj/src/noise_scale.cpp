#include "msreg/noise_scale.hpp"

#include "msreg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace msreg {

namespace {

constexpr double kHaarFactor = 1.4826 / 1.4142135623730951; // 1.4826 / sqrt(2)

std::vector<double> scaled_abs_diffs(const std::vector<double>& y) {
    if (y.size() < 2) throw TooFewPoints("need at least 2 points for a scale estimate");
    std::vector<double> d(y.size() - 1);
    for (std::size_t i = 0; i + 1 < y.size(); ++i)
        d[i] = kHaarFactor * std::abs(y[i + 1] - y[i]);
    return d;
}

} // namespace

ScaleEstimate sigma_median(const std::vector<double>& y) {
    auto d = scaled_abs_diffs(y);
    std::sort(d.begin(), d.end());
    const std::size_t m = d.size();
    const double med = (m % 2 == 1) ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
    return {med, ScaleMethod::MedianDiff, static_cast<int>(y.size()), false};
}

ScaleEstimate sigma_honest(const std::vector<double>& y) {
    const int n = static_cast<int>(y.size());
    if (n < 100) throw TooFewPoints("honest scale estimate needs n >= 100");
    auto d = scaled_abs_diffs(y);
    std::sort(d.begin(), d.end());
    int index = static_cast<int>(std::ceil(n / 2.0 + 1.814 * std::sqrt(static_cast<double>(n))));
    bool clamped = false;
    if (index > static_cast<int>(d.size())) {
        index = static_cast<int>(d.size());
        clamped = true;
    }
    return {d[index - 1], ScaleMethod::HonestOrderStat, n, clamped};
}

ScaleEstimate sigma_median(const Sample& s) { return sigma_median(s.y); }
ScaleEstimate sigma_honest(const Sample& s) { return sigma_honest(s.y); }

} // namespace msreg
