#include "msreg/sample.hpp"

#include "msreg/errors.hpp"

#include <algorithm>
#include <map>

namespace msreg {

Sample validate_sample(std::vector<std::pair<double, double>> points, std::string label) {
    if (points.empty()) throw EmptyInput("sample has no points");
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Sample s;
    s.label = std::move(label);
    s.t.reserve(points.size());
    s.y.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [t, y] = points[i];
        if (t < 0.0 || t > 1.0)
            throw DesignPointOutOfRange("t = " + std::to_string(t) + " outside [0,1]");
        if (i > 0 && t == s.t.back())
            throw DuplicateDesignPoint("repeated t = " + std::to_string(t) +
                                       (s.label.empty() ? "" : " in sample " + s.label));
        s.t.push_back(t);
        s.y.push_back(y);
    }
    if (s.n() < 2) throw TooFewPoints("need at least 2 points, got " + std::to_string(s.n()));
    return s;
}

MergedGrid merge_samples(const std::vector<Sample>& samples, const std::vector<double>& scales) {
    if (samples.empty()) throw EmptyInput("no samples to merge");
    if (samples.size() != scales.size())
        throw LengthMismatch("one scale required per sample");
    for (double s : scales)
        if (!(s > 0.0)) throw ScaleNotPositive("scale must be > 0");

    // Exact-equality tie detection across samples.
    std::map<double, std::vector<std::pair<int, int>>> by_t;
    for (int si = 0; si < static_cast<int>(samples.size()); ++si)
        for (int pi = 0; pi < samples[si].n(); ++pi)
            by_t[samples[si].t[pi]].push_back({si, pi});

    MergedGrid g;
    const int n = static_cast<int>(by_t.size());
    g.t.reserve(n);
    g.y.reserve(n);
    g.sigma_weight.reserve(n);
    g.source_map.reserve(n);
    g.cum_y.assign(1, 0.0);
    g.cum_w.assign(1, 0.0);
    for (auto& [t, sources] : by_t) {
        double wsum = 0.0, wy = 0.0;
        for (auto [si, pi] : sources) {
            const double w = 1.0 / (scales[si] * scales[si]);
            wsum += w;
            wy += w * samples[si].y[pi];
        }
        g.t.push_back(t);
        g.y.push_back(wy / wsum);
        g.sigma_weight.push_back(wsum);
        g.source_map.push_back(std::move(sources));
        g.cum_y.push_back(g.cum_y.back() + wy);
        g.cum_w.push_back(g.cum_w.back() + wsum);
    }
    return g;
}

} // namespace msreg
