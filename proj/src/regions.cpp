#include "msreg/regions.hpp"

#include "msreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msreg {

double w_statistic(const std::vector<double>& residuals, const IndexInterval& I) {
    if (I.lo < 1 || I.hi > static_cast<int>(residuals.size()) || I.lo > I.hi)
        throw IndexOutOfRange("interval outside residual vector");
    double s = 0.0;
    for (int i = I.lo - 1; i < I.hi; ++i) s += residuals[i];
    return s / std::sqrt(static_cast<double>(I.size()));
}

std::vector<double> cumulative_sums(const std::vector<double>& values) {
    std::vector<double> s(values.size() + 1, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) s[i + 1] = s[i] + values[i];
    return s;
}

double tau_threshold(int n, double tau) {
    return std::sqrt(tau * std::log(static_cast<double>(n)));
}

double star_threshold(int n, int interval_size, double gamma) {
    const double ratio = static_cast<double>(n) / interval_size;
    const double radicand =
        2.0 * std::log(ratio) + gamma * std::log(std::exp(1.0) + std::log(ratio));
    return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

namespace {

MembershipReport check_intervals(const std::vector<double>& residuals, const RegionSpec& spec) {
    const int n = static_cast<int>(residuals.size());
    const auto intervals = enumerate_intervals(n, spec.scheme);
    const auto cs = cumulative_sums(residuals);
    const double tau_bound = spec.kind == ThresholdKind::Tau
                                 ? spec.sigma * tau_threshold(n, spec.threshold)
                                 : 0.0;
    MembershipReport rep;
    for (const auto& I : intervals) {
        const double w = std::abs(cs[I.hi] - cs[I.lo - 1]) / std::sqrt(static_cast<double>(I.size()));
        const double bound = spec.kind == ThresholdKind::Tau
                                 ? tau_bound
                                 : spec.sigma * star_threshold(n, I.size(), spec.threshold);
        double ratio;
        if (bound > 0.0)
            ratio = w / bound;
        else
            ratio = w > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (w > bound) rep.violations.push_back({I, w, bound});
    }
    rep.is_member = rep.violations.empty();
    std::sort(rep.violations.begin(), rep.violations.end(), [](const Violation& a, const Violation& b) {
        return a.interval.lo != b.interval.lo ? a.interval.lo < b.interval.lo
                                              : a.interval.hi < b.interval.hi;
    });
    return rep;
}

std::vector<double> residuals_of(const std::vector<double>& g, const Sample& sample) {
    if (g.size() != sample.y.size())
        throw LengthMismatch("candidate function must have one value per support point");
    std::vector<double> r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = sample.y[i] - g[i];
    return r;
}

} // namespace

MembershipReport residuals_within_region(const std::vector<double>& residuals,
                                         const RegionSpec& spec) {
    return check_intervals(residuals, spec);
}

MembershipReport region_contains(const std::vector<double>& g, const Sample& sample,
                                 const RegionSpec& spec) {
    if (spec.kind != ThresholdKind::Tau) throw BadRequest("expected a tau threshold");
    return check_intervals(residuals_of(g, sample), spec);
}

MembershipReport region_contains_star(const std::vector<double>& g, const Sample& sample,
                                      const RegionSpec& spec) {
    if (spec.kind != ThresholdKind::Gamma) throw BadRequest("expected a gamma threshold");
    return check_intervals(residuals_of(g, sample), spec);
}

} // namespace msreg
