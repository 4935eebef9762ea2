#include "msreg/intervals.hpp"

#include <cmath>
#include <set>

namespace msreg {

std::vector<IndexInterval> enumerate_intervals(int n, const IntervalScheme& scheme) {
    std::vector<IndexInterval> out;
    if (n < 1) return out;

    if (scheme.kind == SchemeKind::AllIntervals) {
        out.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
        for (int lo = 1; lo <= n; ++lo)
            for (int hi = lo; hi <= n; ++hi) out.push_back({lo, hi});
        return out;
    }

    std::set<std::pair<int, int>> seen;
    auto push = [&](int lo, int hi) {
        if (lo > hi) return;
        if (seen.insert({lo, hi}).second) out.push_back({lo, hi});
    };

    const double lambda = scheme.lambda;
    const int kmax = n > 1 ? static_cast<int>(std::ceil(std::log(static_cast<double>(n)) / std::log(lambda))) : 0;
    for (int k = 1; k <= kmax; ++k) {
        const double width = std::pow(lambda, k);
        const int jmax = static_cast<int>(std::ceil(n / width));
        for (int j = 1; j <= jmax; ++j) {
            const int lo = static_cast<int>(std::floor((j - 1) * width + 1.0));
            const int hi = std::min(static_cast<int>(std::floor(j * width)), n);
            push(lo, hi);
        }
    }
    if (scheme.include_singletons)
        for (int i = 1; i <= n; ++i) push(i, i);
    return out;
}

std::size_t interval_count(int n, const IntervalScheme& scheme) {
    if (scheme.kind == SchemeKind::AllIntervals)
        return static_cast<std::size_t>(n) * (n + 1) / 2;
    return enumerate_intervals(n, scheme).size();
}

} // namespace msreg
