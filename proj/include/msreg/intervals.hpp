#pragma once

#include <cstddef>
#include <vector>

namespace msreg {

// 1-based inclusive index interval into a grid of size n.
struct IndexInterval {
    int lo = 1;
    int hi = 1;
    int size() const { return hi - lo + 1; }
    bool operator==(const IndexInterval&) const = default;
};

enum class SchemeKind { AllIntervals, MultiScale };

struct IntervalScheme {
    SchemeKind kind = SchemeKind::MultiScale;
    double lambda = 2.0; // > 1, MultiScale only
    bool include_singletons = true;

    static IntervalScheme all() { return {SchemeKind::AllIntervals, 0.0, true}; }
    static IntervalScheme multi(double lambda, bool singletons = true) {
        return {SchemeKind::MultiScale, lambda, singletons};
    }
    bool operator==(const IntervalScheme&) const = default;
};

// Multiscale family: levels k = 1..ceil(log n / log lambda), level k partitions
// [1,n] into cells of width ~lambda^k, plus all singletons. Order: ascending
// (k, j), duplicates removed keeping first occurrence, singletons appended.
std::vector<IndexInterval> enumerate_intervals(int n, const IntervalScheme& scheme);

std::size_t interval_count(int n, const IntervalScheme& scheme);

} // namespace msreg
