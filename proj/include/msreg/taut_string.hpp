#pragma once

#include "msreg/regions.hpp"
#include "msreg/sample.hpp"

#include <vector>

namespace msreg {

// Corridor around cumulative sums. Arrays are indexed 0..n; endpoints are
// pinned (lower == upper) at indices 0 and n.
struct Tube {
    std::vector<double> x;     // strictly increasing abscissae, size n+1
    std::vector<double> lower; // size n+1
    std::vector<double> upper; // size n+1
};

enum class KnotTouch { Endpoint, LowerBoundary, UpperBoundary };

struct TautString {
    std::vector<int> knot_index;      // grid indices of the knots, ascending
    std::vector<double> knot_x;
    std::vector<double> knot_value;
    std::vector<KnotTouch> touch;

    // Value of the string at abscissa x (piecewise linear).
    double at(double x) const;
    // Slope on the segment covering (x[m-1], x[m]], m = 1..n.
    std::vector<double> segment_slopes(const std::vector<double>& x) const;
};

// Shortest path through the tube between the pinned endpoints, by the
// convex-minorant / concave-majorant hull sweep.
TautString taut_string_solve(const Tube& tube);

// Strict sign changes of the first differences; runs of equal values count as
// one plateau.
int count_local_extremes(const std::vector<double>& values);

struct SqueezeRound {
    int round = 0;
    int violating_intervals = 0;
    int squeezed_indices = 0;
};

struct TautStringFit {
    std::vector<double> values;     // fitted value at each merged-grid point
    int n_local_extremes = 0;
    int squeeze_rounds = 0;
    Tube final_tube;
    MergedGrid grid;
    std::vector<SqueezeRound> history;
};

// Minimal-modality fit adequate for every sample at once: solve the string in
// a wide tube, then squeeze the tube locally wherever some sample's region
// check fails, until the fit is adequate everywhere. The merged interpolant is
// checked first; if even it is rejected no joint fit exists.
TautStringFit joint_taut_fit(const std::vector<Sample>& samples,
                             const std::vector<RegionSpec>& specs,
                             double squeeze = 0.5, int max_rounds = 200);

// Fit for a single sample (convenience wrapper).
TautStringFit taut_fit(const Sample& sample, const RegionSpec& spec,
                       double squeeze = 0.5, int max_rounds = 200);

} // namespace msreg
