#pragma once

#include "msreg/intervals.hpp"
#include "msreg/sample.hpp"

#include <vector>

namespace msreg {

enum class ThresholdKind { Tau, Gamma };

struct RegionSpec {
    IntervalScheme scheme;
    double sigma = 1.0;             // > 0
    ThresholdKind kind = ThresholdKind::Tau;
    double threshold = 0.0;         // tau (> 0) or gamma (any real)
};

struct Violation {
    IndexInterval interval;
    double statistic = 0.0;
    double threshold = 0.0;
};

struct MembershipReport {
    bool is_member = true;
    std::vector<Violation> violations; // sorted by (lo, hi)
    double max_ratio = 0.0;            // largest statistic / threshold
};

// (sum of residuals over I) / sqrt(|I|).
double w_statistic(const std::vector<double>& residuals, const IndexInterval& I);

// Prefix sums: S_0 = 0, S_m = S_{m-1} + v_m.
std::vector<double> cumulative_sums(const std::vector<double>& values);

// Constant-threshold region: |w| <= sigma * sqrt(tau * log n) on every interval.
MembershipReport region_contains(const std::vector<double>& g, const Sample& sample,
                                 const RegionSpec& spec);

// Scale-dependent region: |w| <= sigma * sqrt(2 log(n/|I|) + gamma * loglog(e^e n/|I|)),
// negative radicand clamped to threshold 0.
MembershipReport region_contains_star(const std::vector<double>& g, const Sample& sample,
                                      const RegionSpec& spec);

// Threshold helpers (sigma = 1).
double tau_threshold(int n, double tau);
double star_threshold(int n, int interval_size, double gamma);

// Membership over precomputed residuals (used by the joint fit loop).
MembershipReport residuals_within_region(const std::vector<double>& residuals,
                                         const RegionSpec& spec);

} // namespace msreg
