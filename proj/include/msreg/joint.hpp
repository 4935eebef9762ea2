#pragma once

#include "msreg/regions.hpp"
#include "msreg/sample.hpp"

#include <vector>

namespace msreg {

struct JointRegionSpec {
    std::vector<RegionSpec> per_sample; // thresholds already at the adjusted level
    double alpha = 0.95;                // overall level
    double alpha_k = 0.95;              // per-sample level alpha^(1/k)
};

// alpha^(1/k).
double adjust_level(double alpha, int k);

struct JointMembershipReport {
    std::vector<MembershipReport> per_sample;
    bool combined = true;
};

// g given on the merged grid; membership is the conjunction of the per-sample
// checks of g restricted to each sample's support.
JointMembershipReport joint_contains(const std::vector<double>& g,
                                     const std::vector<Sample>& samples,
                                     const JointRegionSpec& spec);

struct EmptinessReport {
    bool empty = false;                 // interpolant infeasible
    std::vector<double> witness;        // merged interpolant when non-empty
    JointMembershipReport interpolant_check;
};

// Certified non-empty when the merged weighted interpolant is a joint member.
EmptinessReport joint_region_empty(const std::vector<Sample>& samples,
                                   const JointRegionSpec& spec);

} // namespace msreg
