#pragma once

#include "msreg/intervals.hpp"
#include "msreg/regions.hpp"
#include "msreg/sample.hpp"

#include <optional>
#include <string>
#include <vector>

namespace msreg {

struct TestOutcome {
    std::string method;
    double statistic = 0.0;
    double critical_value = 0.0;
    bool reject = false;
    double alpha = 0.0;
    std::optional<IndexInterval> worst_interval; // interval tests only
    double realized_threshold = 0.0; // interval tests: smallest tau/gamma that rejects
};

// Max absolute cumulative sum of the differences, studentized. Rejects on >=.
TestOutcome delgado_test(const Sample& s1, const Sample& s2, double alpha,
                         std::optional<double> critical = std::nullopt);

// Adaptive partial sums of squared trigonometric coefficient differences.
// Rejects on > (Monte Carlo calibrated critical).
TestOutcome fanlin_test(const Sample& s1, const Sample& s2, double alpha,
                        std::optional<double> critical = std::nullopt);

// Interval-max difference test derived from the triangle inequality on the
// per-sample regions: statistic max_I |sum D| / (sqrt(|I|)(sigma1+sigma2)).
TestOutcome an_two_sample_test(const Sample& s1, const Sample& s2,
                               ThresholdKind kind, double threshold,
                               const IntervalScheme& scheme, double alpha = 0.95);

// Orthonormal real trigonometric transform: mean coefficient first, then
// cosine/sine pairs by increasing frequency.
std::vector<double> trig_transform(const std::vector<double>& y);

enum class BoundKind { TauAllIntervals, TauMultiScale, Star, Delgado };

BoundKind bound_kind_from_string(const std::string& s);

struct DeviationScenario {
    double eta = 0.0;
    double delta = 1.0; // fraction of the design covered by the deviation
    int n = 0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double tau = 0.0;
    double gamma = 0.0;
    double lambda = 2.0;
};

// Closed-form minimal detectable deviation height for the requested test.
double detection_bound(const DeviationScenario& scenario, BoundKind kind);

} // namespace msreg
