#pragma once

#include "msreg/intervals.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msreg {

enum class CalibrationTarget {
    TauSingle,
    GammaSingle,
    TauTwoSample,
    GammaTwoSample,
    DelgadoAsymptotic,
    DelgadoFinite,
    FanLinFinite,
};

std::string to_string(CalibrationTarget t);
CalibrationTarget calibration_target_from_string(const std::string& s);

struct CalibrationRequest {
    int n = 500;
    IntervalScheme scheme = IntervalScheme::multi(2.0);
    double alpha = 0.95;       // confidence level in (0,1)
    int replications = 10000;  // >= 100
    std::uint64_t master_seed = 1;
    CalibrationTarget target = CalibrationTarget::TauSingle;
    int random_walk_steps = 10000; // DelgadoAsymptotic only
    int threads = 0;               // 0 = hardware default
};

struct CalibrationResult {
    double threshold = 0.0;     // tau / gamma / critical value per target
    double raw_quantile = 0.0;  // quantile of the simulated statistic itself
    double quantile_level = 0.0; // level actually applied (two-sample targets adjust)
    double standard_error = 0.0;
    int replications = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> empirical_cdf_slice; // 20 order statistics around the quantile
};

CalibrationResult calibrate(const CalibrationRequest& req);

// Linearly interpolated empirical quantile (sorted input).
double quantile_sorted(const std::vector<double>& sorted, double level);

// JSON file cache keyed by (target, n, scheme, alpha, replications, seed).
// Lookups miss on any mismatch; writes are atomic (temp file + rename).
class CalibrationCache {
public:
    explicit CalibrationCache(std::string path);
    bool lookup(const CalibrationRequest& req, CalibrationResult& out) const;
    void store(const CalibrationRequest& req, const CalibrationResult& res);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Cached front end: returns the cached result when present, otherwise runs the
// simulation and stores it.
CalibrationResult calibrate_cached(const CalibrationRequest& req, CalibrationCache& cache);

} // namespace msreg
