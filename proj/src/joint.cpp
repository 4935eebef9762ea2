#include "msreg/joint.hpp"

#include "msreg/errors.hpp"

#include <cmath>

namespace msreg {

double adjust_level(double alpha, int k) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw BadRequest("alpha must be in (0,1)");
    if (k < 1) throw BadRequest("k must be >= 1");
    return std::pow(alpha, 1.0 / k);
}

namespace {

std::vector<std::vector<int>> grid_indices(const MergedGrid& grid, std::size_t k) {
    std::vector<std::vector<int>> idx(k);
    for (int m = 0; m < grid.n(); ++m)
        for (auto [si, pi] : grid.source_map[m]) {
            if (static_cast<std::size_t>(pi) >= idx[si].size())
                idx[si].resize(pi + 1);
            idx[si][pi] = m;
        }
    return idx;
}

} // namespace

JointMembershipReport joint_contains(const std::vector<double>& g,
                                     const std::vector<Sample>& samples,
                                     const JointRegionSpec& spec) {
    if (samples.size() != spec.per_sample.size())
        throw LengthMismatch("one region spec required per sample");
    std::vector<double> scales(spec.per_sample.size());
    for (std::size_t i = 0; i < scales.size(); ++i) scales[i] = spec.per_sample[i].sigma;
    const MergedGrid grid = merge_samples(samples, scales);
    if (g.size() != static_cast<std::size_t>(grid.n()))
        throw LengthMismatch("candidate needs one value per merged-grid point");
    const auto idx = grid_indices(grid, samples.size());

    JointMembershipReport rep;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        std::vector<double> residuals(samples[s].y.size());
        for (std::size_t p = 0; p < residuals.size(); ++p)
            residuals[p] = samples[s].y[p] - g[idx[s][p]];
        rep.per_sample.push_back(residuals_within_region(residuals, spec.per_sample[s]));
        rep.combined = rep.combined && rep.per_sample.back().is_member;
    }
    return rep;
}

EmptinessReport joint_region_empty(const std::vector<Sample>& samples,
                                   const JointRegionSpec& spec) {
    std::vector<double> scales(spec.per_sample.size());
    for (std::size_t i = 0; i < scales.size(); ++i) scales[i] = spec.per_sample[i].sigma;
    const MergedGrid grid = merge_samples(samples, scales);

    EmptinessReport rep;
    rep.interpolant_check = joint_contains(grid.y, samples, spec);
    rep.empty = !rep.interpolant_check.combined;
    if (!rep.empty) rep.witness = grid.y;
    return rep;
}

} // namespace msreg
