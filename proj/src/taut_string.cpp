#include "msreg/taut_string.hpp"

#include "msreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace msreg {

namespace {

struct HullPoint {
    int index; // grid index 0..n
    double x;
    double y;
};

double slope(const HullPoint& a, const HullPoint& b) { return (b.y - a.y) / (b.x - a.x); }

} // namespace

double TautString::at(double x) const {
    if (knot_x.empty()) return 0.0;
    if (x <= knot_x.front()) return knot_value.front();
    if (x >= knot_x.back()) return knot_value.back();
    auto it = std::upper_bound(knot_x.begin(), knot_x.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - knot_x.begin());
    const double t = (x - knot_x[j - 1]) / (knot_x[j] - knot_x[j - 1]);
    return knot_value[j - 1] + t * (knot_value[j] - knot_value[j - 1]);
}

std::vector<double> TautString::segment_slopes(const std::vector<double>& x) const {
    // One slope per grid cell (x[m-1], x[m]]; knots sit on grid abscissae.
    std::vector<double> slopes(x.size() - 1);
    std::size_t seg = 0;
    for (std::size_t m = 1; m < x.size(); ++m) {
        while (seg + 1 < knot_index.size() && knot_index[seg + 1] < static_cast<int>(m)) ++seg;
        const std::size_t hi = std::min(seg + 1, knot_index.size() - 1);
        slopes[m - 1] = (knot_value[hi] - knot_value[seg]) / (knot_x[hi] - knot_x[seg]);
    }
    return slopes;
}

TautString taut_string_solve(const Tube& tube) {
    const int n = static_cast<int>(tube.x.size()) - 1;
    if (n < 1) throw InfeasibleTube("tube needs at least two abscissae");
    for (int i = 0; i <= n; ++i)
        if (tube.lower[i] > tube.upper[i])
            throw InfeasibleTube("lower bound above upper bound at index " + std::to_string(i));

    TautString out;
    auto emit = [&](const HullPoint& p, KnotTouch touch) {
        out.knot_index.push_back(p.index);
        out.knot_x.push_back(p.x);
        out.knot_value.push_back(p.y);
        out.touch.push_back(touch);
    };

    HullPoint anchor{0, tube.x[0], tube.lower[0]};
    emit(anchor, KnotTouch::Endpoint);

    // uh: convex chain over upper bounds (slopes increasing), front = anchor.
    // lh: concave chain over lower bounds (slopes decreasing), front = anchor.
    std::deque<HullPoint> uh{anchor}, lh{anchor};

    auto push_upper = [&](const HullPoint& p) {
        while (uh.size() >= 2 && slope(uh[uh.size() - 2], uh.back()) >= slope(uh.back(), p))
            uh.pop_back();
        uh.push_back(p);
    };
    auto push_lower = [&](const HullPoint& p) {
        while (lh.size() >= 2 && slope(lh[lh.size() - 2], lh.back()) <= slope(lh.back(), p))
            lh.pop_back();
        lh.push_back(p);
    };
    // After re-anchoring, rebuild the opposite chain's front so it is a valid
    // hull seen from the new anchor.
    auto reanchor_front = [&](std::deque<HullPoint>& h, bool concave) {
        while (h.size() >= 2 && h[1].x <= anchor.x) h.erase(h.begin() + 1);
        h[0] = anchor;
        while (h.size() >= 3) {
            const double s01 = slope(h[0], h[1]);
            const double s12 = slope(h[1], h[2]);
            if (concave ? s01 <= s12 : s01 >= s12)
                h.erase(h.begin() + 1);
            else
                break;
        }
        if (h.size() == 2 && h[1].x <= anchor.x) h.pop_back();
    };

    for (int i = 1; i <= n; ++i) {
        push_upper({i, tube.x[i], tube.upper[i]});
        push_lower({i, tube.x[i], tube.lower[i]});
        // Bend while no straight direction from the anchor satisfies both sides.
        while (uh.size() >= 2 && lh.size() >= 2 && slope(lh[0], lh[1]) > slope(uh[0], uh[1])) {
            if (uh[1].x <= lh[1].x) {
                anchor = uh[1];
                emit(anchor, KnotTouch::UpperBoundary);
                uh.pop_front();
                reanchor_front(lh, true);
            } else {
                anchor = lh[1];
                emit(anchor, KnotTouch::LowerBoundary);
                lh.pop_front();
                reanchor_front(uh, false);
            }
        }
    }

    const HullPoint endpoint{n, tube.x[n], tube.lower[n]};
    if (out.knot_index.back() != n) {
        emit(endpoint, KnotTouch::Endpoint);
    } else {
        out.touch.back() = KnotTouch::Endpoint;
    }
    return out;
}

int count_local_extremes(const std::vector<double>& values) {
    int count = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++count;
        last_sign = sign;
    }
    return count;
}

namespace {

Tube make_tube(const MergedGrid& grid, const std::vector<double>& half_width) {
    const int n = grid.n();
    Tube tube;
    tube.x.resize(n + 1);
    tube.lower.resize(n + 1);
    tube.upper.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        tube.x[i] = grid.cum_w[i];
        tube.lower[i] = grid.cum_y[i] - half_width[i];
        tube.upper[i] = grid.cum_y[i] + half_width[i];
    }
    tube.lower[0] = tube.upper[0] = grid.cum_y[0];
    tube.lower[n] = tube.upper[n] = grid.cum_y[n];
    return tube;
}

} // namespace

TautStringFit joint_taut_fit(const std::vector<Sample>& samples,
                             const std::vector<RegionSpec>& specs, double squeeze,
                             int max_rounds) {
    if (samples.size() != specs.size())
        throw LengthMismatch("one region spec required per sample");
    if (!(squeeze > 0.0 && squeeze < 1.0)) throw BadRequest("squeeze factor must be in (0,1)");

    std::vector<double> scales(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) scales[i] = specs[i].sigma;
    MergedGrid grid = merge_samples(samples, scales);
    const int n = grid.n();

    // Grid index of each sample point on the merged grid.
    std::vector<std::vector<int>> grid_index(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s)
        grid_index[s].resize(samples[s].t.size());
    for (int m = 0; m < n; ++m)
        for (auto [si, pi] : grid.source_map[m]) grid_index[si][pi] = m;

    auto check_samples = [&](const std::vector<double>& fit_values,
                             std::vector<MembershipReport>& reports) {
        bool ok = true;
        reports.clear();
        for (std::size_t s = 0; s < samples.size(); ++s) {
            std::vector<double> residuals(samples[s].y.size());
            for (std::size_t p = 0; p < residuals.size(); ++p)
                residuals[p] = samples[s].y[p] - fit_values[grid_index[s][p]];
            reports.push_back(residuals_within_region(residuals, specs[s]));
            ok = ok && reports.back().is_member;
        }
        return ok;
    };

    // The merged interpolant is the limit of the squeeze; if even it is
    // rejected by some sample's region, no function can be adequate for all.
    std::vector<MembershipReport> reports;
    if (!check_samples(grid.y, reports)) {
        throw NoJointApproximation("the merged interpolant fails a sample's region check");
    }

    // Initial half-width: smallest radius putting the chord inside, plus one.
    const double x0 = grid.cum_w[0], xn = grid.cum_w[n];
    const double y0 = grid.cum_y[0], yn = grid.cum_y[n];
    double dmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double chord = y0 + (yn - y0) * (grid.cum_w[i] - x0) / (xn - x0);
        dmax = std::max(dmax, std::abs(grid.cum_y[i] - chord));
    }
    std::vector<double> half_width(n + 1, dmax + 1.0);

    TautStringFit fit;
    fit.grid = grid;
    for (int round = 0;; ++round) {
        Tube tube = make_tube(grid, half_width);
        const TautString string = taut_string_solve(tube);
        fit.values = string.segment_slopes(tube.x);
        fit.squeeze_rounds = round;
        fit.final_tube = std::move(tube);
        if (check_samples(fit.values, reports)) break;
        if (round >= max_rounds)
            throw MaxRoundsExceeded("no adequate fit after " + std::to_string(max_rounds) +
                                    " squeeze rounds");
        // Shrink the tube at both cell endpoints of every grid point covered
        // by a violating interval of any sample.
        std::vector<char> mark(n + 1, 0);
        int violating = 0;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            for (const auto& v : reports[s].violations) {
                ++violating;
                const int glo = grid_index[s][v.interval.lo - 1];
                const int ghi = grid_index[s][v.interval.hi - 1];
                for (int m = glo; m <= ghi; ++m) {
                    mark[m + 1] = 1;
                    mark[m] = 1;
                }
            }
        }
        int squeezed = 0;
        for (int i = 1; i < n; ++i) {
            if (mark[i]) {
                half_width[i] *= squeeze;
                ++squeezed;
            }
        }
        fit.history.push_back({round, violating, squeezed});
    }
    fit.n_local_extremes = count_local_extremes(fit.values);
    return fit;
}

TautStringFit taut_fit(const Sample& sample, const RegionSpec& spec, double squeeze,
                       int max_rounds) {
    return joint_taut_fit({sample}, {spec}, squeeze, max_rounds);
}

} // namespace msreg
