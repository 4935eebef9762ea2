#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msreg/errors.hpp"
#include "msreg/regions.hpp"
#include "msreg/rng.hpp"

#include <cmath>

using namespace msreg;

namespace {

Sample grid_sample(const std::vector<double>& y) {
    Sample s;
    const int n = static_cast<int>(y.size());
    for (int i = 1; i <= n; ++i) s.t.push_back(static_cast<double>(i) / n);
    s.y = y;
    return s;
}

} // namespace

TEST_CASE("w statistic basics") {
    std::vector<double> zeros(8, 0.0);
    CHECK(w_statistic(zeros, {2, 5}) == 0.0);
    std::vector<double> c(8, 1.5);
    CHECK(w_statistic(c, {3, 6}) == doctest::Approx(2.0 * 1.5)); // 4c / sqrt(4)
    CHECK(w_statistic(c, {4, 4}) == doctest::Approx(1.5));
    CHECK_THROWS_AS(w_statistic(c, {0, 3}), IndexOutOfRange);
    CHECK_THROWS_AS(w_statistic(c, {5, 9}), IndexOutOfRange);
}

TEST_CASE("cumulative sums") {
    CHECK(cumulative_sums({1, 2, 3}) == std::vector<double>{0, 1, 3, 6});
    CHECK(cumulative_sums({}) == std::vector<double>{0});
    CHECK(cumulative_sums({-1, 1}) == std::vector<double>{0, -1, 0});
}

TEST_CASE("interpolating the data is always a member") {
    auto s = grid_sample({1.0, -2.0, 0.5, 3.0});
    RegionSpec spec{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Tau, 0.001};
    auto rep = region_contains(s.y, s, spec);
    CHECK(rep.is_member);
    CHECK(rep.max_ratio == 0.0);

    RegionSpec star{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Gamma, 0.0};
    CHECK(region_contains_star(s.y, s, star).is_member);
}

TEST_CASE("constant offset beyond the bound violates every singleton") {
    const int n = 8;
    std::vector<double> y(n, 0.0);
    auto s = grid_sample(y);
    RegionSpec spec{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Tau, 1.0};
    const double bound = std::sqrt(std::log(static_cast<double>(n)));
    std::vector<double> g(n, -2.0 * bound); // residual +2*bound everywhere
    auto rep = region_contains(g, s, spec);
    CHECK_FALSE(rep.is_member);
    int singleton_violations = 0;
    for (auto& v : rep.violations)
        if (v.interval.lo == v.interval.hi) ++singleton_violations;
    CHECK(singleton_violations == n);
}

TEST_CASE("cancellation: membership decided by singletons for (a,-a)") {
    auto s = grid_sample({2.0, -2.0});
    RegionSpec spec{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Tau, 4.0};
    std::vector<double> g(2, 0.0);
    auto rep = region_contains(g, s, spec);
    // full interval statistic is 0; only singletons can bind
    for (auto& v : rep.violations) CHECK(v.interval.size() == 1);
}

TEST_CASE("star threshold analytic values") {
    // |I| = n: sqrt(gamma * loglog(e^e)) = sqrt(gamma)
    CHECK(star_threshold(100, 100, 2.56) == doctest::Approx(1.6));
    // gamma = 0, |I| = 1: sqrt(2 log n)
    CHECK(star_threshold(100, 1, 0.0) == doctest::Approx(std::sqrt(2.0 * std::log(100.0))));
    // negative radicand clamps to zero
    CHECK(star_threshold(100, 100, -1.0) == 0.0);
}

TEST_CASE("membership is monotone in tau, gamma and sigma") {
    Rng rng(3);
    std::vector<double> y(32);
    rng.fill_normal(y);
    auto s = grid_sample(y);
    std::vector<double> g(32, 0.0);
    auto scheme = IntervalScheme::multi(2.0);
    bool prev = false;
    for (double tau : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        bool member = region_contains(g, s, {scheme, 1.0, ThresholdKind::Tau, tau}).is_member;
        if (prev) CHECK(member);
        prev = member;
    }
    prev = false;
    for (double gamma : {-1.0, 0.0, 2.0, 5.0, 20.0}) {
        bool member =
            region_contains_star(g, s, {scheme, 1.0, ThresholdKind::Gamma, gamma}).is_member;
        if (prev) CHECK(member);
        prev = member;
    }
    prev = false;
    for (double sigma : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        bool member = region_contains(g, s, {scheme, sigma, ThresholdKind::Tau, 2.0}).is_member;
        if (prev) CHECK(member);
        prev = member;
    }
}

TEST_CASE("shared shift of data and candidate leaves statistics unchanged") {
    Rng rng(5);
    std::vector<double> y(16), g(16);
    rng.fill_normal(y);
    rng.fill_normal(g);
    auto s1 = grid_sample(y);
    auto y2 = y;
    auto g2 = g;
    for (auto& v : y2) v += 3.0;
    for (auto& v : g2) v += 3.0;
    auto s2 = grid_sample(y2);
    RegionSpec spec{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Tau, 2.0};
    CHECK(region_contains(g, s1, spec).max_ratio ==
          doctest::Approx(region_contains(g2, s2, spec).max_ratio));
}

TEST_CASE("all-intervals membership implies multiscale membership") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> y(20);
        rng.fill_normal(y);
        auto s = grid_sample(y);
        std::vector<double> g(20, 0.2);
        RegionSpec all{IntervalScheme::all(), 1.0, ThresholdKind::Tau, 1.2};
        RegionSpec multi{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Tau, 1.2};
        if (region_contains(g, s, all).is_member)
            CHECK(region_contains(g, s, multi).is_member);
    }
}

TEST_CASE("length mismatch is rejected") {
    auto s = grid_sample({1.0, 2.0, 3.0});
    RegionSpec spec{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Tau, 2.0};
    CHECK_THROWS_AS(region_contains({1.0}, s, spec), LengthMismatch);
}

TEST_CASE("violations are sorted by interval") {
    auto s = grid_sample(std::vector<double>(16, 0.0));
    std::vector<double> g(16, 10.0);
    RegionSpec spec{IntervalScheme::multi(2.0), 1.0, ThresholdKind::Tau, 1.0};
    auto rep = region_contains(g, s, spec);
    REQUIRE(rep.violations.size() > 1);
    for (std::size_t i = 1; i < rep.violations.size(); ++i) {
        auto& a = rep.violations[i - 1].interval;
        auto& b = rep.violations[i].interval;
        CHECK((a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi)));
    }
}
