#include "msreg/two_sample.hpp"

#include "msreg/errors.hpp"
#include "msreg/noise_scale.hpp"

#include <cmath>
#include <limits>

namespace msreg {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_equal_support(const Sample& s1, const Sample& s2) {
    if (s1.t != s2.t) throw SupportMismatch("samples must share identical t vectors");
}

std::vector<double> differences(const Sample& s1, const Sample& s2) {
    std::vector<double> d(s1.y.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = s1.y[i] - s2.y[i];
    return d;
}

} // namespace

std::vector<double> trig_transform(const std::vector<double>& y) {
    const int n = static_cast<int>(y.size());
    std::vector<double> out(n);
    // Size-n tables indexed by (i*j) mod n keep the transform O(n^2) with exact
    // angle reduction.
    std::vector<double> cs(n), sn(n);
    for (int r = 0; r < n; ++r) {
        cs[r] = std::cos(2.0 * kPi * r / n);
        sn[r] = std::sin(2.0 * kPi * r / n);
    }
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double pair_norm = std::sqrt(2.0 / n);

    double mean_sum = 0.0;
    for (double v : y) mean_sum += v;
    out[0] = mean_sum * inv_sqrt_n;

    const int pairs = (n - 1) / 2;
    for (int j = 1; j <= pairs; ++j) {
        double c = 0.0, s = 0.0;
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            c += y[i] * cs[idx];
            s += y[i] * sn[idx];
            idx += j;
            if (idx >= static_cast<std::size_t>(n)) idx -= n;
        }
        out[2 * j - 1] = c * pair_norm;
        out[2 * j] = s * pair_norm;
    }
    if (n % 2 == 0) {
        double alt = 0.0;
        for (int i = 0; i < n; ++i) alt += (i % 2 == 0 ? y[i] : -y[i]);
        out[n - 1] = alt * inv_sqrt_n;
    }
    return out;
}

TestOutcome delgado_test(const Sample& s1, const Sample& s2, double alpha,
                         std::optional<double> critical) {
    require_equal_support(s1, s2);
    const auto d = differences(s1, s2);
    const int n = static_cast<int>(d.size());
    const double sd = sigma_median(d).value;
    double s = 0.0, peak = 0.0;
    for (double v : d) {
        s += v;
        peak = std::max(peak, std::abs(s));
    }
    TestOutcome out;
    out.method = "delgado";
    out.alpha = alpha;
    out.statistic = sd > 0.0 ? peak / (sd * std::sqrt(static_cast<double>(n)))
                             : (peak > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    out.critical_value = critical.value_or(2.24);
    out.reject = out.statistic >= out.critical_value;
    return out;
}

TestOutcome fanlin_test(const Sample& s1, const Sample& s2, double alpha,
                        std::optional<double> critical) {
    require_equal_support(s1, s2);
    if (!critical) throw MissingCalibration("fanlin_test needs a calibrated critical value");
    const int n = s1.n();
    const double v1 = sigma_median(s1).value;
    const double v2 = sigma_median(s2).value;
    const double var = v1 * v1 + v2 * v2;
    auto d = differences(s2, s1);
    const auto td = trig_transform(d);
    double acc = 0.0, peak = 0.0;
    for (int m = 1; m <= n; ++m) {
        acc += td[m - 1] * td[m - 1] / var - 1.0;
        peak = std::max(peak, std::abs(acc) / std::sqrt(static_cast<double>(m)));
    }
    TestOutcome out;
    out.method = "fanlin";
    out.alpha = alpha;
    out.statistic = peak;
    out.critical_value = *critical;
    out.reject = out.statistic > out.critical_value;
    return out;
}

TestOutcome an_two_sample_test(const Sample& s1, const Sample& s2, ThresholdKind kind,
                               double threshold, const IntervalScheme& scheme, double alpha) {
    require_equal_support(s1, s2);
    const auto d = differences(s1, s2);
    const int n = static_cast<int>(d.size());
    const double scale = sigma_median(s1).value + sigma_median(s2).value;
    const auto cs = cumulative_sums(d);
    const double logn = std::log(static_cast<double>(n));

    TestOutcome out;
    out.method = kind == ThresholdKind::Tau ? "an" : "anstar";
    out.alpha = alpha;
    out.critical_value = threshold;

    // statistic reported in threshold units: the smallest tau (resp. gamma)
    // that would flag the worst interval.
    double worst = -1e300;
    IndexInterval worst_I;
    for (const auto& I : enumerate_intervals(n, scheme)) {
        const double w = std::abs(cs[I.hi] - cs[I.lo - 1]) /
                         (std::sqrt(static_cast<double>(I.size())) * scale);
        double realized;
        if (kind == ThresholdKind::Tau) {
            realized = w * w / logn;
        } else {
            const double lr = std::log(static_cast<double>(n) / I.size());
            realized = (w * w - 2.0 * lr) / std::log(std::exp(1.0) + lr);
        }
        if (realized > worst) {
            worst = realized;
            worst_I = I;
        }
    }
    out.statistic = worst;
    out.realized_threshold = worst;
    out.worst_interval = worst_I;
    out.reject = worst > threshold;
    return out;
}

BoundKind bound_kind_from_string(const std::string& s) {
    if (s == "tau-all") return BoundKind::TauAllIntervals;
    if (s == "tau-multi") return BoundKind::TauMultiScale;
    if (s == "star") return BoundKind::Star;
    if (s == "delgado") return BoundKind::Delgado;
    throw BadRequest("unknown bound kind: " + s);
}

double detection_bound(const DeviationScenario& sc, BoundKind kind) {
    if (!(sc.delta > 0.0 && sc.delta <= 1.0)) throw DeltaOutOfRange("delta must be in (0,1]");
    if (sc.n < 2) throw BadRequest("n must be >= 2");
    const double logn = std::log(static_cast<double>(sc.n));
    const double ssum = sc.sigma1 + sc.sigma2;
    switch (kind) {
        case BoundKind::TauAllIntervals:
            return 2.0 * ssum * std::sqrt(sc.tau * logn / sc.n) / std::sqrt(sc.delta);
        case BoundKind::TauMultiScale:
            return std::sqrt(sc.lambda) * 2.0 * ssum *
                   std::sqrt(sc.tau * logn / sc.n) / std::sqrt(sc.delta);
        case BoundKind::Star: {
            const double d = std::sqrt(sc.delta);
            const double h = d / (2.0 * std::log(1.0 / d) +
                                  sc.gamma * std::log(std::exp(1.0) + std::log(1.0 / d)));
            return 2.0 * ssum / (std::sqrt(static_cast<double>(sc.n)) * h);
        }
        case BoundKind::Delgado: {
            const double sigma = std::sqrt(sc.sigma1 * sc.sigma1 + sc.sigma2 * sc.sigma2);
            return 4.48 * sigma / (sc.delta * std::sqrt(static_cast<double>(sc.n)));
        }
    }
    throw BadRequest("unknown bound kind");
}

} // namespace msreg
