#include "msreg/calibration.hpp"

#include "msreg/errors.hpp"
#include "msreg/noise_scale.hpp"
#include "msreg/regions.hpp"
#include "msreg/rng.hpp"
#include "msreg/two_sample.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <thread>

namespace msreg {

namespace {

using json = nlohmann::json;

struct IntervalTables {
    std::vector<int> lo, hi;
    std::vector<double> inv_sqrt_size; // 1/sqrt(|I|)
    std::vector<double> size;
    std::vector<double> log_ratio;     // log(n/|I|)
    std::vector<double> loglog_term;   // log(e + log(n/|I|))
};

IntervalTables build_tables(int n, const IntervalScheme& scheme) {
    IntervalTables t;
    for (const auto& I : enumerate_intervals(n, scheme)) {
        t.lo.push_back(I.lo);
        t.hi.push_back(I.hi);
        const double sz = I.size();
        t.size.push_back(sz);
        t.inv_sqrt_size.push_back(1.0 / std::sqrt(sz));
        const double lr = std::log(n / sz);
        t.log_ratio.push_back(lr);
        t.loglog_term.push_back(std::log(std::exp(1.0) + lr));
    }
    return t;
}

double max_abs_interval_sum(const std::vector<double>& cs, const IntervalTables& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.lo.size(); ++i) {
        const double w = std::abs(cs[t.hi[i]] - cs[t.lo[i] - 1]) * t.inv_sqrt_size[i];
        m = std::max(m, w);
    }
    return m;
}

double max_gamma_statistic(const std::vector<double>& cs, const IntervalTables& t) {
    double m = -1e300;
    for (std::size_t i = 0; i < t.lo.size(); ++i) {
        const double s = cs[t.hi[i]] - cs[t.lo[i] - 1];
        const double g = (s * s / t.size[i] - 2.0 * t.log_ratio[i]) / t.loglog_term[i];
        m = std::max(m, g);
    }
    return m;
}

std::vector<double> simulate(int replications, std::uint64_t master_seed, int threads,
                             const std::function<double(Rng&)>& statistic) {
    std::vector<double> stats(replications);
    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, replications));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w) {
        pool.emplace_back([&, w] {
            for (int r = w; r < replications; r += nthreads) {
                Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(r)));
                stats[static_cast<std::size_t>(r)] = statistic(rng);
            }
        });
    }
    for (auto& th : pool) th.join();
    std::sort(stats.begin(), stats.end());
    return stats;
}

} // namespace

double quantile_sorted(const std::vector<double>& sorted, double level) {
    if (sorted.empty()) throw BadRequest("quantile of empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * level;
    const std::size_t k = static_cast<std::size_t>(std::floor(h));
    if (k + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(k);
    return sorted[k] + frac * (sorted[k + 1] - sorted[k]);
}

std::string to_string(CalibrationTarget t) {
    switch (t) {
        case CalibrationTarget::TauSingle: return "tau";
        case CalibrationTarget::GammaSingle: return "gamma";
        case CalibrationTarget::TauTwoSample: return "tau2";
        case CalibrationTarget::GammaTwoSample: return "gamma2";
        case CalibrationTarget::DelgadoAsymptotic: return "delgado-asymptotic";
        case CalibrationTarget::DelgadoFinite: return "delgado";
        case CalibrationTarget::FanLinFinite: return "fanlin";
    }
    return "?";
}

CalibrationTarget calibration_target_from_string(const std::string& s) {
    if (s == "tau") return CalibrationTarget::TauSingle;
    if (s == "gamma") return CalibrationTarget::GammaSingle;
    if (s == "tau2") return CalibrationTarget::TauTwoSample;
    if (s == "gamma2") return CalibrationTarget::GammaTwoSample;
    if (s == "delgado-asymptotic") return CalibrationTarget::DelgadoAsymptotic;
    if (s == "delgado") return CalibrationTarget::DelgadoFinite;
    if (s == "fanlin") return CalibrationTarget::FanLinFinite;
    throw BadRequest("unknown calibration target: " + s);
}

CalibrationResult calibrate(const CalibrationRequest& req) {
    if (req.replications < 100) throw BadRequest("need at least 100 replications");
    if (!(req.alpha > 0.0 && req.alpha < 1.0)) throw BadRequest("alpha must be in (0,1)");
    if (req.n < 2) throw BadRequest("n must be >= 2");

    const int n = req.n;
    const double logn = std::log(static_cast<double>(n));
    IntervalTables tables;
    const bool needs_intervals = req.target == CalibrationTarget::TauSingle ||
                                 req.target == CalibrationTarget::GammaSingle ||
                                 req.target == CalibrationTarget::TauTwoSample ||
                                 req.target == CalibrationTarget::GammaTwoSample;
    if (needs_intervals) tables = build_tables(n, req.scheme);

    // Two-sample thresholds are calibrated at the per-sample adjusted level
    // alpha^(1/2): the interval test is the two-sample instance of the joint
    // region machinery, which splits the level across samples.
    const bool two_sample_target = req.target == CalibrationTarget::TauTwoSample ||
                                   req.target == CalibrationTarget::GammaTwoSample;
    const double level = two_sample_target ? std::sqrt(req.alpha) : req.alpha;

    std::function<double(Rng&)> statistic;
    switch (req.target) {
        case CalibrationTarget::TauSingle:
            statistic = [&, n](Rng& rng) {
                std::vector<double> z(n);
                rng.fill_normal(z);
                return max_abs_interval_sum(cumulative_sums(z), tables);
            };
            break;
        case CalibrationTarget::GammaSingle:
            statistic = [&, n](Rng& rng) {
                std::vector<double> z(n);
                rng.fill_normal(z);
                return max_gamma_statistic(cumulative_sums(z), tables);
            };
            break;
        case CalibrationTarget::TauTwoSample:
        case CalibrationTarget::GammaTwoSample: {
            const bool gamma_kind = req.target == CalibrationTarget::GammaTwoSample;
            statistic = [&, n, gamma_kind](Rng& rng) {
                // Difference of two unit-noise samples, scaled by sigma1+sigma2 = 2.
                std::vector<double> d(n);
                for (double& v : d) v = (rng.normal() - rng.normal()) / 2.0;
                const auto cs = cumulative_sums(d);
                return gamma_kind ? max_gamma_statistic(cs, tables)
                                  : max_abs_interval_sum(cs, tables);
            };
            break;
        }
        case CalibrationTarget::DelgadoAsymptotic: {
            const int m = req.random_walk_steps;
            statistic = [m](Rng& rng) {
                double s = 0.0, peak = 0.0;
                for (int i = 0; i < m; ++i) {
                    s += rng.normal();
                    peak = std::max(peak, std::abs(s));
                }
                return peak / std::sqrt(static_cast<double>(m));
            };
            break;
        }
        case CalibrationTarget::DelgadoFinite:
            statistic = [n](Rng& rng) {
                std::vector<double> d(n);
                for (double& v : d) v = rng.normal() - rng.normal();
                const double sd = sigma_median(d).value;
                double s = 0.0, peak = 0.0;
                for (double v : d) {
                    s += v;
                    peak = std::max(peak, std::abs(s));
                }
                return peak / (sd * std::sqrt(static_cast<double>(n)));
            };
            break;
        case CalibrationTarget::FanLinFinite:
            statistic = [n](Rng& rng) {
                std::vector<double> y1(n), y2(n);
                rng.fill_normal(y1);
                rng.fill_normal(y2);
                const double s1 = sigma_median(y1).value;
                const double s2 = sigma_median(y2).value;
                std::vector<double> d(n);
                for (int i = 0; i < n; ++i) d[i] = y2[i] - y1[i];
                const auto td = trig_transform(d);
                const double var = s1 * s1 + s2 * s2;
                double acc = 0.0, peak = 0.0;
                for (int m = 1; m <= n; ++m) {
                    acc += td[m - 1] * td[m - 1] / var - 1.0;
                    peak = std::max(peak, std::abs(acc) / std::sqrt(static_cast<double>(m)));
                }
                return peak;
            };
            break;
    }

    const auto stats = simulate(req.replications, req.master_seed, req.threads, statistic);
    const double q = quantile_sorted(stats, level);

    CalibrationResult res;
    res.raw_quantile = q;
    res.quantile_level = level;
    res.replications = req.replications;
    res.master_seed = req.master_seed;

    switch (req.target) {
        case CalibrationTarget::TauSingle:
        case CalibrationTarget::TauTwoSample:
            res.threshold = q * q / logn;
            break;
        default:
            res.threshold = q;
            break;
    }

    const std::size_t m = stats.size();
    const double h = (static_cast<double>(m) - 1.0) * level;
    const std::size_t k = static_cast<std::size_t>(std::floor(h));
    const std::size_t band = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(std::sqrt(level * (1.0 - level) * m))));
    const double qlo = stats[k >= band ? k - band : 0];
    const double qhi = stats[std::min(m - 1, k + band)];
    res.standard_error = 0.5 * (qhi - qlo);

    const std::size_t from = k >= 9 ? k - 9 : 0;
    for (std::size_t i = from; i < std::min(m, from + 20); ++i)
        res.empirical_cdf_slice.push_back(stats[i]);
    return res;
}

// ---- cache ----

namespace {

json scheme_json(const IntervalScheme& s) {
    return json{{"kind", s.kind == SchemeKind::AllIntervals ? "all" : "multi"},
                {"lambda", s.lambda},
                {"singletons", s.include_singletons}};
}

json key_json(const CalibrationRequest& req) {
    json j{{"target", to_string(req.target)},
           {"n", req.n},
           {"scheme", scheme_json(req.scheme)},
           {"alpha", req.alpha},
           {"replications", req.replications},
           {"seed", req.master_seed}};
    if (req.target == CalibrationTarget::DelgadoAsymptotic)
        j["random_walk_steps"] = req.random_walk_steps;
    return j;
}

json load_cache_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return json{{"version", 1}, {"entries", json::array()}};
    json j;
    try {
        in >> j;
    } catch (const json::exception&) {
        return json{{"version", 1}, {"entries", json::array()}};
    }
    if (!j.contains("entries") || !j["entries"].is_array())
        return json{{"version", 1}, {"entries", json::array()}};
    return j;
}

} // namespace

CalibrationCache::CalibrationCache(std::string path) : path_(std::move(path)) {}

bool CalibrationCache::lookup(const CalibrationRequest& req, CalibrationResult& out) const {
    const json key = key_json(req);
    const json db = load_cache_file(path_);
    for (const auto& e : db["entries"]) {
        if (e.contains("key") && e["key"] == key) {
            const auto& r = e["result"];
            out = CalibrationResult{};
            out.threshold = r.at("threshold").get<double>();
            out.raw_quantile = r.at("raw_quantile").get<double>();
            out.quantile_level = r.at("quantile_level").get<double>();
            out.standard_error = r.at("standard_error").get<double>();
            out.replications = r.at("replications").get<int>();
            out.master_seed = r.at("seed").get<std::uint64_t>();
            out.empirical_cdf_slice = r.at("cdf_slice").get<std::vector<double>>();
            return true;
        }
    }
    return false;
}

void CalibrationCache::store(const CalibrationRequest& req, const CalibrationResult& res) {
    json db = load_cache_file(path_);
    json entry{{"key", key_json(req)},
               {"result",
                {{"threshold", res.threshold},
                 {"raw_quantile", res.raw_quantile},
                 {"quantile_level", res.quantile_level},
                 {"standard_error", res.standard_error},
                 {"replications", res.replications},
                 {"seed", res.master_seed},
                 {"cdf_slice", res.empirical_cdf_slice}}}};
    db["entries"].push_back(std::move(entry));
    const std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp);
        out << db.dump(2) << "\n";
    }
    std::rename(tmp.c_str(), path_.c_str());
}

CalibrationResult calibrate_cached(const CalibrationRequest& req, CalibrationCache& cache) {
    CalibrationResult res;
    if (cache.lookup(req, res)) return res;
    res = calibrate(req);
    cache.store(req, res);
    return res;
}

} // namespace msreg
