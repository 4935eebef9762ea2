#include "msreg/calibration.hpp"
#include "msreg/errors.hpp"
#include "msreg/io.hpp"
#include "msreg/joint.hpp"
#include "msreg/noise_scale.hpp"
#include "msreg/sim.hpp"
#include "msreg/taut_string.hpp"
#include "msreg/two_sample.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using json = nlohmann::json;
using namespace msreg;

namespace {

constexpr const char* kSpecVersion = "1";

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

IntervalScheme parse_scheme(const std::string& text) {
    if (text == "all") return IntervalScheme::all();
    if (text.rfind("multi:", 0) == 0) {
        const double lambda = std::stod(text.substr(6));
        if (!(lambda > 1.0)) throw BadRequest("scheme lambda must be > 1");
        return IntervalScheme::multi(lambda);
    }
    throw BadRequest("scheme must be all or multi:<lambda>");
}

json scheme_to_json(const IntervalScheme& s) {
    return json{{"kind", s.kind == SchemeKind::AllIntervals ? "all" : "multi"},
                {"lambda", s.lambda},
                {"singletons", s.include_singletons}};
}

struct CommonOpts {
    std::string out_dir = ".";
    std::string cache_path;
    std::string scheme_text = "multi:2";
    double alpha = 0.95;
    std::uint64_t seed = 1;
    int reps = 10000;
    int threads = 0;
    bool plot = false;

    IntervalScheme scheme() const { return parse_scheme(scheme_text); }
    std::string cache_file() const {
        if (!cache_path.empty()) return cache_path;
        if (const char* env = std::getenv("MSREG_CACHE_DIR"))
            return std::string(env) + "/calibrations.json";
        return out_dir + "/calibrations.json";
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--cache", o.cache_path, "calibration cache file");
    cmd->add_option("--scheme", o.scheme_text, "all or multi:<lambda>");
    cmd->add_option("--alpha", o.alpha, "confidence level");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--reps", o.reps, "Monte Carlo replications");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    cmd->add_flag("--plot", o.plot, "write an SVG plot");
}

void write_manifest(const CommonOpts& o, const std::string& subcommand,
                    const std::vector<std::string>& inputs, const json& extra) {
    json inputs_json = json::array();
    for (const auto& p : inputs)
        inputs_json.push_back({{"path", p}, {"fnv1a", fnv1a_file(p)}});
    json m{{"spec_version", kSpecVersion},
           {"subcommand", subcommand},
           {"inputs", inputs_json},
           {"seed", o.seed},
           {"alpha", o.alpha},
           {"replications", o.reps},
           {"scheme", o.scheme_text},
           {"details", extra}};
    std::ofstream out(o.out_dir + "/" + subcommand + "_manifest.json");
    out << m.dump(2) << "\n";
}

CalibrationResult cached_calibration(const CommonOpts& o, CalibrationTarget target, int n) {
    CalibrationRequest req;
    req.n = n;
    req.scheme = o.scheme();
    req.alpha = o.alpha;
    req.replications = o.reps;
    req.master_seed = o.seed;
    req.target = target;
    req.threads = o.threads;
    CalibrationCache cache(o.cache_file());
    return calibrate_cached(req, cache);
}

// Per-sample region specs at the adjusted level, thresholds from the cache.
std::vector<RegionSpec> joint_specs(const CommonOpts& o, const std::vector<Sample>& samples,
                                    ThresholdKind kind, json& details) {
    const double alpha_k = adjust_level(o.alpha, static_cast<int>(samples.size()));
    std::vector<RegionSpec> specs;
    details["alpha_k"] = alpha_k;
    details["thresholds"] = json::array();
    for (const auto& s : samples) {
        CommonOpts per = o;
        per.alpha = alpha_k;
        auto cal = cached_calibration(
            per, kind == ThresholdKind::Tau ? CalibrationTarget::TauSingle
                                            : CalibrationTarget::GammaSingle,
            s.n());
        RegionSpec spec{o.scheme(), sigma_median(s).value, kind, cal.threshold};
        details["thresholds"].push_back(
            {{"label", s.label}, {"n", s.n()}, {"sigma", spec.sigma}, {"threshold", cal.threshold}});
        specs.push_back(spec);
    }
    return specs;
}

json outcome_json(const TestOutcome& t) {
    json j{{"method", t.method},
           {"statistic", t.statistic},
           {"critical_value", t.critical_value},
           {"reject", t.reject},
           {"alpha", t.alpha}};
    if (t.worst_interval)
        j["worst_interval"] = {{"lo", t.worst_interval->lo}, {"hi", t.worst_interval->hi}};
    return j;
}

int run_sigma(const CommonOpts& o, const std::string& file) {
    auto samples = read_samples_csv(file);
    json out = json::array();
    for (const auto& s : samples) {
        json e{{"label", s.label},
               {"n", s.n()},
               {"sigma_median", sigma_median(s).value}};
        if (s.n() >= 100) {
            auto honest = sigma_honest(s);
            e["sigma_honest"] = honest.value;
            e["honest_index_clamped"] = honest.index_clamped;
        } else {
            e["sigma_honest"] = nullptr;
        }
        out.push_back(e);
    }
    std::cout << out.dump(2) << "\n";
    write_manifest(o, "sigma", {file}, out);
    return 0;
}

int run_calibrate(const CommonOpts& o, const std::string& target_text, int n, int walk_steps) {
    CalibrationRequest req;
    req.n = n;
    req.scheme = o.scheme();
    req.alpha = o.alpha;
    req.replications = o.reps;
    req.master_seed = o.seed;
    req.target = calibration_target_from_string(target_text);
    req.random_walk_steps = walk_steps;
    req.threads = o.threads;
    CalibrationCache cache(o.cache_file());
    auto res = calibrate_cached(req, cache);
    json out{{"target", target_text},
             {"n", n},
             {"alpha", o.alpha},
             {"quantile_level", res.quantile_level},
             {"threshold", res.threshold},
             {"raw_quantile", res.raw_quantile},
             {"standard_error", res.standard_error},
             {"replications", res.replications},
             {"seed", res.master_seed}};
    std::cout << out.dump(2) << "\n";
    write_manifest(o, "calibrate", {}, out);
    return 0;
}

std::vector<Sample> load_inputs(const std::vector<std::string>& files) {
    std::vector<Sample> samples;
    for (const auto& f : files) {
        auto part = read_samples_csv(f);
        samples.insert(samples.end(), part.begin(), part.end());
    }
    if (samples.empty()) throw EmptyInput("no samples found");
    return samples;
}

int run_jointcheck(const CommonOpts& o, const std::vector<std::string>& files,
                   const std::string& kind_text) {
    auto samples = load_inputs(files);
    const ThresholdKind kind = kind_text == "gamma" ? ThresholdKind::Gamma : ThresholdKind::Tau;
    json details;
    auto specs = joint_specs(o, samples, kind, details);
    JointRegionSpec spec{specs, o.alpha, adjust_level(o.alpha, static_cast<int>(samples.size()))};
    auto rep = joint_region_empty(samples, spec);
    json out{{"empty", rep.empty}, {"samples", json::array()}};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& mr = rep.interpolant_check.per_sample[i];
        json violations = json::array();
        for (const auto& v : mr.violations)
            violations.push_back({{"interval", {{"lo", v.interval.lo}, {"hi", v.interval.hi}}},
                                  {"statistic", v.statistic},
                                  {"threshold", v.threshold}});
        out["samples"].push_back({{"label", samples[i].label},
                                  {"is_member", mr.is_member},
                                  {"max_ratio", mr.max_ratio},
                                  {"violations", violations}});
    }
    std::cout << out.dump(2) << "\n";
    details["result"] = {{"empty", rep.empty}};
    write_manifest(o, "jointcheck", files, details);
    return 0;
}

int run_jointfit(const CommonOpts& o, const std::vector<std::string>& files,
                 const std::string& kind_text, double squeeze, int max_rounds) {
    auto samples = load_inputs(files);
    const ThresholdKind kind = kind_text == "gamma" ? ThresholdKind::Gamma : ThresholdKind::Tau;
    json details;
    auto specs = joint_specs(o, samples, kind, details);
    auto fit = joint_taut_fit(samples, specs, squeeze, max_rounds);

    const std::string fit_path = o.out_dir + "/jointfit.csv";
    write_fit_csv(fit_path, fit.grid.t, fit.values);

    json rounds = json::array();
    for (const auto& h : fit.history)
        rounds.push_back({{"round", h.round},
                          {"violating_intervals", h.violating_intervals},
                          {"squeezed_indices", h.squeezed_indices}});
    json out{{"n_local_extremes", fit.n_local_extremes},
             {"squeeze_rounds", fit.squeeze_rounds},
             {"grid_points", fit.grid.n()},
             {"fit_csv", fit_path},
             {"rounds", rounds}};
    std::cout << out.dump(2) << "\n";

    if (o.plot) {
        std::vector<SvgSeries> series;
        static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
        for (std::size_t i = 0; i < samples.size(); ++i)
            series.push_back({samples[i].t, samples[i].y, colors[i % 4], false,
                              samples[i].label.empty() ? "sample" : samples[i].label});
        series.push_back({fit.grid.t, fit.values, "#000000", true, "joint fit"});
        write_svg_plot(o.out_dir + "/jointfit.svg", series, 900, 560, "joint minimal-modality fit");
        out["svg"] = o.out_dir + "/jointfit.svg";
    }
    details["result"] = out;
    write_manifest(o, "jointfit", files, details);
    return 0;
}

int run_test(const CommonOpts& o, const std::string& method, const std::string& file_a,
             const std::string& file_b) {
    auto sa = read_samples_csv(file_a);
    auto sb = read_samples_csv(file_b);
    const Sample& s1 = sa.front();
    const Sample& s2 = sb.front();
    TestOutcome outcome;
    json details;
    if (method == "delgado") {
        auto cal = cached_calibration(o, CalibrationTarget::DelgadoFinite, s1.n());
        outcome = delgado_test(s1, s2, o.alpha, cal.threshold);
        details["critical_source"] = "calibrated finite-n";
    } else if (method == "fanlin") {
        auto cal = cached_calibration(o, CalibrationTarget::FanLinFinite, s1.n());
        outcome = fanlin_test(s1, s2, o.alpha, cal.threshold);
    } else if (method == "an") {
        auto cal = cached_calibration(o, CalibrationTarget::TauTwoSample, s1.n());
        outcome = an_two_sample_test(s1, s2, ThresholdKind::Tau, cal.threshold, o.scheme(), o.alpha);
    } else if (method == "anstar") {
        auto cal = cached_calibration(o, CalibrationTarget::GammaTwoSample, s1.n());
        outcome =
            an_two_sample_test(s1, s2, ThresholdKind::Gamma, cal.threshold, o.scheme(), o.alpha);
    } else {
        throw BadRequest("method must be delgado|fanlin|an|anstar");
    }
    json out = outcome_json(outcome);
    std::cout << out.dump(2) << "\n";
    details["outcome"] = out;
    write_manifest(o, "test", {file_a, file_b}, details);
    return 0;
}

int run_power(const CommonOpts& o, std::vector<int> g_ids, std::vector<double> etas, int n,
              int power_reps) {
    PowerConfig cfg;
    cfg.methods = {TestMethod::Delgado, TestMethod::FanLin, TestMethod::AnTau, TestMethod::AnStar};
    cfg.g_ids = std::move(g_ids);
    cfg.etas = std::move(etas);
    cfg.n = n;
    cfg.replications = power_reps;
    cfg.master_seed = o.seed;
    cfg.scheme = o.scheme();
    cfg.threads = o.threads;
    cfg.delgado_critical = cached_calibration(o, CalibrationTarget::DelgadoFinite, n).threshold;
    cfg.fanlin_critical = cached_calibration(o, CalibrationTarget::FanLinFinite, n).threshold;
    cfg.tau_two_sample = cached_calibration(o, CalibrationTarget::TauTwoSample, n).threshold;
    cfg.gamma_two_sample = cached_calibration(o, CalibrationTarget::GammaTwoSample, n).threshold;

    auto cells = run_power_study(cfg);
    const std::string csv_path = o.out_dir + "/power.csv";
    {
        std::ofstream out(csv_path);
        out << "g_id,eta,method,power,se,replications\n";
        for (const auto& c : cells)
            out << c.g_id << "," << c.eta << "," << to_string(c.method) << "," << c.power << ","
                << c.standard_error << "," << c.replications << "\n";
    }
    std::cout << "wrote " << csv_path << "\n";

    if (o.plot) {
        std::vector<PowerPanel> panels;
        for (int g : cfg.g_ids) {
            PowerPanel panel;
            panel.title = "deviation shape " + std::to_string(g);
            panel.etas = cfg.etas;
            for (auto m : cfg.methods) {
                std::vector<double> powers;
                for (double eta : cfg.etas)
                    for (const auto& c : cells)
                        if (c.g_id == g && c.eta == eta && c.method == m) powers.push_back(c.power);
                panel.curves.push_back({to_string(m), powers});
            }
            panels.push_back(panel);
        }
        write_svg_power(o.out_dir + "/power.svg", panels);
        std::cout << "wrote " << o.out_dir + "/power.svg" << "\n";
    }
    json details{{"n", n},
                 {"power_replications", power_reps},
                 {"criticals",
                  {{"delgado", cfg.delgado_critical},
                   {"fanlin", cfg.fanlin_critical},
                   {"tau", cfg.tau_two_sample},
                   {"gamma", cfg.gamma_two_sample}}}};
    write_manifest(o, "power", {}, details);
    return 0;
}

int run_bounds(const CommonOpts& o, const std::string& kind_text, DeviationScenario sc) {
    const double eta = detection_bound(sc, bound_kind_from_string(kind_text));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", eta);
    std::cout << buf << "\n";
    json details{{"kind", kind_text},
                 {"eta", eta},
                 {"n", sc.n},
                 {"delta", sc.delta},
                 {"sigma1", sc.sigma1},
                 {"sigma2", sc.sigma2},
                 {"tau", sc.tau},
                 {"gamma", sc.gamma},
                 {"lambda", sc.lambda}};
    write_manifest(o, "bounds", {}, details);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiscale adequacy regions, joint taut-string fits and two-sample tests"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* sigma_cmd = app.add_subcommand("sigma", "noise scale estimates for a csv file");
    std::string sigma_file;
    sigma_cmd->add_option("file", sigma_file, "csv input")->required();
    add_common(sigma_cmd, o);

    auto* cal_cmd = app.add_subcommand("calibrate", "Monte Carlo threshold calibration");
    std::string cal_target = "tau";
    int cal_n = 500;
    int walk_steps = 10000;
    cal_cmd->add_option("--target", cal_target,
                        "tau|gamma|tau2|gamma2|delgado|delgado-asymptotic|fanlin");
    cal_cmd->add_option("--n", cal_n, "grid size");
    cal_cmd->add_option("--walk-steps", walk_steps, "random walk steps (asymptotic target)");
    add_common(cal_cmd, o);

    auto* check_cmd = app.add_subcommand("jointcheck", "joint adequacy region emptiness check");
    std::vector<std::string> check_files;
    std::string check_kind = "tau";
    check_cmd->add_option("files", check_files, "csv inputs")->required();
    check_cmd->add_option("--kind", check_kind, "tau|gamma");
    add_common(check_cmd, o);

    auto* fit_cmd = app.add_subcommand("jointfit", "joint minimal-modality taut-string fit");
    std::vector<std::string> fit_files;
    std::string fit_kind = "tau";
    double squeeze = 0.5;
    int max_rounds = 200;
    fit_cmd->add_option("files", fit_files, "csv inputs")->required();
    fit_cmd->add_option("--kind", fit_kind, "tau|gamma");
    fit_cmd->add_option("--squeeze", squeeze, "tube squeeze factor in (0,1)");
    fit_cmd->add_option("--max-rounds", max_rounds, "squeeze round cap");
    add_common(fit_cmd, o);

    auto* test_cmd = app.add_subcommand("test", "two-sample equivalence test");
    std::string method = "delgado";
    std::vector<std::string> test_files;
    test_cmd->add_option("--method", method, "delgado|fanlin|an|anstar");
    test_cmd->add_option("files", test_files, "two csv inputs")->expected(2);
    add_common(test_cmd, o);

    auto* power_cmd = app.add_subcommand("power", "power study over deviation shapes");
    std::vector<int> g_ids{1, 2, 3, 4};
    std::vector<double> etas;
    int power_n = 500;
    int power_reps = 1000;
    power_cmd->add_option("--g", g_ids, "shape ids 1..4");
    power_cmd->add_option("--etas", etas, "deviation heights")->required();
    power_cmd->add_option("--n", power_n, "sample size");
    power_cmd->add_option("--power-reps", power_reps, "replications per cell");
    add_common(power_cmd, o);

    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form detection bounds");
    std::string bound_kind = "tau-multi";
    DeviationScenario sc;
    bounds_cmd->add_option("--kind", bound_kind, "tau-all|tau-multi|star|delgado");
    bounds_cmd->add_option("--n", sc.n, "sample size")->required();
    bounds_cmd->add_option("--sigma1", sc.sigma1, "first noise scale");
    bounds_cmd->add_option("--sigma2", sc.sigma2, "second noise scale");
    bounds_cmd->add_option("--tau", sc.tau, "tau threshold");
    bounds_cmd->add_option("--gamma", sc.gamma, "gamma threshold");
    bounds_cmd->add_option("--delta", sc.delta, "deviation fraction");
    bounds_cmd->add_option("--lambda", sc.lambda, "scheme factor");
    add_common(bounds_cmd, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sigma_cmd->parsed()) return run_sigma(o, sigma_file);
        if (cal_cmd->parsed()) return run_calibrate(o, cal_target, cal_n, walk_steps);
        if (check_cmd->parsed()) return run_jointcheck(o, check_files, check_kind);
        if (fit_cmd->parsed()) return run_jointfit(o, fit_files, fit_kind, squeeze, max_rounds);
        if (test_cmd->parsed()) return run_test(o, method, test_files[0], test_files[1]);
        if (power_cmd->parsed()) return run_power(o, g_ids, etas, power_n, power_reps);
        if (bounds_cmd->parsed()) return run_bounds(o, bound_kind, sc);
    } catch (const DomainError& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
