#include "msreg/sim.hpp"

#include "msreg/errors.hpp"
#include "msreg/rng.hpp"
#include "msreg/two_sample.hpp"

#include <cmath>
#include <thread>

namespace msreg {

ScenarioShape scenario_shape_from_int(int id) {
    switch (id) {
        case 1: return ScenarioShape::G1Shift;
        case 2: return ScenarioShape::G2Split;
        case 3: return ScenarioShape::G3Bump;
        case 4: return ScenarioShape::G4Dipole;
    }
    throw BadRequest("scenario id must be 1..4");
}

double scenario_g(ScenarioShape shape, double eta, double u, double t) {
    switch (shape) {
        case ScenarioShape::G1Shift:
            return eta;
        case ScenarioShape::G2Split:
            return t <= 0.5 ? eta : -eta;
        case ScenarioShape::G3Bump:
            return (t > u && t <= u + 0.25) ? eta : 0.0;
        case ScenarioShape::G4Dipole:
            if (t > u && t <= u + 0.125) return eta;
            if (t > u + 0.125 && t <= u + 0.25) return -eta;
            return 0.0;
    }
    return 0.0;
}

std::pair<Sample, Sample> generate_scenario(const Scenario& scenario) {
    const int n = scenario.n;
    Rng rng(scenario.seed);
    double u = 0.0;
    if (scenario.shape == ScenarioShape::G3Bump || scenario.shape == ScenarioShape::G4Dipole)
        u = 0.75 * rng.uniform();

    Sample s1, s2;
    s1.label = "sample1";
    s2.label = "sample2";
    s1.t.resize(n);
    s1.y.resize(n);
    s2.t.resize(n);
    s2.y.resize(n);
    for (int i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        s1.t[i - 1] = t;
        s2.t[i - 1] = t;
        s1.y[i - 1] = rng.normal();
        s2.y[i - 1] = scenario_g(scenario.shape, scenario.eta, u, t) + rng.normal();
    }
    return {std::move(s1), std::move(s2)};
}

std::string to_string(TestMethod m) {
    switch (m) {
        case TestMethod::Delgado: return "delgado";
        case TestMethod::FanLin: return "fanlin";
        case TestMethod::AnTau: return "an";
        case TestMethod::AnStar: return "anstar";
    }
    return "?";
}

std::vector<PowerCell> run_power_study(const PowerConfig& config) {
    if (config.methods.empty() || config.g_ids.empty() || config.etas.empty())
        throw BadRequest("power study needs methods, scenarios and an eta grid");
    for (TestMethod m : config.methods) {
        const bool missing =
            (m == TestMethod::Delgado && config.delgado_critical <= 0.0) ||
            (m == TestMethod::FanLin && config.fanlin_critical <= 0.0) ||
            (m == TestMethod::AnTau && config.tau_two_sample <= 0.0) ||
            (m == TestMethod::AnStar && config.gamma_two_sample == 0.0);
        if (missing) throw MissingCalibration("no calibrated critical value for " + to_string(m));
    }

    const int R = config.replications;
    std::vector<PowerCell> cells;
    for (std::size_t gi = 0; gi < config.g_ids.size(); ++gi) {
        const int g_id = config.g_ids[gi];
        const ScenarioShape shape = scenario_shape_from_int(g_id);
        for (std::size_t ei = 0; ei < config.etas.size(); ++ei) {
            const double eta = config.etas[ei];
            std::vector<std::vector<char>> rejections(config.methods.size(),
                                                      std::vector<char>(R, 0));
            int nthreads = config.threads > 0
                               ? config.threads
                               : static_cast<int>(std::thread::hardware_concurrency());
            nthreads = std::max(1, std::min(nthreads, R));
            std::vector<std::thread> pool;
            for (int w = 0; w < nthreads; ++w) {
                pool.emplace_back([&, w] {
                    for (int r = w; r < R; r += nthreads) {
                        Scenario sc;
                        sc.shape = shape;
                        sc.eta = eta;
                        sc.n = config.n;
                        // Same stream for every method at a fixed (g_id, eta):
                        // common random numbers across the comparison.
                        sc.seed = derive_seed(config.master_seed,
                                              static_cast<std::uint64_t>(g_id * 1000 + ei),
                                              static_cast<std::uint64_t>(r));
                        auto [s1, s2] = generate_scenario(sc);
                        for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
                            TestOutcome out;
                            switch (config.methods[mi]) {
                                case TestMethod::Delgado:
                                    out = delgado_test(s1, s2, 0.95, config.delgado_critical);
                                    break;
                                case TestMethod::FanLin:
                                    out = fanlin_test(s1, s2, 0.95, config.fanlin_critical);
                                    break;
                                case TestMethod::AnTau:
                                    out = an_two_sample_test(s1, s2, ThresholdKind::Tau,
                                                             config.tau_two_sample,
                                                             config.scheme);
                                    break;
                                case TestMethod::AnStar:
                                    out = an_two_sample_test(s1, s2, ThresholdKind::Gamma,
                                                             config.gamma_two_sample,
                                                             config.scheme);
                                    break;
                            }
                            rejections[mi][r] = out.reject ? 1 : 0;
                        }
                    }
                });
            }
            for (auto& th : pool) th.join();

            for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
                int hits = 0;
                for (char c : rejections[mi]) hits += c;
                PowerCell cell;
                cell.g_id = g_id;
                cell.eta = eta;
                cell.method = config.methods[mi];
                cell.power = static_cast<double>(hits) / R;
                cell.standard_error = std::sqrt(cell.power * (1.0 - cell.power) / R);
                cell.replications = R;
                cells.push_back(cell);
            }
        }
    }
    return cells;
}

} // namespace msreg
