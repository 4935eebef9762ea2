#pragma once

#include "msreg/intervals.hpp"
#include "msreg/sample.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msreg {

enum class ScenarioShape { G1Shift, G2Split, G3Bump, G4Dipole };

ScenarioShape scenario_shape_from_int(int id);

struct Scenario {
    ScenarioShape shape = ScenarioShape::G1Shift;
    double eta = 0.0;
    int n = 500;
    std::uint64_t seed = 1;
    double u_draw = 0.0; // bump origin for G3/G4, drawn in [0, 3/4]
};

// Deviation g evaluated at t for a given shape and bump origin u.
double scenario_g(ScenarioShape shape, double eta, double u, double t);

// t_i = i/n; first sample pure noise, second noise plus g. G3/G4 draw the bump
// origin from the scenario seed before the noise.
std::pair<Sample, Sample> generate_scenario(const Scenario& scenario);

enum class TestMethod { Delgado, FanLin, AnTau, AnStar };

std::string to_string(TestMethod m);

struct PowerConfig {
    std::vector<TestMethod> methods;
    std::vector<int> g_ids;       // 1..4
    std::vector<double> etas;
    int n = 500;
    int replications = 1000;
    std::uint64_t master_seed = 1;
    IntervalScheme scheme = IntervalScheme::multi(2.0);
    // Calibrated thresholds, all at the study size.
    double delgado_critical = 0.0;
    double fanlin_critical = 0.0;
    double tau_two_sample = 0.0;
    double gamma_two_sample = 0.0;
    int threads = 0;
};

struct PowerCell {
    int g_id = 0;
    double eta = 0.0;
    TestMethod method = TestMethod::Delgado;
    double power = 0.0;
    double standard_error = 0.0;
    int replications = 0;
};

// All methods see identical simulated pairs (common random numbers).
std::vector<PowerCell> run_power_study(const PowerConfig& config);

} // namespace msreg
