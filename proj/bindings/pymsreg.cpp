#include "msreg/calibration.hpp"
#include "msreg/errors.hpp"
#include "msreg/joint.hpp"
#include "msreg/noise_scale.hpp"
#include "msreg/sim.hpp"
#include "msreg/taut_string.hpp"
#include "msreg/two_sample.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace msreg;

namespace {

Sample make_sample(const std::vector<double>& t, const std::vector<double>& y,
                   const std::string& label) {
    if (t.size() != y.size()) throw LengthMismatch("t and y must have equal length");
    std::vector<std::pair<double, double>> pts(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) pts[i] = {t[i], y[i]};
    return validate_sample(std::move(pts), label);
}

IntervalScheme make_scheme(const std::string& kind, double lambda, bool singletons) {
    if (kind == "all") return IntervalScheme::all();
    if (kind == "multi") return IntervalScheme::multi(lambda, singletons);
    throw BadRequest("scheme kind must be all or multi");
}

} // namespace

PYBIND11_MODULE(pymsreg, m) {
    m.doc() = "multiscale adequacy regions, taut-string fits and two-sample tests";

    py::register_exception<DomainError>(m, "DomainError");

    py::class_<Sample>(m, "Sample")
        .def(py::init(&make_sample), py::arg("t"), py::arg("y"), py::arg("label") = "")
        .def_readonly("t", &Sample::t)
        .def_readonly("y", &Sample::y)
        .def_readonly("label", &Sample::label)
        .def_property_readonly("n", &Sample::n);

    py::class_<IntervalScheme>(m, "IntervalScheme")
        .def(py::init(&make_scheme), py::arg("kind") = "multi", py::arg("lambda_") = 2.0,
             py::arg("singletons") = true);

    m.def("enumerate_intervals", [](int n, const IntervalScheme& s) {
        std::vector<std::pair<int, int>> out;
        for (const auto& I : enumerate_intervals(n, s)) out.push_back({I.lo, I.hi});
        return out;
    });

    m.def("sigma_median",
          [](const std::vector<double>& y) { return sigma_median(y).value; });
    m.def("sigma_honest",
          [](const std::vector<double>& y) { return sigma_honest(y).value; });

    m.def(
        "region_contains",
        [](const std::vector<double>& g, const Sample& s, const IntervalScheme& scheme,
           double sigma, double tau) {
            auto rep = region_contains(g, s, {scheme, sigma, ThresholdKind::Tau, tau});
            return py::make_tuple(rep.is_member, rep.max_ratio);
        },
        py::arg("g"), py::arg("sample"), py::arg("scheme"), py::arg("sigma"), py::arg("tau"));

    m.def(
        "region_contains_star",
        [](const std::vector<double>& g, const Sample& s, const IntervalScheme& scheme,
           double sigma, double gamma) {
            auto rep = region_contains_star(g, s, {scheme, sigma, ThresholdKind::Gamma, gamma});
            return py::make_tuple(rep.is_member, rep.max_ratio);
        },
        py::arg("g"), py::arg("sample"), py::arg("scheme"), py::arg("sigma"), py::arg("gamma"));

    m.def(
        "calibrate",
        [](const std::string& target, int n, double alpha, int replications,
           std::uint64_t seed, const IntervalScheme& scheme) {
            CalibrationRequest req;
            req.target = calibration_target_from_string(target);
            req.n = n;
            req.alpha = alpha;
            req.replications = replications;
            req.master_seed = seed;
            req.scheme = scheme;
            auto res = calibrate(req);
            return py::dict(py::arg("threshold") = res.threshold,
                            py::arg("raw_quantile") = res.raw_quantile,
                            py::arg("quantile_level") = res.quantile_level,
                            py::arg("standard_error") = res.standard_error);
        },
        py::arg("target"), py::arg("n"), py::arg("alpha") = 0.95,
        py::arg("replications") = 10000, py::arg("seed") = 1,
        py::arg("scheme") = IntervalScheme::multi(2.0));

    m.def("adjust_level", &adjust_level);

    m.def(
        "joint_taut_fit",
        [](const std::vector<Sample>& samples, const std::vector<double>& sigmas,
           const std::vector<double>& thresholds, const std::string& kind,
           const IntervalScheme& scheme, double squeeze, int max_rounds) {
            const ThresholdKind tk = kind == "gamma" ? ThresholdKind::Gamma : ThresholdKind::Tau;
            std::vector<RegionSpec> specs;
            for (std::size_t i = 0; i < samples.size(); ++i)
                specs.push_back({scheme, sigmas.at(i), tk, thresholds.at(i)});
            auto fit = joint_taut_fit(samples, specs, squeeze, max_rounds);
            return py::dict(py::arg("t") = fit.grid.t, py::arg("values") = fit.values,
                            py::arg("n_local_extremes") = fit.n_local_extremes,
                            py::arg("squeeze_rounds") = fit.squeeze_rounds);
        },
        py::arg("samples"), py::arg("sigmas"), py::arg("thresholds"), py::arg("kind") = "tau",
        py::arg("scheme") = IntervalScheme::multi(2.0), py::arg("squeeze") = 0.5,
        py::arg("max_rounds") = 200);

    m.def("count_local_extremes", &count_local_extremes);

    m.def(
        "delgado_test",
        [](const Sample& a, const Sample& b, double alpha, std::optional<double> critical) {
            auto o = delgado_test(a, b, alpha, critical);
            return py::dict(py::arg("statistic") = o.statistic,
                            py::arg("critical_value") = o.critical_value,
                            py::arg("reject") = o.reject);
        },
        py::arg("a"), py::arg("b"), py::arg("alpha") = 0.95,
        py::arg("critical") = std::nullopt);

    m.def(
        "fanlin_test",
        [](const Sample& a, const Sample& b, double alpha, double critical) {
            auto o = fanlin_test(a, b, alpha, critical);
            return py::dict(py::arg("statistic") = o.statistic,
                            py::arg("critical_value") = o.critical_value,
                            py::arg("reject") = o.reject);
        },
        py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("critical"));

    m.def(
        "interval_difference_test",
        [](const Sample& a, const Sample& b, const std::string& kind, double threshold,
           const IntervalScheme& scheme) {
            auto o = an_two_sample_test(
                a, b, kind == "gamma" ? ThresholdKind::Gamma : ThresholdKind::Tau, threshold,
                scheme);
            return py::dict(py::arg("statistic") = o.statistic,
                            py::arg("reject") = o.reject,
                            py::arg("worst_interval") =
                                py::make_tuple(o.worst_interval->lo, o.worst_interval->hi));
        },
        py::arg("a"), py::arg("b"), py::arg("kind"), py::arg("threshold"),
        py::arg("scheme") = IntervalScheme::multi(2.0));

    m.def(
        "detection_bound",
        [](const std::string& kind, int n, double delta, double eta, double sigma1,
           double sigma2, double tau, double gamma, double lambda) {
            DeviationScenario sc{eta, delta, n, sigma1, sigma2, tau, gamma, lambda};
            return detection_bound(sc, bound_kind_from_string(kind));
        },
        py::arg("kind"), py::arg("n"), py::arg("delta"), py::arg("eta") = 0.0,
        py::arg("sigma1") = 1.0, py::arg("sigma2") = 1.0, py::arg("tau") = 0.0,
        py::arg("gamma") = 0.0, py::arg("lambda_") = 2.0);

    m.def("trig_transform", &trig_transform);
}
