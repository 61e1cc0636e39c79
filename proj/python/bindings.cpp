#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zerofree/certifier.hpp"
#include "zerofree/errors.hpp"
#include "zerofree/io.hpp"
#include "zerofree/spectra.hpp"
#include "zerofree/thresholds.hpp"

namespace py = pybind11;
using namespace zf;

namespace {

// Reports cross the boundary as JSON text; the Python wrapper decodes them.
template <typename T>
std::string dump(const T& v) {
    return io::to_json(v).dump();
}

Pins to_pins(const std::map<int, int>& p) { return Pins(p.begin(), p.end()); }

CertOptions make_options(std::optional<double> k, int grid_x, int grid_lambda, int grid_theta, int boundary,
                         double margin, bool estimate_delta, int jobs) {
    CertOptions o;
    o.k_seed = k;
    o.grid_x = grid_x;
    o.grid_lambda = grid_lambda;
    o.grid_theta = grid_theta;
    o.boundary_samples = boundary;
    o.margin = margin;
    o.estimate_delta = estimate_delta;
    o.jobs = jobs;
    return o;
}

}  // namespace

PYBIND11_MODULE(_zerofree, m) {
    m.doc() = "Zero-free regions, contraction certificates and partition-function tools";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def(
        "thresholds_json",
        [](double beta, double gamma, int delta, const std::string& sign) {
            if (sign != "pos" && sign != "neg") throw Error(Errc::invalid_input, "sign must be pos or neg");
            return dump(threshold_report(SpinParams{beta, gamma, delta}, sign == "pos" ? Sign::positive : Sign::negative));
        },
        py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("sign") = "pos");

    m.def(
        "setcover_thresholds_json", [](int delta, double mu) { return dump(setcover_report(delta, mu)); },
        py::arg("delta"), py::arg("mu"));

    m.def(
        "certify_json",
        [](const std::string& regime, double beta, double gamma, int delta, double lambda0, double mu, double eta0,
           std::optional<double> k, int grid_x, int grid_lambda, int grid_theta, int boundary, double margin,
           bool estimate_delta, int jobs) {
            const CertOptions o = make_options(k, grid_x, grid_lambda, grid_theta, boundary, margin, estimate_delta, jobs);
            const SpinParams p{beta, gamma, delta};
            py::gil_scoped_release release;
            switch (regime_from_name(regime)) {
                case Regime::bounded: return dump(certify_bounded(p, lambda0, o));
                case Regime::rect: return dump(certify_rect(p, lambda0, o));
                case Regime::unbounded: return dump(certify_unbounded(p, lambda0, o));
                case Regime::setcover: return dump(certify_setcover(delta, mu, eta0, o));
            }
            throw Error(Errc::invalid_input, "unknown regime");
        },
        py::arg("regime"), py::arg("beta") = 1.0, py::arg("gamma") = 0.0, py::arg("delta") = 3,
        py::arg("lambda0") = 0.0, py::arg("mu") = 0.0, py::arg("eta0") = 0.0, py::arg("k") = py::none(),
        py::arg("grid_x") = 512, py::arg("grid_lambda") = 64, py::arg("grid_theta") = 1024, py::arg("boundary") = 256,
        py::arg("margin") = 1e-6, py::arg("estimate_delta") = true, py::arg("jobs") = 0);

    m.def(
        "partition_2spin",
        [](double beta, double gamma, int n, const std::vector<std::pair<int, int>>& edges, cplx lam,
           const std::map<int, int>& pins) {
            return exact_Z_2spin(SpinParams{beta, gamma, 3}, Graph(n, edges), to_pins(pins), lam);
        },
        py::arg("beta"), py::arg("gamma"), py::arg("n"), py::arg("edges"), py::arg("lam"),
        py::arg("pins") = std::map<int, int>{});

    m.def(
        "polynomial_2spin",
        [](double beta, double gamma, int n, const std::vector<std::pair<int, int>>& edges,
           const std::map<int, int>& pins) {
            return Z_polynomial_2spin(SpinParams{beta, gamma, 3}, Graph(n, edges), to_pins(pins)).coeffs;
        },
        py::arg("beta"), py::arg("gamma"), py::arg("n"), py::arg("edges"), py::arg("pins") = std::map<int, int>{});

    m.def(
        "partition_setcover",
        [](int n, const std::vector<std::vector<int>>& edges, double mu, cplx eta, const std::map<int, int>& pins) {
            return exact_Z_setcover(Hypergraph(n, edges), mu, eta, to_pins(pins));
        },
        py::arg("n"), py::arg("edges"), py::arg("mu"), py::arg("eta"), py::arg("pins") = std::map<int, int>{});

    m.def(
        "roots", [](const std::vector<double>& coeffs) { return poly_roots(PartitionPolynomial{coeffs}).roots; },
        py::arg("coeffs"));

    m.def(
        "zero_scan_json",
        [](double beta, double gamma, int delta, double lambda0, double margin, const std::string& family,
           std::uint64_t seed, std::optional<bool> expect_zero_free, int jobs) {
            FamilySpec f = parse_family(family);
            if (family.find("deg=") == std::string::npos) f.max_degree = delta;
            f.seed = seed;
            py::gil_scoped_release release;
            return dump(zero_scan(SpinParams{beta, gamma, delta}, f, lambda0, margin, expect_zero_free, jobs));
        },
        py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("lambda0"), py::arg("margin") = 0.0,
        py::arg("family") = "mixed:n=12,count=200", py::arg("seed") = 1, py::arg("expect_zero_free") = py::none(),
        py::arg("jobs") = 0);

    m.def(
        "approx_json",
        [](const std::vector<double>& coeffs, cplx lam, int terms, std::optional<double> apex, double angle_deg) {
            PartitionPolynomial p{coeffs};
            if (apex) return dump(barvinok_sector(p, lam, terms, SectorMap{*apex, angle_deg * 3.14159265358979323846 / 180.0}));
            return dump(barvinok_eval(p, lam, terms));
        },
        py::arg("coeffs"), py::arg("lam"), py::arg("terms"), py::arg("apex") = py::none(), py::arg("angle_deg") = 90.0);
}
