#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zerofree/model.hpp"

namespace zf {

struct RootSet {
    std::vector<cplx> roots;    // with multiplicity; low-order zeros appear as exact 0
    double residual_max = 0.0;  // max |p(r)| / sum |c_i||r|^i
    int iterations = 0;
};

// Aberth-Ehrlich simultaneous iteration, at most max_iter sweeps per attempt and a few
// perturbed restarts. Throws Errc::nonconvergence.
RootSet poly_roots(const PartitionPolynomial& p, int max_iter = 500);

// Random instances for zero scans: graphs with at most n_max vertices and maximum degree
// at most max_degree, each vertex pinned with probability pin_prob (pins kept only if feasible).
struct FamilySpec {
    std::string kind = "mixed";  // random | tree | mixed
    int n_min = 1;
    int n_max = 12;
    int max_degree = 3;
    int count = 200;
    double pin_prob = 0.25;
    std::uint64_t seed = 1;
};
FamilySpec parse_family(const std::string& s);  // "random:n=12,deg=3,count=200"

struct Instance {
    Graph graph;
    Pins pins;
};
// Deterministic in (spec.seed, index).
Instance family_instance(const SpinParams& p, const FamilySpec& spec, int index);

enum class ScanVerdict { pass, fail, inconclusive };
const char* scan_verdict_name(ScanVerdict v);

struct ScanSample {
    int index = 0;
    int n = 0;
    int edges = 0;
    int pins = 0;
    int degree = 0;  // degree of Z after stripping the lambda^m factor
    double min_distance = 0.0;
    cplx nearest_root{0.0, 0.0};
};

struct ScanReport {
    ScanVerdict verdict = ScanVerdict::pass;
    bool expected_zero_free = true;
    double lambda0 = 0.0;
    double delta = 0.0;
    int samples = 0;
    int violations = 0;
    double min_distance = 0.0;
    std::optional<ScanSample> worst;
    std::vector<ScanSample> violating;  // first few
};

// Distance from z to the real segment between 0 and lambda0.
double distance_to_segment(cplx z, double lambda0);

// expect_zero_free defaults to |lambda0| below the bounded-case bound from thresholds.
ScanReport zero_scan(const SpinParams& p, const FamilySpec& family, double lambda0, double delta,
                     std::optional<bool> expect_zero_free = std::nullopt, int jobs = 0);

// First m Taylor coefficients (orders 1..m) of ln(Z(lambda)/Z(0)) at 0.
std::vector<cplx> log_taylor(const PartitionPolynomial& p, int m);

struct TaylorApprox {
    int terms = 0;
    std::vector<cplx> log_coeffs;
    cplx value{0.0, 0.0};
    double relative_error = 0.0;
};
// Z(0) exp(sum_{j<=m} L_j lambda^j).
TaylorApprox barvinok_eval(const PartitionPolynomial& p, cplx lambda, int m);

// Change of variables lambda = psi(z) = apex ((1+z)/(1-z))^{2 theta/pi} - apex, mapping the unit
// disk onto the sector |arg(lambda + apex)| < theta. ln Z(psi(z)) is expanded at z = 0 and
// summed at z* = psi^{-1}(lambda). Converges geometrically when the sector is zero free.
struct SectorMap {
    double apex = 0.1;
    double half_angle = 1.5707963267948966;  // radians, in (0, pi)

    cplx to_disk(cplx lambda) const;
    cplx from_disk(cplx z) const;
    std::vector<cplx> series(int m) const;  // Taylor coefficients of psi
};
TaylorApprox barvinok_sector(const PartitionPolynomial& p, cplx lambda, int m, const SectorMap& map);
// Relative errors for every truncation order 1..m.
std::vector<double> barvinok_sector_errors(const PartitionPolynomial& p, cplx lambda, int m, const SectorMap& map);

// exp of the least-squares slope of ln(err) against the order, over [lo, hi] (1-based orders).
double geometric_rate(const std::vector<double>& errors, int lo, int hi);

}  // namespace zf
