#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zerofree/model.hpp"
#include "zerofree/regions.hpp"
#include "zerofree/thresholds.hpp"

namespace zf {

enum class Regime { bounded, rect, unbounded, setcover };
const char* regime_name(Regime r);
Regime regime_from_name(const std::string& s);

struct Witness {
    std::string check;
    std::map<std::string, double> point;
    double value = 0.0;  // slack or function value at the point (negative or below margin)
};

struct StructuralCheck {
    std::string name;
    bool passed = false;
};

struct Certificate {
    std::string schema = "zerocert/1";
    Regime regime = Regime::bounded;
    std::map<std::string, double> inputs;
    std::string case_id;
    std::optional<double> case_bound;

    std::string region_kind;  // triangle, rect, cone_triangle, spiral
    std::map<std::string, double> region;
    std::map<std::string, double> choices;
    std::optional<double> k;
    std::optional<double> delta_hat;  // non-rigorous estimate

    std::map<std::string, double> grids;
    double margin = 0.0;
    double min_H = 0.0;
    double min_margin = 0.0;
    std::vector<StructuralCheck> structural;
    bool pass = false;
    std::vector<Witness> failure_witnesses;
    std::vector<std::string> notes;

    bool structural_ok() const;
    // verdict == pass implies min_H > 0, min_margin > 0 and every structural check passed.
    bool consistent() const;
};

struct CertOptions {
    int grid_x = 512;
    int grid_lambda = 64;  // also the eta grid for set covers
    int grid_theta = 1024;
    int boundary_samples = 256;
    double margin = 1e-6;
    int k_steps = 40;
    std::optional<double> k_seed;           // tried first, then the halving grid
    std::optional<TriangleRegion> region;   // overrides the corner selector (k is still searched)
    bool estimate_delta = true;
    int delta_radii = 20;
    int delta_directions = 8;
    double setcover_eps = 1e-3;
    std::optional<double> setcover_M;
    int jobs = 0;  // 0: hardware concurrency
};

Certificate certify_bounded(const SpinParams& p, double lambda0, const CertOptions& opts = {});
Certificate certify_rect(const SpinParams& p, double lambda0, const CertOptions& opts = {});
// p.delta is ignored; the region is degree free.
Certificate certify_unbounded(const SpinParams& p, double lambda0, const CertOptions& opts = {});
Certificate certify_setcover(int delta, double mu, double eta0, const CertOptions& opts = {});

// Boundary of the certified region and its image under g_map at lambda, for plotting.
struct RegionCurves {
    std::vector<cplx> boundary;
    std::vector<cplx> image;
    double min_slack = 0.0;
};
RegionCurves bounded_region_curves(const SpinParams& p, double lambda, const TriangleRegion& region,
                                   int samples_per_leg);

}  // namespace zf
