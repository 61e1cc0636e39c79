#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zerofree/model.hpp"
#include "zerofree/thresholds.hpp"

namespace zf {

// {Re z in [x1, x0] (intersected with trim), |Im z| <= k (x0 - Re z)}.
struct TriangleRegion {
    double x0 = 0.0;
    double x1 = -1.0;
    double k = 0.0;
    std::optional<std::pair<double, double>> trim;  // [x2, x3]

    double re_lo() const;
    double re_hi() const;
};

struct RectRegion {
    double x0 = 0.0;
    double x1 = -1.0;
    double y0 = 0.0;
};

// {Re z <= 0, |Im z| <= -k Re z}.
struct ConeRegion {
    double k = 0.0;
};

// {0} union {|w| <= exp(-|arg w|/k)}.
struct SpiralRegion {
    double k = 0.0;
};

enum class Piece { upper_leg, lower_leg, base, apex, trim_wall, top, bottom, left, right };
const char* piece_name(Piece p);

struct BoundaryPoint {
    cplx z;
    Piece piece;
};

struct RegionSample {
    std::vector<BoundaryPoint> points;
};

// Minimum slack of the defining inequalities (negative outside).
double slack(const TriangleRegion& r, cplx z);
double slack(const RectRegion& r, cplx z);
double slack(const ConeRegion& r, cplx z);
double slack(const SpiralRegion& r, cplx z);

template <typename R>
bool contains(const R& region, cplx z, double margin = 0.0) {
    return slack(region, z) >= margin;
}

// samples_per_leg points on each leg and on the base, plus the same number on an upper trim wall.
RegionSample triangle_boundary(const TriangleRegion& r, int samples_per_leg);
RegionSample rect_boundary(const RectRegion& r, int samples_per_side);

struct CaseTriangle {
    CaseId case_id = CaseId::case1;
    TriangleRegion region;                   // k left at 0; the certifier chooses it
    std::map<std::string, double> choices;  // free parameters fixed by the selector
};
// Region corners matching (params, lambda0). Throws Errc::case_mismatch
// when no bounded case applies and Errc::hypothesis_violated when the corners are undefined.
CaseTriangle triangle_params_for_case(const SpinParams& p, double lambda0);

// Corners of the rectangle for the band (Delta-2)/Delta < sqrt(bg) < Delta/(Delta-2).
RectRegion rect_params(const SpinParams& p);

// Spiral-boundary maps for the set-cover recursion, t = theta/k.
double r_k1(double k, double theta);
double h_k1(double k, double theta);
double r_k2(double mu, double k, double theta);
double h_k2(double mu, double k, double theta);

struct SetcoverMaps {
    double r1 = 0.0, h1 = 0.0, r2 = 0.0, h2 = 0.0;
};
SetcoverMaps setcover_boundary_maps(double mu, double k, double theta);

// Root in (pi/2, pi) of k e^{t} sin(theta) + e^{t} cos(theta) + mu = 0.
double theta0(double mu, double k);
// Upper bound on k for the spiral region: pi / (2 ln(mu + 4)).
double setcover_k_limit(double mu);

double r_k1_inv(double k, double x);
double p_k(double k, double x);

}  // namespace zf
