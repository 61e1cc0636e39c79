#include "zerofree/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zf {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    if (n > 1) v.back() = b;
    return v;
}

}  // namespace

double TriangleRegion::re_lo() const { return trim ? std::max(x1, trim->first) : x1; }
double TriangleRegion::re_hi() const { return trim ? std::min(x0, trim->second) : x0; }

const char* piece_name(Piece p) {
    switch (p) {
        case Piece::upper_leg: return "upper_leg";
        case Piece::lower_leg: return "lower_leg";
        case Piece::base: return "base";
        case Piece::apex: return "apex";
        case Piece::trim_wall: return "trim_wall";
        case Piece::top: return "top";
        case Piece::bottom: return "bottom";
        case Piece::left: return "left";
        case Piece::right: return "right";
    }
    return "unknown";
}

double slack(const TriangleRegion& r, cplx z) {
    double re = z.real();
    return std::min({re - r.re_lo(), r.re_hi() - re, r.k * (r.x0 - re) - std::abs(z.imag())});
}

double slack(const RectRegion& r, cplx z) {
    return std::min({z.real() - r.x1, r.x0 - z.real(), r.y0 - std::abs(z.imag())});
}

double slack(const ConeRegion& r, cplx z) {
    return std::min(-z.real(), -r.k * z.real() - std::abs(z.imag()));
}

double slack(const SpiralRegion& r, cplx z) {
    if (z == cplx(0.0)) return 1.0;
    return std::exp(-std::abs(std::arg(z)) / r.k) - std::abs(z);
}

RegionSample triangle_boundary(const TriangleRegion& r, int samples_per_leg) {
    if (samples_per_leg < 2) throw Error(Errc::domain, "samples_per_leg must be at least 2");
    const double lo = r.re_lo(), hi = r.re_hi();
    RegionSample s;
    s.points.reserve(4 * samples_per_leg);
    for (double x : linspace(lo, hi, samples_per_leg)) {
        Piece piece = (x == r.x0) ? Piece::apex : Piece::upper_leg;
        s.points.push_back({cplx(x, r.k * (r.x0 - x)), piece});
    }
    for (double x : linspace(lo, hi, samples_per_leg)) {
        Piece piece = (x == r.x0) ? Piece::apex : Piece::lower_leg;
        s.points.push_back({cplx(x, -r.k * (r.x0 - x)), piece});
    }
    const double half_lo = r.k * (r.x0 - lo);
    for (double y : linspace(-half_lo, half_lo, samples_per_leg)) s.points.push_back({cplx(lo, y), Piece::base});
    if (hi < r.x0) {
        const double half_hi = r.k * (r.x0 - hi);
        for (double y : linspace(-half_hi, half_hi, samples_per_leg))
            s.points.push_back({cplx(hi, y), Piece::trim_wall});
    }
    return s;
}

RegionSample rect_boundary(const RectRegion& r, int n) {
    if (n < 2) throw Error(Errc::domain, "samples_per_side must be at least 2");
    RegionSample s;
    for (double x : linspace(r.x1, r.x0, n)) s.points.push_back({cplx(x, r.y0), Piece::top});
    for (double x : linspace(r.x1, r.x0, n)) s.points.push_back({cplx(x, -r.y0), Piece::bottom});
    for (double y : linspace(-r.y0, r.y0, n)) s.points.push_back({cplx(r.x1, y), Piece::left});
    for (double y : linspace(-r.y0, r.y0, n)) s.points.push_back({cplx(r.x0, y), Piece::right});
    return s;
}

CaseTriangle triangle_params_for_case(const SpinParams& p, double lambda0) {
    p.validate();
    if (!(p.beta > 0.0)) throw Error(Errc::domain, "beta must be positive");
    if (lambda0 == 0.0 || !std::isfinite(lambda0)) throw Error(Errc::domain, "lambda0 must be finite and nonzero");
    const double b = p.beta, g = p.gamma, bg = b * g;
    const int D = p.delta;
    const double d = D - 1.0;
    if (bg == 1.0) throw Error(Errc::case_mismatch, "beta*gamma == 1");
    CaseTriangle out;
    TriangleRegion& t = out.region;
    auto lg = [&](double v) {
        if (!(v > 0.0)) throw Error(Errc::hypothesis_violated, "logarithm of a nonpositive corner value");
        return std::log(v);
    };

    if (lambda0 > 0.0 && bg > 1.0) {
        out.case_id = CaseId::case1;
        t.x0 = std::max(0.0, g > 0.0 ? std::log(g) : 0.0);
        t.x1 = std::min(0.0, -std::log(b));
        return out;
    }
    if (lambda0 < 0.0 && bg > 1.0) {
        out.case_id = CaseId::case2;
        t.x0 = std::max(0.0, std::log(g));
        const double s = lambda0 * std::exp(d * t.x0);
        const double upper = lg((1.0 + g * s) / (b + s));
        const double lower = g < 1.0 ? lg((1.0 - g) / (b - 1.0)) : -HUGE_VAL;
        if (!(lower < upper)) throw Error(Errc::hypothesis_violated, "empty interval for x1");
        // Midpoint of (lower, upper); one unit below upper when the interval is unbounded.
        const double mid = std::isfinite(lower) ? 0.5 * (lower + upper) : upper - 1.0;
        t.x1 = std::min(0.0, mid);
        out.choices["x1_interval_lo"] = lower;
        out.choices["x1_interval_hi"] = upper;
        return out;
    }
    if (lambda0 > 0.0) {
        if (std::sqrt(bg) > (D - 2.0) / D + 1e-12)
            throw Error(Errc::case_mismatch, "rect regime: (Delta-2)/Delta < sqrt(beta*gamma) < 1");
        out.case_id = CaseId::case3;
        auto fixed = [&](double x) { return lambda0 * std::pow((g * x + 1.0) / (x + b), d) - x; };
        double hi = 1.0;
        while (fixed(hi) > 0.0) hi *= 2.0;
        const double xbar = bisect(fixed, 0.0, hi);
        const double den = b - g * xbar * xbar;
        if (!(den > 0.0)) throw Error(Errc::hypothesis_violated, "x_bar beyond sqrt(beta/gamma)");
        t.x0 = std::max(2.0 * (1.0 - bg) * xbar / den + std::log((g * xbar + 1.0) / (xbar + b)), 0.0);
        const double s0 = lambda0 * std::exp(d * t.x0);
        const double x2 = g > 0.0 ? std::log(g) : -std::log(b + s0) - 1.0;
        t.x1 = std::min(0.0, x2);
        t.trim = std::make_pair(x2, -std::log(b));
        out.choices["x_bar"] = xbar;
        return out;
    }
    out.case_id = CaseId::case4;
    const double xc = check_x(b, g, d);
    t.x0 = std::max(std::log(xc), 0.0);
    const double x2 = g > 0.0 ? std::log(g) : -std::log(b) - 1.0;
    t.x1 = std::min(0.0, x2);
    double x3 = t.x0;
    if (b > 1.0 && b + g > 2.0) {
        if (!(-lambda0 < 1.0)) throw Error(Errc::hypothesis_violated, "|lambda0| must be below 1");
        const double lt = 0.5 * (-lambda0 + 1.0);
        x3 = lg((1.0 - g * lt) / (b - lt));
        out.choices["lambda_tilde"] = lt;
    }
    t.trim = std::make_pair(x2, x3);
    out.choices["check_x"] = xc;
    return out;
}

RectRegion rect_params(const SpinParams& p) {
    p.validate();
    if (!(p.beta > 0.0)) throw Error(Errc::domain, "beta must be positive");
    const double bg = p.beta * p.gamma;
    RectRegion r;
    if (bg > 1.0) {
        r.x0 = std::max(0.0, std::log(p.gamma));
        r.x1 = std::min(0.0, -std::log(p.beta));
    } else {
        if (!(p.gamma > 0.0)) throw Error(Errc::regime_mismatch, "rectangle needs gamma > 0");
        r.x0 = std::max(0.0, -std::log(p.beta));
        r.x1 = std::min(0.0, std::log(p.gamma));
    }
    return r;
}

// ---------------------------------------------------------------- spiral maps

double r_k1(double k, double theta) {
    const double t = theta / k;
    const double em = std::exp(-t), sh = std::sin(0.5 * theta);
    const double q = std::expm1(-t) * std::expm1(-t) + 4.0 * em * sh * sh;
    return -t - 0.5 * std::log(q);
}

double h_k1(double k, double theta) {
    const double t = theta / k;
    const double em = std::exp(-t), sh = std::sin(0.5 * theta);
    const double re = -std::expm1(-t) + 2.0 * em * sh * sh;  // Re(1 - u), u = e^{-t + i theta}
    return theta + std::atan2(em * std::sin(theta), re);
}

namespace {

cplx one_plus_mu_u(double mu, double k, double theta) {
    const double t = theta / k;
    const double em = std::exp(-t), sh = std::sin(0.5 * theta);
    const double re = 1.0 + mu + mu * (std::expm1(-t) - 2.0 * em * sh * sh);
    return {re, mu * em * std::sin(theta)};
}

}  // namespace

double r_k2(double mu, double k, double theta) { return std::log(std::abs(one_plus_mu_u(mu, k, theta))); }

double h_k2(double mu, double k, double theta) { return std::arg(one_plus_mu_u(mu, k, theta)); }

double setcover_k_limit(double mu) { return kPi / (2.0 * std::log(mu + 4.0)); }

SetcoverMaps setcover_boundary_maps(double mu, double k, double theta) {
    if (!(theta > 0.0) || !(theta < kPi)) throw Error(Errc::domain, "theta must lie in (0, pi)");
    if (!(k > 0.0) || !(mu >= -1.0) || !(k < setcover_k_limit(mu)))
        throw Error(Errc::domain, "requires k in (0, pi/(2 ln(mu+4))) and mu >= -1");
    return {r_k1(k, theta), h_k1(k, theta), r_k2(mu, k, theta), h_k2(mu, k, theta)};
}

double theta0(double mu, double k) {
    if (mu == 0.0 || !(mu >= -1.0) || !(k > 0.0) || !(k < setcover_k_limit(mu)))
        throw Error(Errc::domain, "theta0 requires mu != 0, mu >= -1 and 0 < k < pi/(2 ln(mu+4))");
    auto f = [&](double th) { return k * std::sin(th) + std::cos(th) + mu * std::exp(-th / k); };
    const double lo = 0.5 * kPi, hi = kPi;
    if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) throw Error(Errc::domain, "no sign change on (pi/2, pi)");
    return bisect(f, lo, hi, 1e-15);
}

double r_k1_inv(double k, double x) {
    const double knee = -(kPi / k + std::log1p(std::exp(-kPi / k)));
    if (x <= knee) return kPi;
    double lo = 1e-300;
    if (r_k1(k, lo) <= x) return lo;
    return bisect([&](double th) { return r_k1(k, th) - x; }, lo, kPi, 1e-15, 400);
}

double p_k(double k, double x) {
    if (!(k > 0.0)) throw Error(Errc::domain, "k must be positive");
    const double knee = -(kPi / k + std::log1p(std::exp(-kPi / k)));
    if (x <= knee) return kPi;
    return h_k1(k, r_k1_inv(k, x));
}

}  // namespace zf
