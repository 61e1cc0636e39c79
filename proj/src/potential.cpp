#include "zerofree/potential.hpp"

#include <cmath>
#include <numbers>

namespace zf {

namespace {

constexpr double kCutGuard = 1e-9;

// Distance from z to the segment of the real line where (gamma z + 1)/(z + beta) <= 0.
double distance_to_cut(const SpinParams& p, cplx z) {
    double a = -p.beta;
    double lo, hi;
    if (p.gamma > 0.0) {
        double b = -1.0 / p.gamma;
        lo = std::min(a, b);
        hi = std::max(a, b);
    } else {
        lo = -HUGE_VAL;
        hi = a;
    }
    double re = z.real();
    double dx = re < lo ? lo - re : (re > hi ? re - hi : 0.0);
    return std::hypot(dx, z.imag());
}

}  // namespace

cplx phi(const SpinParams& p, const Ratio& z) {
    if (z.infinite) {
        if (!(p.gamma > 0.0)) throw Error(Errc::branch_cut, "phi(inf) undefined for gamma = 0");
        return std::log(p.gamma);
    }
    if (distance_to_cut(p, z.value) < kCutGuard) throw Error(Errc::branch_cut, "argument on the excluded segment");
    return std::log((p.gamma * z.value + 1.0) / (z.value + p.beta));
}

Ratio phi_inv(const SpinParams& p, cplx w) {
    if (!(std::abs(w.imag()) < std::numbers::pi)) throw Error(Errc::domain, "|Im w| must be below pi");
    cplx e = std::exp(w);
    cplx den = p.gamma - e;
    if (den == cplx(0.0)) return Ratio::inf();
    return Ratio::of((p.beta * e - 1.0) / den);
}

cplx g_map(const SpinParams& p, cplx lambda, int d, cplx w) {
    return phi(p, lambda * std::exp(static_cast<double>(d) * w));
}

cplx f_phi(const SpinParams& p, cplx lambda, const std::vector<cplx>& ws) {
    cplx s = 0.0;
    for (auto w : ws) s += w;
    cplx t = lambda * std::exp(s);
    return std::log((p.gamma * t + 1.0) / (t + p.beta));
}

RH rh_closed_form(const SpinParams& p, double lambda, double x, double y) {
    const double b = p.beta, g = p.gamma;
    const double s = lambda * std::exp(x);
    const double c = std::cos(y), sn = std::sin(y);
    if (!(1.0 + g * s * c > 0.0) || !(b + s * c > 0.0))
        throw Error(Errc::hypothesis_violated, "needs 1 + g lambda e^x cos y > 0 and b + lambda e^x cos y > 0");
    RH out;
    out.r = 0.5 * std::log((1.0 + g * g * s * s + 2.0 * g * s * c) / (b * b + s * s + 2.0 * b * s * c));
    out.h = std::atan(std::abs((b * g - 1.0) * s * sn) / (b + g * s * s + (b * g + 1.0) * s * c));
    return out;
}

double G_func(const SpinParams& p, double lambda, double x0, double x1, double k, double x) {
    const double tol = 1e-12 * std::max(1.0, std::abs(x0) + std::abs(x1));
    if (x < x1 - tol || x > x0 + tol) throw Error(Errc::domain, "x outside [x1, x0]");
    const double d = p.delta - 1.0;
    RH v = rh_closed_form(p, lambda, d * x, d * k * (x0 - x));
    return k * (x0 - v.r) - v.h;
}

double H_func(const SpinParams& p, double lambda, double x0, double x) {
    const double b = p.beta, g = p.gamma, d = p.delta - 1.0;
    const double s = lambda * std::exp(d * x);
    const double num = g * s + 1.0, den = b + s;
    if (!(num > 0.0) || !(den > 0.0)) throw Error(Errc::hypothesis_violated, "H denominators must be positive");
    return x0 - std::log(num / den) - d * std::abs(lambda * (b * g - 1.0)) * std::exp(d * x) * (x0 - x) / (num * den);
}

double Hhat_rect(const SpinParams& p, double lambda, double x) {
    if (lambda < 0.0) throw Error(Errc::domain, "Hhat requires lambda >= 0");
    const double b = p.beta, g = p.gamma, d = p.delta - 1.0;
    const double s = lambda * std::exp(d * x);
    return 1.0 - d * std::abs(b * g - 1.0) * s / ((b + s) * (g * s + 1.0));
}

double Hhat_lower_bound(const SpinParams& p) {
    double r = std::sqrt(p.beta * p.gamma);
    return 1.0 - (p.delta - 1.0) * std::abs(r - 1.0) / (1.0 + r);
}

}  // namespace zf
