#include "zerofree/thresholds.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace zf {

namespace {

constexpr double kTol = 1e-12;

void require_positive_beta(double beta, double gamma) {
    if (!(beta > 0.0) || !(gamma >= 0.0) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw Error(Errc::domain, "requires beta > 0 and gamma >= 0");
}

}  // namespace

const char* case_name(CaseId c) {
    switch (c) {
        case CaseId::case1: return "case1";
        case CaseId::case2: return "case2";
        case CaseId::case3: return "case3";
        case CaseId::case4: return "case4";
        case CaseId::rect: return "rect";
        case CaseId::unbounded1: return "unbounded1";
        case CaseId::unbounded2: return "unbounded2";
    }
    return "unknown";
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi))
        throw Error(Errc::nonconvergence, "bisection bracket does not change sign");
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double bar_d(double beta, double gamma) {
    require_positive_beta(beta, gamma);
    double bg = beta * gamma;
    if (bg >= 1.0) throw Error(Errc::domain, "bar_d requires beta*gamma < 1");
    double s = std::sqrt(bg);
    return (1.0 + s) / (1.0 - s);
}

double hat_x(double beta, double gamma, double d) {
    require_positive_beta(beta, gamma);
    double bg = beta * gamma;
    if (!(d > 1.0) || bg >= 1.0 || std::sqrt(bg) > (d - 1.0) / (d + 1.0) + kTol)
        throw Error(Errc::domain, "hat_x requires sqrt(beta*gamma) <= (d-1)/(d+1)");
    // Smaller root of gamma x^2 - A x + beta = 0, written without cancellation.
    double a = -1.0 - bg + d * (1.0 - bg);
    double disc = std::max(0.0, a * a - 4.0 * bg);
    return 2.0 * beta / (a + std::sqrt(disc));
}

double lambda_c_at(double beta, double gamma, double d) {
    double x = hat_x(beta, gamma, d);
    return x * std::pow((x + beta) / (gamma * x + 1.0), d);
}

double dc_balance(double beta, double gamma, double x) {
    return 2.0 * (1.0 - beta * gamma) * x / (beta - gamma * x * x) + std::log((gamma * x + 1.0) / (x + beta));
}

DcResult find_dc(double beta, double gamma) {
    require_positive_beta(beta, gamma);
    if (beta <= 1.0) throw Error(Errc::domain, "find_dc requires beta > 1");
    if (beta * gamma >= 1.0) throw Error(Errc::domain, "find_dc requires beta*gamma < 1");
    auto f = [&](double x) { return dc_balance(beta, gamma, x); };
    double hi;
    if (gamma > 0.0) {
        // psi blows up at sqrt(beta/gamma); back off until it is finite and positive.
        const double edge = std::sqrt(beta / gamma);
        hi = edge;
        for (double step = 1e-15; step < 1.0; step *= 10.0) {
            hi = edge * (1.0 - step);
            if (std::isfinite(f(hi)) && f(hi) > 0.0) break;
        }
    } else {
        hi = 1.0;
        while (!(f(hi) > 0.0)) hi *= 2.0;
    }
    DcResult r;
    r.x_c = bisect(f, 0.0, hi, kTol * 1e-2);
    r.d_c = (r.x_c + beta) * (gamma * r.x_c + 1.0) / ((1.0 - beta * gamma) * r.x_c);
    return r;
}

double check_x(double beta, double gamma, double d) {
    require_positive_beta(beta, gamma);
    if (beta * gamma >= 1.0 || !(d > 0.0)) throw Error(Errc::domain, "check_x requires beta*gamma < 1, d > 0");
    double b = 1.0 - beta * gamma + d * (1.0 + beta * gamma);
    double disc = b * b - 4.0 * beta * gamma * d * d;
    return (b + std::sqrt(std::max(0.0, disc))) / (2.0 * beta * d);
}

bool in_rect_band(const SpinParams& p) {
    double bg = p.beta * p.gamma;
    if (bg == 1.0) return false;
    double s = std::sqrt(bg);
    double lo = (p.delta - 2.0) / p.delta;
    double hi = p.delta > 2 ? p.delta / (p.delta - 2.0) : std::numeric_limits<double>::infinity();
    return s > lo + kTol && s < hi;
}

BoundResult bounded_lambda_bound(const SpinParams& p, Sign sign) {
    p.validate();
    require_positive_beta(p.beta, p.gamma);
    const double b = p.beta, g = p.gamma, bg = b * g;
    const int D = p.delta;
    const double d = D - 1.0;
    if (bg == 1.0) throw Error(Errc::case_mismatch, "beta*gamma == 1 is not covered");
    BoundResult r;
    if (sign == Sign::positive) {
        if (bg > 1.0) {
            double s = std::sqrt(bg);
            double e = s / (s - 1.0);
            r.case_id = CaseId::case1;
            r.bound = std::pow(b / g, e) * std::pow(std::max(1.0, g), 2.0 * e - D);
            return r;
        }
        if (std::sqrt(bg) > (D - 2.0) / D + kTol)
            throw Error(Errc::case_mismatch, "rect regime: (Delta-2)/Delta < sqrt(beta*gamma) < 1");
        r.case_id = CaseId::case3;
        if (b > 1.0) {
            DcResult dc = find_dc(b, g);
            if (D > dc.d_c + 1.0) {
                r.bound = lambda_c_at(b, g, dc.d_c);
                r.note = "lambda_c at d_c";
                return r;
            }
        }
        r.bound = lambda_c_at(b, g, d);
        if (std::abs(std::sqrt(bg) - (D - 2.0) / D) <= kTol) r.note = "degenerate: hat_x at sqrt(beta/gamma)";
        return r;
    }
    if (bg > 1.0) {
        r.case_id = CaseId::case2;
        r.bound = -std::pow(std::max(1.0, g), -static_cast<double>(D));
        r.note = "exponent -Delta";
        return r;
    }
    r.case_id = CaseId::case4;
    if (b > 1.0 && d > (1.0 - bg) / ((b - 1.0) * (1.0 - g))) {
        r.bound = -std::min(1.0, (b - 1.0) / (1.0 - g));
        return r;
    }
    double x = check_x(b, g, d);
    r.bound = -(b * x - 1.0) / ((x - g) * std::pow(x, d));
    return r;
}

BoundResult unbounded_lambda_bound(double beta, double gamma, Sign sign) {
    require_positive_beta(beta, gamma);
    double bg = beta * gamma;
    BoundResult r;
    if (bg > 1.0 && gamma <= 1.0) {
        r.case_id = CaseId::unbounded1;
        if (sign == Sign::positive) {
            double s = std::sqrt(bg);
            r.bound = std::pow(beta / gamma, s / (s - 1.0));
        } else {
            r.bound = -1.0;
        }
        return r;
    }
    if (bg < 1.0 && beta > 1.0) {
        r.case_id = CaseId::unbounded2;
        if (sign == Sign::positive) {
            r.bound = lambda_c_at(beta, gamma, find_dc(beta, gamma).d_c);
        } else {
            r.bound = std::max(-1.0, -(beta - 1.0) / (1.0 - gamma));
        }
        return r;
    }
    throw Error(Errc::regime_mismatch, "unbounded regime needs (bg>1, g<=1) or (bg<1, b>1)");
}

ThresholdReport threshold_report(const SpinParams& p, Sign sign) {
    p.validate();
    require_positive_beta(p.beta, p.gamma);
    ThresholdReport rep;
    rep.beta = p.beta;
    rep.gamma = p.gamma;
    rep.delta = p.delta;
    rep.sign = sign;
    double bg = p.beta * p.gamma;
    if (bg < 1.0) {
        rep.bar_d = bar_d(p.beta, p.gamma);
        for (int d = 1; d <= p.delta - 1; ++d) {
            rep.check_x[d] = check_x(p.beta, p.gamma, d);
            if (d > 1 && std::sqrt(bg) <= (d - 1.0) / (d + 1.0) + kTol) {
                rep.hat_x[d] = hat_x(p.beta, p.gamma, d);
                rep.lambda_c[d] = lambda_c_at(p.beta, p.gamma, d);
            }
        }
        if (p.beta > 1.0) {
            DcResult dc = find_dc(p.beta, p.gamma);
            rep.x_c = dc.x_c;
            rep.d_c = dc.d_c;
        }
    }
    try {
        BoundResult b = bounded_lambda_bound(p, sign);
        rep.case_id = case_name(b.case_id);
        rep.lambda_bound = b.bound;
        rep.note = b.note;
    } catch (const Error& e) {
        if (e.code() != Errc::case_mismatch) throw;
        rep.case_id = bg == 1.0 ? "none" : "rect";
        rep.note = e.what();
    }
    return rep;
}

double psi_setcover(double y) {
    if (!(y > 0.0)) throw Error(Errc::domain, "psi requires y > 0");
    return std::log1p(y) / y;
}

double psi_setcover_inv(double t) {
    if (!(t > 0.0) || !(t < 1.0)) throw Error(Errc::domain, "psi inverse requires t in (0,1)");
    // psi is decreasing; bisect on u = ln y.
    auto f = [&](double u) { return psi_setcover(std::exp(u)) - t; };
    double lo = -60.0, hi = 60.0;
    while (f(lo) < 0.0) lo *= 2.0;
    while (f(hi) > 0.0) hi *= 2.0;
    return std::exp(bisect(f, lo, hi, 1e-14, 400));
}

MuBounds setcover_mu_bounds(int delta) {
    if (delta < 2) throw Error(Errc::domain, "delta must be at least 2");
    double D = delta - 1.0;
    return {std::exp(1.0 + 1.0 / D) / D, -std::exp(1.0 - 1.0 / D) / D};
}

SetCoverThresholdReport setcover_report(int delta, double mu) {
    if (!(mu >= -1.0) || !std::isfinite(mu)) throw Error(Errc::domain, "mu must be finite and >= -1");
    MuBounds mb = setcover_mu_bounds(delta);
    SetCoverThresholdReport rep;
    rep.delta = delta;
    rep.mu = mu;
    rep.mu1 = mb.mu1;
    rep.mu2 = mb.mu2;
    const double D = delta - 1.0;
    if (mu >= mb.mu2 && mu <= mb.mu1) {
        rep.condition = 1;
        return rep;
    }
    if (mu > mb.mu1) {
        rep.condition = 2;
        const double target = std::log(D * mu) / (D + 1.0);
        auto gmap = [&](double x) { return mu * x / (mu + std::exp(x)); };
        // Maximizer of gmap: mu e^{-x} = x - 1.
        double xhat = bisect([&](double x) { return mu * std::exp(-x) - (x - 1.0); }, 1.0, 1.0 + mu);
        if (!(gmap(xhat) > target)) throw Error(Errc::nonconvergence, "no root below the maximizer");
        double x1 = bisect([&](double x) { return gmap(x) - target; }, 0.0, xhat);
        double q = 1.0 + mu * std::exp(-x1);
        rep.xStar1 = x1;
        rep.eta1 = 1.0 / (psi_setcover_inv(x1 / q) * std::pow(q, D));
        return rep;
    }
    rep.condition = 3;
    auto f = [&](double x) {
        double m = mu * std::exp(-x);
        double inner = -D * x * m / (2.0 - x + 2.0 * m);
        double den = x - 2.0 - 2.0 * m - D * x * m;
        if (!(inner > 0.0) || den == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return std::log(inner) * (1.0 + m) / den - 1.0;
    };
    const int steps = 4000;
    std::optional<double> best;
    double prev_x = 0.0, prev_f = std::numeric_limits<double>::quiet_NaN();
    for (int i = 1; i < steps; ++i) {
        double x = 2.0 * i / steps;
        double fx = f(x);
        if (std::isfinite(fx) && std::isfinite(prev_f) && std::signbit(fx) != std::signbit(prev_f)) {
            double root = bisect(f, prev_x, x, 1e-14);
            if (std::abs(f(root)) < 1e-8) best = root;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (!best) throw Error(Errc::nonconvergence, "no admissible root for the eta2 equation");
    double x2 = *best;
    double q = 1.0 + mu * std::exp(-x2);
    rep.xStar2 = x2;
    rep.eta2 = 1.0 / (psi_setcover_inv(2.0 - x2 / q) * std::pow(q, D));
    return rep;
}

double setcover_eta_bound(int delta, double mu) {
    SetCoverThresholdReport rep = setcover_report(delta, mu);
    if (rep.condition == 1) throw Error(Errc::domain, "mu in [mu2, mu1]: no eta bound needed");
    return rep.condition == 2 ? *rep.eta1 : *rep.eta2;
}

}  // namespace zf
