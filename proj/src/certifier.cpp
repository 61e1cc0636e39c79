#include "zerofree/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"
#include "zerofree/potential.hpp"

namespace zf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    if (n > 1) v.back() = b;
    return v;
}

// lambda0 * j / n for j = 1..n. Zero is left out: phi(0) = -ln(beta) can sit on the region boundary.
std::vector<double> activity_grid(double lambda0, int n) {
    std::vector<double> v(n);
    for (int j = 1; j <= n; ++j) v[j - 1] = lambda0 * j / n;
    return v;
}

std::vector<cplx> as_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

void validate_opts(const CertOptions& o) {
    if (o.grid_x < 2 || o.grid_lambda < 1 || o.grid_theta < 4 || o.boundary_samples < 2)
        throw Error(Errc::domain, "grid sizes too small");
    if (!(o.margin >= 0.0)) throw Error(Errc::domain, "margin must be nonnegative");
    if (o.k_steps < 1 || o.delta_radii < 1 || o.delta_directions < 1)
        throw Error(Errc::domain, "k_steps, delta_radii and delta_directions must be positive");
    if (o.k_seed && !(*o.k_seed > 0.0)) throw Error(Errc::domain, "k seed must be positive");
    if (!(o.setcover_eps > 0.0)) throw Error(Errc::domain, "set-cover eps must be positive");
    if (o.setcover_M && !(*o.setcover_M > 0.0)) throw Error(Errc::domain, "set-cover M must be positive");
}

// Smallest value seen and where; li/wi index the activity and the sample point.
struct Probe {
    double value = kInf;
    int li = -1;
    int wi = -1;

    void take(double v, int l, int w) {
        if (std::isnan(v)) v = -kInf;
        if (v < value || li < 0) {
            value = v;
            li = l;
            wi = w;
        }
    }
    void merge(const Probe& o) {
        if (o.li >= 0 && (o.value < value || li < 0)) *this = o;
    }
};

// Minimum slack of g_map(lambda, d, w) in target over all lambdas and boundary points.
// With stop_below set, evaluation may end early once a slack below it is found; only
// the pass/fail outcome is then meaningful.
template <typename Region>
Probe image_containment(const SpinParams& p, int d, const std::vector<cplx>& lambdas, const RegionSample& bnd,
                        const Region& target, int jobs, std::optional<double> stop_below = std::nullopt) {
    const int n = static_cast<int>(lambdas.size());
    std::vector<Probe> per(n);
    std::atomic<bool> stop{false};
    detail::parallel_for(n, jobs, [&](int i) {
        if (stop.load(std::memory_order_relaxed)) return;
        Probe& pr = per[i];
        for (int j = 0; j < static_cast<int>(bnd.points.size()); ++j) {
            double s;
            try {
                s = slack(target, g_map(p, lambdas[i], d, bnd.points[j].z));
            } catch (const Error&) {
                s = -kInf;
            }
            pr.take(s, i, j);
        }
        if (stop_below && pr.value < *stop_below) stop.store(true, std::memory_order_relaxed);
    });
    Probe out;
    for (auto& pr : per) out.merge(pr);
    return out;
}

std::map<std::string, double> lambda_w_point(cplx lambda, cplx w) {
    return {{"lambda_re", lambda.real()}, {"lambda_im", lambda.imag()}, {"w_re", w.real()}, {"w_im", w.imag()}};
}

void add_check(Certificate& c, const std::string& name, bool ok, std::map<std::string, double> point = {},
               double value = 0.0) {
    c.structural.push_back({name, ok});
    if (!ok) c.failure_witnesses.push_back({"structural:" + name, std::move(point), value});
}

// Real point membership: closed region, k irrelevant.
bool real_in(const TriangleRegion& r, double x) { return x >= r.re_lo() && x <= r.re_hi(); }
bool real_in(const RectRegion& r, double x) { return x >= r.x1 && x <= r.x0; }

template <typename Region>
void fixed_point_checks(Certificate& c, const SpinParams& p, const Region& r) {
    const double b = p.beta, g = p.gamma;
    add_check(c, "neg_log_beta_in_region", b > 0.0 && real_in(r, -std::log(b)), {{"x", -std::log(b)}});
    if (g > 0.0) add_check(c, "log_gamma_in_region", real_in(r, std::log(g)), {{"x", std::log(g)}});
    if ((b - 1.0) * (1.0 - g) > 0.0) {
        const double xm = std::log((1.0 - g) / (b - 1.0));
        add_check(c, "minus_one_preimage_excluded", !real_in(r, xm), {{"x", xm}});
    }
}

void sign_checks(Certificate& c, const SpinParams& p, double lambda0, double x0) {
    const double d = p.delta - 1.0;
    const double s = lambda0 * std::exp(d * x0);
    add_check(c, "sign_1_plus_gamma_lambda", 1.0 + p.gamma * s > 0.0, {{"value", 1.0 + p.gamma * s}});
    add_check(c, "sign_beta_plus_lambda", p.beta + s > 0.0, {{"value", p.beta + s}});
    const double t = 1.0 + lambda0 * std::exp(p.delta * x0);
    add_check(c, "sign_1_plus_lambda_full_degree", t > 0.0, {{"value", t}});
}

std::vector<cplx> triangle_interior(const TriangleRegion& r, int nx, int ny) {
    std::vector<cplx> pts;
    for (double x : linspace(r.re_lo(), r.re_hi(), nx)) {
        const double h = r.k * (r.x0 - x);
        for (double y : linspace(-h, h, ny)) pts.emplace_back(x, y);
    }
    return pts;
}

std::vector<cplx> rect_interior(const RectRegion& r, int nx, int ny) {
    std::vector<cplx> pts;
    for (double x : linspace(r.x1, r.x0, nx))
        for (double y : linspace(-r.y0, r.y0, ny)) pts.emplace_back(x, y);
    return pts;
}

// min |1 + lambda e^{e w}| over the grid.
void minus_one_check(Certificate& c, const std::vector<double>& lambdas, const std::vector<cplx>& ws, int e) {
    double best = kInf;
    std::map<std::string, double> where;
    for (double l : lambdas)
        for (auto w : ws) {
            const double v = std::abs(1.0 + l * std::exp(static_cast<double>(e) * w));
            if (v < best) {
                best = v;
                where = lambda_w_point(l, w);
            }
        }
    add_check(c, "no_minus_one", best > 1e-9, where, best);
}

std::vector<cplx> annulus_lambdas(const std::vector<double>& base, double rho, int dirs) {
    std::vector<cplx> out;
    out.reserve(base.size() * dirs);
    for (double l : base)
        for (int q = 0; q < dirs; ++q) out.push_back(l + std::polar(rho, 2.0 * kPi * q / dirs));
    return out;
}

// Largest radius on rho0 * 2^{-m} for which containment (slack > 0) persists under complex
// perturbations of every grid activity.
template <typename Region>
std::optional<double> estimate_delta(const SpinParams& p, int d, const std::vector<double>& lams,
                                     const RegionSample& bnd, const Region& target, double rho0,
                                     const CertOptions& o) {
    for (int m = 0; m < o.delta_radii; ++m) {
        const double rho = std::ldexp(rho0, -m);
        Probe pr = image_containment(p, d, annulus_lambdas(lams, rho, o.delta_directions), bnd, target, o.jobs, 0.0);
        if (pr.value > 0.0) return rho;
    }
    return std::nullopt;
}

void record_grids(Certificate& c, const CertOptions& o) {
    c.grids = {{"x", o.grid_x},
               {"lambda", o.grid_lambda},
               {"boundary", o.boundary_samples},
               {"k_steps", o.k_steps},
               {"delta_radii", o.delta_radii},
               {"delta_directions", o.delta_directions},
               {"estimate_delta", o.estimate_delta ? 1.0 : 0.0}};
    c.margin = o.margin;
}

void record_triangle(Certificate& c, const TriangleRegion& r) {
    c.region["x0"] = r.x0;
    c.region["x1"] = r.x1;
    c.region["k"] = r.k;
    if (r.trim) {
        c.region["x2"] = r.trim->first;
        c.region["x3"] = r.trim->second;
    }
}

void containment_witness(Certificate& c, const std::string& check, const Probe& pr, const std::vector<cplx>& lams,
                         const RegionSample& bnd, double k) {
    if (pr.li < 0) return;
    auto pt = lambda_w_point(lams[pr.li], bnd.points[pr.wi].z);
    pt["k"] = k;
    c.failure_witnesses.push_back({check + ":" + piece_name(bnd.points[pr.wi].piece), std::move(pt), pr.value});
}

void finish(Certificate& c, bool numeric_ok) {
    c.pass = numeric_ok && c.structural_ok() && c.min_H > 0.0 && c.min_margin > 0.0;
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::bounded: return "bounded";
        case Regime::rect: return "rect";
        case Regime::unbounded: return "unbounded";
        case Regime::setcover: return "setcover";
    }
    return "unknown";
}

Regime regime_from_name(const std::string& s) {
    if (s == "bounded") return Regime::bounded;
    if (s == "rect") return Regime::rect;
    if (s == "unbounded") return Regime::unbounded;
    if (s == "setcover") return Regime::setcover;
    throw Error(Errc::invalid_input, "unknown regime '" + s + "'");
}

bool Certificate::structural_ok() const {
    return std::all_of(structural.begin(), structural.end(), [](const StructuralCheck& s) { return s.passed; });
}

bool Certificate::consistent() const { return !pass || (min_H > 0.0 && min_margin > 0.0 && structural_ok()); }

// ------------------------------------------------------------------ bounded

Certificate certify_bounded(const SpinParams& p, double lambda0, const CertOptions& o) {
    p.validate();
    validate_opts(o);
    if (!std::isfinite(lambda0) || lambda0 == 0.0) throw Error(Errc::domain, "lambda0 must be finite and nonzero");

    Certificate c;
    c.regime = Regime::bounded;
    c.inputs = {{"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}, {"lambda0", lambda0}};
    record_grids(c, o);
    c.region_kind = "triangle";

    const BoundResult br = bounded_lambda_bound(p, lambda0 > 0.0 ? Sign::positive : Sign::negative);
    c.case_id = case_name(br.case_id);
    c.case_bound = br.bound;
    if (!(std::abs(lambda0) < std::abs(br.bound))) c.notes.push_back("lambda0 is not strictly inside the case bound");

    TriangleRegion region;
    if (o.region) {
        region = *o.region;
        c.choices["region_override"] = 1.0;
    } else {
        try {
            CaseTriangle ct = triangle_params_for_case(p, lambda0);
            region = ct.region;
            c.choices = ct.choices;
        } catch (const Error& e) {
            if (e.code() != Errc::hypothesis_violated) throw;
            c.notes.push_back(e.what());
            add_check(c, "region_defined", false, {{"lambda0", lambda0}});
            return c;
        }
    }
    record_triangle(c, region);
    if (!(region.x1 < region.x0) || region.x1 > 0.0 || region.x0 < 0.0) {
        add_check(c, "corner_order", false, {{"x0", region.x0}, {"x1", region.x1}});
        return c;
    }
    add_check(c, "corner_order", true);
    fixed_point_checks(c, p, region);
    sign_checks(c, p, lambda0, region.x0);

    const int d = p.delta - 1;
    const auto lams = activity_grid(lambda0, o.grid_lambda);
    const auto clams = as_complex(lams);

    // H on [x1, x0] x grid activities.
    const auto xs = linspace(region.x1, region.x0, o.grid_x);
    Probe hp;
    for (int i = 0; i < static_cast<int>(lams.size()); ++i)
        for (int j = 0; j < static_cast<int>(xs.size()); ++j) {
            double v;
            try {
                v = H_func(p, lams[i], region.x0, xs[j]);
            } catch (const Error&) {
                v = -kInf;
            }
            hp.take(v, i, j);
        }
    c.min_H = hp.value;
    if (!(hp.value > 0.0)) {
        c.failure_witnesses.push_back({"H", {{"lambda", lams[hp.li]}, {"x", xs[hp.wi]}}, hp.value});
        c.notes.push_back("k search skipped after H failure");
        c.min_margin = 0.0;
        finish(c, false);
        return c;
    }

    const double width = region.x0 - region.x1;
    const double k_limit = kPi / (2.0 * p.delta * width);
    const double k_max = std::min(1.0, kPi / (4.0 * p.delta * width));
    std::vector<double> ks;
    if (o.k_seed) ks.push_back(*o.k_seed);
    for (int j = 0; j < o.k_steps; ++j) ks.push_back(std::ldexp(k_max, -j));

    std::optional<TriangleRegion> chosen;
    Probe last_g, last_m;
    RegionSample last_bnd;
    double last_k = 0.0;
    for (double k : ks) {
        if (!(k < k_limit)) continue;
        TriangleRegion r = region;
        r.k = k;
        const auto leg_xs = linspace(r.re_lo(), r.re_hi(), o.grid_x);
        Probe gp;
        for (int i = 0; i < static_cast<int>(lams.size()); ++i)
            for (int j = 0; j < static_cast<int>(leg_xs.size()); ++j) {
                double v;
                try {
                    v = G_func(p, lams[i], r.x0, r.x1, k, leg_xs[j]);
                } catch (const Error&) {
                    v = -kInf;
                }
                gp.take(v, i, j);
            }
        RegionSample bnd = triangle_boundary(r, o.boundary_samples);
        Probe mp = image_containment(p, d, clams, bnd, r, o.jobs);
        last_g = gp;
        last_m = mp;
        last_bnd = bnd;
        last_k = k;
        if (gp.value > 0.0 && mp.value >= o.margin) {
            chosen = r;
            c.min_margin = mp.value;
            break;
        }
    }

    if (!chosen) {
        c.min_margin = last_m.value;
        if (last_g.li >= 0 && !(last_g.value > 0.0)) {
            const auto leg_xs = linspace(region.re_lo(), region.re_hi(), o.grid_x);
            c.failure_witnesses.push_back(
                {"G", {{"lambda", lams[last_g.li]}, {"x", leg_xs[last_g.wi]}, {"k", last_k}}, last_g.value});
        }
        if (last_m.li >= 0 && last_m.value < o.margin)
            containment_witness(c, "containment", last_m, clams, last_bnd, last_k);
        TriangleRegion r = region;
        r.k = k_max;
        minus_one_check(c, lams, triangle_interior(r, 33, 17), p.delta);
        finish(c, false);
        return c;
    }

    c.k = chosen->k;
    c.region["k"] = chosen->k;
    {
        auto ws = triangle_interior(*chosen, 33, 17);
        for (auto& bp : last_bnd.points) ws.push_back(bp.z);
        minus_one_check(c, lams, ws, p.delta);
    }

    bool delta_ok = true;
    if (o.estimate_delta) {
        c.delta_hat = estimate_delta(p, d, lams, last_bnd, *chosen, 0.5 * std::abs(lambda0), o);
        if (!c.delta_hat) {
            delta_ok = false;
            c.failure_witnesses.push_back(
                {"delta", {{"rho_min", std::ldexp(0.5 * std::abs(lambda0), -(o.delta_radii - 1))}}, 0.0});
        }
    }
    finish(c, delta_ok);
    return c;
}

// ------------------------------------------------------------------ rectangle

Certificate certify_rect(const SpinParams& p, double lambda0, const CertOptions& o) {
    p.validate();
    validate_opts(o);
    if (!in_rect_band(p)) throw Error(Errc::regime_mismatch, "needs (Delta-2)/Delta < sqrt(bg) < Delta/(Delta-2), bg != 1");
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw Error(Errc::regime_mismatch, "rectangle regime needs lambda0 > 0");

    Certificate c;
    c.regime = Regime::rect;
    c.inputs = {{"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}, {"lambda0", lambda0}};
    record_grids(c, o);
    c.region_kind = "rect";
    c.case_id = case_name(CaseId::rect);

    RectRegion region = rect_params(p);
    c.region = {{"x0", region.x0}, {"x1", region.x1}};
    c.choices["Hhat_lower_bound"] = Hhat_lower_bound(p);
    fixed_point_checks(c, p, region);
    sign_checks(c, p, lambda0, region.x0);

    const int d = p.delta - 1;
    const auto lams = activity_grid(lambda0, o.grid_lambda);
    const auto clams = as_complex(lams);
    const auto xs = linspace(region.x1, region.x0, o.grid_x);

    Probe hp;
    for (int i = 0; i < static_cast<int>(lams.size()); ++i)
        for (int j = 0; j < static_cast<int>(xs.size()); ++j) hp.take(Hhat_rect(p, lams[i], xs[j]), i, j);
    c.min_H = hp.value;
    if (!(hp.value > 0.0)) {
        c.failure_witnesses.push_back({"Hhat", {{"lambda", lams[hp.li]}, {"x", xs[hp.wi]}}, hp.value});
        finish(c, false);
        return c;
    }

    const double y_max = std::min(1.0, kPi / (4.0 * p.delta));
    std::optional<RectRegion> chosen;
    Probe last_h, last_m;
    RegionSample last_bnd;
    double last_y = 0.0;
    for (int j = 0; j < o.k_steps; ++j) {
        RectRegion r = region;
        r.y0 = std::ldexp(y_max, -j);
        // Image of the top edge stays below height y0.
        Probe tp;
        for (int i = 0; i < static_cast<int>(lams.size()); ++i)
            for (int t = 0; t < static_cast<int>(xs.size()); ++t) {
                double v;
                try {
                    v = r.y0 - rh_closed_form(p, lams[i], d * xs[t], d * r.y0).h;
                } catch (const Error&) {
                    v = -kInf;
                }
                tp.take(v, i, t);
            }
        RegionSample bnd = rect_boundary(r, o.boundary_samples);
        Probe mp = image_containment(p, d, clams, bnd, r, o.jobs);
        last_h = tp;
        last_m = mp;
        last_bnd = bnd;
        last_y = r.y0;
        if (tp.value >= o.margin && mp.value >= o.margin) {
            chosen = r;
            c.min_margin = mp.value;
            break;
        }
    }
    if (!chosen) {
        c.min_margin = last_m.value;
        if (last_h.li >= 0 && last_h.value < o.margin)
            c.failure_witnesses.push_back(
                {"top_edge_height", {{"lambda", lams[last_h.li]}, {"x", xs[last_h.wi]}, {"y0", last_y}}, last_h.value});
        if (last_m.li >= 0 && last_m.value < o.margin) containment_witness(c, "containment", last_m, clams, last_bnd, 0.0);
        finish(c, false);
        return c;
    }
    c.region["y0"] = chosen->y0;
    {
        auto ws = rect_interior(*chosen, 33, 17);
        for (auto& bp : last_bnd.points) ws.push_back(bp.z);
        minus_one_check(c, lams, ws, p.delta);
    }
    bool delta_ok = true;
    if (o.estimate_delta) {
        c.delta_hat = estimate_delta(p, d, lams, last_bnd, *chosen, 0.5 * lambda0, o);
        if (!c.delta_hat) {
            delta_ok = false;
            c.failure_witnesses.push_back({"delta", {}, 0.0});
        }
    }
    finish(c, delta_ok);
    return c;
}

// ------------------------------------------------------------------ unbounded

namespace {

struct UnboundedTarget {
    double x1 = 0.0;
    std::optional<std::pair<double, double>> trim;
    std::map<std::string, double> choices;
};

UnboundedTarget unbounded_target(const SpinParams& p, double lambda0, CaseId id) {
    const double b = p.beta, g = p.gamma;
    UnboundedTarget t;
    auto lg = [](double v) {
        if (!(v > 0.0)) throw Error(Errc::hypothesis_violated, "logarithm of a nonpositive corner value");
        return std::log(v);
    };
    if (id == CaseId::unbounded1) {
        const double lower = g < 1.0 ? lg((1.0 - g) / (b - 1.0)) : -HUGE_VAL;
        const double upper = lambda0 > 0.0 ? -std::log(b) : lg((1.0 + g * lambda0) / (b + lambda0));
        if (!(lower < upper)) throw Error(Errc::hypothesis_violated, "empty interval for x1");
        t.x1 = std::isfinite(lower) ? 0.5 * (lower + upper) : upper - 1.0;
        t.choices["x1_interval_lo"] = lower;
        t.choices["x1_interval_hi"] = upper;
        return t;
    }
    if (g > 0.0)
        t.x1 = std::log(g);
    else
        t.x1 = lambda0 > 0.0 ? -std::log(b + lambda0) - 1.0 : -std::log(b) - 1.0;
    if (b + g >= 2.0) {
        // ln((1-g)/(b-1)) <= 0 would fall inside [x1, 0]; cut the region below it.
        const double rmax = lambda0 > 0.0 ? -std::log(b) : lg((1.0 + g * lambda0) / (b + lambda0));
        const double xm = lg((1.0 - g) / (b - 1.0));
        if (!(rmax < xm)) throw Error(Errc::hypothesis_violated, "no room below the -1 preimage");
        t.trim = std::make_pair(t.x1, 0.5 * (rmax + xm));
        t.choices["x3_interval_lo"] = rmax;
        t.choices["x3_interval_hi"] = xm;
    }
    return t;
}

}  // namespace

Certificate certify_unbounded(const SpinParams& p_in, double lambda0, const CertOptions& o) {
    SpinParams p = p_in;
    p.delta = 2;  // d = 1: one aggregated child
    p.validate();
    validate_opts(o);
    if (!std::isfinite(lambda0) || lambda0 == 0.0) throw Error(Errc::domain, "lambda0 must be finite and nonzero");
    const double b = p.beta, g = p.gamma, bg = b * g;

    const BoundResult br = unbounded_lambda_bound(b, g, lambda0 > 0.0 ? Sign::positive : Sign::negative);

    Certificate c;
    c.regime = Regime::unbounded;
    c.inputs = {{"beta", b}, {"gamma", g}, {"lambda0", lambda0}};
    record_grids(c, o);
    c.region_kind = "cone_triangle";
    c.case_id = case_name(br.case_id);
    c.case_bound = br.bound;
    if (!(std::abs(lambda0) < std::abs(br.bound)) || (lambda0 < 0.0 && br.bound > 0.0))
        c.notes.push_back("lambda0 is not strictly inside the degree-free bound");

    UnboundedTarget tg;
    try {
        tg = unbounded_target(p, lambda0, br.case_id);
    } catch (const Error& e) {
        if (e.code() != Errc::hypothesis_violated) throw;
        c.notes.push_back(e.what());
        add_check(c, "region_defined", false, {{"lambda0", lambda0}});
        return c;
    }
    c.choices = tg.choices;
    TriangleRegion target{0.0, tg.x1, 0.0, tg.trim};
    record_triangle(c, target);
    fixed_point_checks(c, p, target);
    add_check(c, "lambda0_above_minus_one", lambda0 > -1.0, {{"lambda0", lambda0}});

    const auto lams = activity_grid(lambda0, o.grid_lambda);
    const auto clams = as_complex(lams);
    const double a = std::abs(lambda0);
    const double C = (b - 1.0 / b) * (1.0 - g / b);
    const double L = std::log((b + 1.0 / b) / (1.0 + g / b));
    if (!(C > 0.0) || !(L > 0.0)) throw Error(Errc::regime_mismatch, "tail constants need beta > 1 and gamma < beta");
    c.choices["tail_L"] = L;
    auto tail_lhs = [&](double xt) { return std::abs(1.0 - bg) * a * std::exp(xt) * std::abs(xt) / C; };

    const double width = -target.re_lo();
    const double k_limit = kPi / (2.0 * width);
    const double k_max = std::min(1.0, kPi / (4.0 * width));
    std::vector<double> ks;
    if (o.k_seed) ks.push_back(*o.k_seed);
    for (int j = 0; j < o.k_steps; ++j) ks.push_back(std::ldexp(k_max, -j));

    std::optional<TriangleRegion> chosen_target, chosen_domain;
    Probe last_m;
    RegionSample last_bnd;
    double last_k = 0.0;
    bool tail_failed_last = false;
    double tail_value = 0.0, tail_floor = 0.0;
    const double nlb = -std::log(b);
    for (double k : ks) {
        if (!(k < k_limit)) continue;
        TriangleRegion tr = target;
        tr.k = k;
        last_k = k;
        // Far tail: everything left of -pi/(2k) maps close to -ln(beta).
        const double far = std::abs(1.0 - bg) * a * std::exp(-kPi / (2.0 * k)) / C - k * L;
        const double floor_x = std::max(-kPi / (2.0 * k), -200.0);
        std::optional<double> xt;
        for (double x = -1.0; x >= floor_x; x -= 0.25) {
            const double s = a * std::exp(x);
            if (!(s <= 1.0 / b) || !(g * s < 1.0)) continue;
            if (!(tail_lhs(x) < L)) continue;
            const double rho = -std::log1p(-g * s) - std::log1p(-s / b);
            const double disk = std::min({(nlb - rho) - tr.re_lo(), tr.re_hi() - (nlb + rho),
                                          k * (-nlb) - rho * std::sqrt(1.0 + k * k)});
            if (disk >= o.margin) {
                xt = x;
                break;
            }
        }
        if (!xt || !(far < 0.0)) {
            tail_failed_last = true;
            tail_value = xt ? far : tail_lhs(floor_x) - L;
            tail_floor = floor_x;
            continue;
        }
        tail_failed_last = false;
        TriangleRegion dom{0.0, *xt, k, std::nullopt};
        const int per_leg = std::min(16384, o.boundary_samples * std::max(1, static_cast<int>(std::ceil(-*xt / 4.0))));
        RegionSample bnd = triangle_boundary(dom, per_leg);
        Probe mp = image_containment(p, 1, clams, bnd, tr, o.jobs);
        last_m = mp;
        last_bnd = bnd;
        if (mp.value >= o.margin) {
            chosen_target = tr;
            chosen_domain = dom;
            c.min_margin = mp.value;
            c.choices["x_tilde"] = *xt;
            c.choices["tail_lhs"] = tail_lhs(*xt);
            c.choices["far_tail"] = far;
            break;
        }
    }

    // H along the domain legs (x0 = 0, d = 1).
    const double h_lo = chosen_domain ? chosen_domain->x1 : target.x1;
    const auto xs = linspace(h_lo, 0.0, o.grid_x);
    Probe hp;
    for (int i = 0; i < static_cast<int>(lams.size()); ++i)
        for (int j = 0; j < static_cast<int>(xs.size()); ++j) {
            double v;
            try {
                v = H_func(p, lams[i], 0.0, xs[j]);
            } catch (const Error&) {
                v = -kInf;
            }
            hp.take(v, i, j);
        }
    c.min_H = hp.value;
    if (!(hp.value > 0.0))
        c.failure_witnesses.push_back({"H", {{"lambda", lams[hp.li]}, {"x", xs[hp.wi]}}, hp.value});

    if (!chosen_target) {
        if (tail_failed_last)
            c.failure_witnesses.push_back({"tail", {{"k", last_k}, {"x_tilde_floor", tail_floor}}, tail_value});
        else if (last_m.li >= 0)
            containment_witness(c, "containment", last_m, clams, last_bnd, last_k);
        finish(c, false);
        return c;
    }
    c.k = chosen_target->k;
    c.region["k"] = chosen_target->k;
    c.region["x_tilde"] = chosen_domain->x1;
    {
        auto ws = triangle_interior(*chosen_domain, 65, 17);
        for (auto& bp : last_bnd.points) ws.push_back(bp.z);
        minus_one_check(c, lams, ws, 1);
    }
    bool delta_ok = true;
    if (o.estimate_delta) {
        c.delta_hat = estimate_delta(p, 1, lams, last_bnd, *chosen_target, 0.5 * a, o);
        if (!c.delta_hat) {
            delta_ok = false;
            c.failure_witnesses.push_back({"delta", {}, 0.0});
        }
    }
    finish(c, delta_ok && hp.value > 0.0);
    return c;
}

// ------------------------------------------------------------------ set cover

Certificate certify_setcover(int delta, double mu, double eta0, const CertOptions& o) {
    validate_opts(o);
    if (delta < 2) throw Error(Errc::domain, "Delta must be at least 2");
    if (!(mu >= -1.0) || !std::isfinite(mu)) throw Error(Errc::condition_mismatch, "mu must be at least -1");
    if (!(eta0 > 0.0) || !std::isfinite(eta0)) throw Error(Errc::domain, "eta0 must be positive");

    const SetCoverThresholdReport rep = setcover_report(delta, mu);
    Certificate c;
    c.regime = Regime::setcover;
    c.inputs = {{"delta", delta}, {"mu", mu}, {"eta0", eta0}};
    c.grids = {{"x", o.grid_x}, {"eta", o.grid_lambda}, {"theta", o.grid_theta}, {"k_steps", o.k_steps}};
    c.margin = o.margin;
    c.region_kind = "spiral";
    c.case_id = "condition" + std::to_string(rep.condition);
    if (rep.condition == 2) c.case_bound = rep.eta1;
    if (rep.condition == 3) c.case_bound = rep.eta2;
    if (c.case_bound && !(eta0 < *c.case_bound)) c.notes.push_back("eta0 is not strictly below the eta bound");

    const int D = delta - 1;
    const double eps = o.setcover_eps;
    const double M = o.setcover_M ? *o.setcover_M : std::max(10.0, 2.0 * std::log(D * (std::abs(mu) + 1.0)) + 5.0);
    const double x_lo = mu == -1.0 ? eps : 0.0;
    c.region["eps"] = eps;
    c.region["M"] = M;
    const auto etas = activity_grid(eta0, o.grid_lambda);
    add_check(c, "mu_at_least_minus_one", mu >= -1.0);

    // Limit criterion.
    const auto xs = linspace(x_lo, M, o.grid_x);
    Probe hp;
    for (int i = 0; i < static_cast<int>(etas.size()); ++i)
        for (int j = 0; j < static_cast<int>(xs.size()); ++j) {
            const double x = xs[j];
            const double a = etas[i] * std::pow(mu * std::exp(-x) + 1.0, D);
            double v = (1.0 + a) * std::log1p(1.0 / a) - D * std::abs(mu) * x / (std::exp(x) + mu);
            hp.take(v, i, j);
        }
    c.min_H = hp.value;
    if (!(hp.value > 0.0)) {
        c.failure_witnesses.push_back({"H", {{"eta", etas[hp.li]}, {"x", xs[hp.wi]}}, hp.value});
        c.min_margin = 0.0;
        finish(c, false);
        return c;
    }

    const double k_max = std::min({1.0, 0.5 * setcover_k_limit(mu), 0.999 * kPi / (4.0 * M)});
    if (mu == 0.0) {
        // Linear recursion: h_{k,2} vanishes, the direct criterion reduces to p_k(ln eta) > 0.
        c.k = k_max;
        c.region["k"] = k_max;
        c.min_margin = p_k(k_max, std::log(eta0));
        c.notes.push_back("mu = 0: direct criterion holds trivially");
        finish(c, c.min_margin >= o.margin);
        return c;
    }

    std::vector<double> ks;
    if (o.k_seed) ks.push_back(*o.k_seed);
    for (int j = 0; j < o.k_steps; ++j) ks.push_back(std::ldexp(k_max, -j));

    std::optional<double> chosen;
    std::vector<Witness> last_fail;
    for (double k : ks) {
        if (!(k < setcover_k_limit(mu)) || !(k < kPi / (4.0 * M))) continue;
        std::vector<Witness> fails;
        const double at = std::atan(k);
        // Large theta: |h_{k,2}| <= arctan(k)/D beyond pi/2.
        const double em = std::abs(mu) * std::exp(-kPi / (2.0 * k));
        const double large = em < 1.0 ? std::atan(em / (1.0 - em)) - at / D : kInf;
        if (!(large < 0.0)) fails.push_back({"tail:large_theta", {{"k", k}}, -large});
        // Middle range (Mk, pi/2).
        const double mid = mu > 0.0 ? std::atan(mu * M * std::exp(-M) * k) - at / D
                                    : std::atan(M * k / std::expm1(M)) - at / D;
        if (!(mid < 0.0)) fails.push_back({"tail:middle_theta", {{"k", k}, {"M", M}}, -mid});
        // Small theta/k for mu = -1: r_{k,2} <= ln(2 eps) there.
        if (mu == -1.0) {
            const double small = p_k(k, std::log(eta0) + D * std::log(2.0 * eps)) - D * at;
            if (!(small > 0.0)) fails.push_back({"tail:small_theta", {{"k", k}, {"eps", eps}}, small});
        }
        const double th0 = theta0(mu, k);
        std::vector<double> thetas;
        for (double x : linspace(x_lo, M, o.grid_theta / 2)) thetas.push_back(k * x);
        if (k * M < th0)
            for (double th : linspace(k * M, th0, o.grid_theta / 2)) thetas.push_back(th);

        const int nt = static_cast<int>(thetas.size());
        std::vector<Probe> per(nt);
        detail::parallel_for(nt, o.jobs, [&](int t) {
            const double th = thetas[t];
            const double r2 = r_k2(mu, k, th), h2 = std::abs(h_k2(mu, k, th));
            for (int i = 0; i < static_cast<int>(etas.size()); ++i)
                per[t].take(p_k(k, std::log(etas[i]) + D * r2) - D * h2, i, t);
        });
        Probe dp;
        for (auto& pr : per) dp.merge(pr);
        if (dp.value < o.margin)
            fails.push_back({"direct", {{"k", k}, {"eta", etas[dp.li]}, {"theta", thetas[dp.wi]}}, dp.value});
        if (fails.empty()) {
            chosen = k;
            c.min_margin = dp.value;
            c.region["theta0"] = th0;
            break;
        }
        last_fail = std::move(fails);
    }
    if (!chosen) {
        c.failure_witnesses.insert(c.failure_witnesses.end(), last_fail.begin(), last_fail.end());
        finish(c, false);
        return c;
    }
    c.k = *chosen;
    c.region["k"] = *chosen;
    finish(c, true);
    return c;
}

// ------------------------------------------------------------------ plotting data

RegionCurves bounded_region_curves(const SpinParams& p, double lambda, const TriangleRegion& region,
                                   int samples_per_leg) {
    p.validate();
    RegionSample bnd = triangle_boundary(region, samples_per_leg);
    RegionCurves out;
    out.min_slack = kInf;
    for (auto& bp : bnd.points) {
        out.boundary.push_back(bp.z);
        cplx im = g_map(p, lambda, p.delta - 1, bp.z);
        out.image.push_back(im);
        out.min_slack = std::min(out.min_slack, slack(region, im));
    }
    return out;
}

}  // namespace zf
