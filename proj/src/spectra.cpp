#include "zerofree/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "zerofree/thresholds.hpp"

namespace zf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HornerResult {
    cplx p, dp;
    double scale;  // sum |c_i| |z|^i
};

HornerResult horner(const std::vector<double>& c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    double scale = 0.0;
    const double az = std::abs(z);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        dp = dp * z + p;
        p = p * z + c[i];
        scale = scale * az + std::abs(c[i]);
    }
    return {p, dp, scale};
}

double scaled_residual(const std::vector<double>& c, cplx z) {
    HornerResult h = horner(c, z);
    return h.scale > 0.0 ? std::abs(h.p) / h.scale : 0.0;
}

bool aberth(const std::vector<double>& c, std::vector<cplx>& z, int max_iter, int& iters) {
    const int n = static_cast<int>(z.size());
    std::vector<bool> done(n, false);
    for (int it = 0; it < max_iter; ++it) {
        ++iters;
        bool all = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            HornerResult h = horner(c, z[k]);
            if (h.scale > 0.0 && std::abs(h.p) <= 1e-15 * h.scale) {
                done[k] = true;
                continue;
            }
            cplx ratio = h.p / h.dp;
            cplx s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            cplx w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
            z[k] -= w;
            if (std::abs(w) <= 1e-15 * std::max(1.0, std::abs(z[k])))
                done[k] = true;
            else
                all = false;
        }
        if (all) return true;
    }
    return false;
}

std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, int m) {
    std::vector<cplx> out(m + 1, 0.0);
    for (int i = 0; i <= m; ++i) {
        if (a[i] == cplx(0.0)) continue;
        for (int j = 0; i + j <= m; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// sum_j c_j psi(z)^j truncated at order m; psi[0] must be 0.
std::vector<cplx> series_compose(const std::vector<double>& c, const std::vector<cplx>& psi, int m) {
    std::vector<cplx> acc(m + 1, 0.0);
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
        acc = series_mul(acc, psi, m);
        acc[0] += c[j];
    }
    return acc;
}

// Coefficients 1..m of ln(a(z)/a(0)).
std::vector<cplx> series_log(const std::vector<cplx>& a_in, int m) {
    if (a_in[0] == cplx(0.0)) throw Error(Errc::zero_constant_term, "constant term is zero");
    std::vector<cplx> a(m + 1, 0.0);
    for (int i = 0; i <= m && i < static_cast<int>(a_in.size()); ++i) a[i] = a_in[i] / a_in[0];
    std::vector<cplx> L(m + 1, 0.0);
    for (int k = 1; k <= m; ++k) {
        cplx s = static_cast<double>(k) * a[k];
        for (int j = 1; j < k; ++j) s -= static_cast<double>(j) * L[j] * a[k - j];
        L[k] = s / static_cast<double>(k);
    }
    return {L.begin() + 1, L.end()};
}

std::vector<cplx> series_exp(const std::vector<cplx>& f, int m) {
    std::vector<cplx> g(m + 1, 0.0);
    g[0] = std::exp(f[0]);
    for (int k = 1; k <= m; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * f[j] * g[k - j];
        g[k] = s / static_cast<double>(k);
    }
    return g;
}

std::vector<double> trimmed(const PartitionPolynomial& p) {
    std::vector<double> c = p.coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return c;
}

}  // namespace

// ------------------------------------------------------------------ roots

RootSet poly_roots(const PartitionPolynomial& p, int max_iter) {
    std::vector<double> c = trimmed(p);
    if (c.size() < 2) throw Error(Errc::domain, "polynomial degree must be at least 1");
    for (double v : c)
        if (!std::isfinite(v)) throw Error(Errc::domain, "non-finite coefficient");
    RootSet out;
    const int low = p.low_order_zeros();
    out.roots.assign(low, cplx(0.0));
    std::vector<double> q(c.begin() + low, c.end());
    const int n = static_cast<int>(q.size()) - 1;
    if (n == 0) return out;
    if (n == 1) {
        out.roots.push_back(-q[0] / q[1]);
    } else {
        const double radius = std::pow(std::abs(q[0] / q[n]), 1.0 / n);
        std::mt19937_64 rng(0x5eedULL);
        std::uniform_real_distribution<double> jitter(0.5, 1.5);
        bool ok = false;
        std::vector<cplx> z(n);
        for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
            const double r = attempt == 0 ? radius : radius * jitter(rng);
            const double phase = attempt == 0 ? 0.4 : 6.283185307179586 * jitter(rng);
            for (int k = 0; k < n; ++k) z[k] = std::polar(r, 6.283185307179586 * k / n + phase);
            ok = aberth(q, z, max_iter, out.iterations);
            if (!ok) {
                double worst = 0.0;
                for (auto& zk : z) worst = std::max(worst, scaled_residual(q, zk));
                ok = worst < 1e-10;
            }
        }
        if (!ok) throw Error(Errc::nonconvergence, "root iteration did not converge");
        out.roots.insert(out.roots.end(), z.begin(), z.end());
    }
    for (auto& r : out.roots) out.residual_max = std::max(out.residual_max, scaled_residual(c, r));
    return out;
}

// ------------------------------------------------------------------ scans

FamilySpec parse_family(const std::string& s) {
    FamilySpec f;
    auto colon = s.find(':');
    f.kind = s.substr(0, colon);
    if (f.kind != "random" && f.kind != "tree" && f.kind != "mixed")
        throw Error(Errc::invalid_input, "family kind must be random, tree or mixed");
    if (colon == std::string::npos) return f;
    std::stringstream ss(s.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(Errc::invalid_input, "family option '" + item + "' needs key=value");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        try {
            if (key == "n")
                f.n_max = std::stoi(val);
            else if (key == "nmin")
                f.n_min = std::stoi(val);
            else if (key == "deg")
                f.max_degree = std::stoi(val);
            else if (key == "count")
                f.count = std::stoi(val);
            else if (key == "pins")
                f.pin_prob = std::stod(val);
            else
                throw Error(Errc::invalid_input, "unknown family option '" + key + "'");
        } catch (const std::logic_error&) {
            throw Error(Errc::invalid_input, "bad value in family option '" + item + "'");
        }
    }
    if (f.n_min < 1 || f.n_max < f.n_min || f.max_degree < 1 || f.count < 1 || f.pin_prob < 0.0 || f.pin_prob > 1.0)
        throw Error(Errc::invalid_input, "family options out of range");
    return f;
}

Instance family_instance(const SpinParams& p, const FamilySpec& spec, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> nd(spec.n_min, spec.n_max);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int n = nd(rng);
    const std::string kind = spec.kind == "mixed" ? (index % 2 == 0 ? "random" : "tree") : spec.kind;
    std::vector<int> deg(n, 0);
    std::vector<std::pair<int, int>> edges;
    if (kind == "random") {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        const double q = 0.2 + 0.8 * u01(rng);
        for (auto [i, j] : pairs)
            if (deg[i] < spec.max_degree && deg[j] < spec.max_degree && u01(rng) < q) {
                edges.emplace_back(i, j);
                ++deg[i];
                ++deg[j];
            }
    } else {
        for (int v = 1; v < n; ++v) {
            std::vector<int> cand;
            for (int u = 0; u < v; ++u)
                if (deg[u] < spec.max_degree) cand.push_back(u);
            if (cand.empty()) continue;
            int u = cand[std::uniform_int_distribution<int>(0, static_cast<int>(cand.size()) - 1)(rng)];
            edges.emplace_back(u, v);
            ++deg[u];
            ++deg[v];
        }
    }
    Instance inst{Graph(n, edges), {}};
    for (int attempt = 0; attempt < 20; ++attempt) {
        Pins pins;
        for (int v = 0; v < n; ++v)
            if (u01(rng) < spec.pin_prob) pins[v] = u01(rng) < 0.5 ? 0 : 1;
        if (is_feasible_2spin(p, inst.graph, pins)) {
            inst.pins = std::move(pins);
            break;
        }
    }
    return inst;
}

const char* scan_verdict_name(ScanVerdict v) {
    switch (v) {
        case ScanVerdict::pass: return "pass";
        case ScanVerdict::fail: return "fail";
        case ScanVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

double distance_to_segment(cplx z, double lambda0) {
    const double lo = std::min(0.0, lambda0), hi = std::max(0.0, lambda0);
    const double x = std::clamp(z.real(), lo, hi);
    return std::hypot(z.real() - x, z.imag());
}

ScanReport zero_scan(const SpinParams& p, const FamilySpec& family, double lambda0, double delta,
                     std::optional<bool> expect_zero_free, int jobs) {
    p.validate();
    if (!std::isfinite(lambda0)) throw Error(Errc::domain, "lambda0 must be finite");
    if (!(delta >= 0.0)) throw Error(Errc::domain, "delta must be nonnegative");
    if (family.count < 1) throw Error(Errc::domain, "family count must be positive");
    ScanReport rep;
    rep.lambda0 = lambda0;
    rep.delta = delta;
    if (expect_zero_free) {
        rep.expected_zero_free = *expect_zero_free;
    } else {
        try {
            BoundResult b = bounded_lambda_bound(p, lambda0 >= 0.0 ? Sign::positive : Sign::negative);
            rep.expected_zero_free = std::abs(lambda0) < std::abs(b.bound);
        } catch (const Error&) {
            rep.expected_zero_free = in_rect_band(p) && lambda0 > 0.0;
        }
    }

    std::vector<ScanSample> samples(family.count);
    detail::parallel_for(family.count, jobs, [&](int i) {
        Instance inst = family_instance(p, family, i);
        PartitionPolynomial z = Z_polynomial_2spin(p, inst.graph, inst.pins);
        const int low = z.low_order_zeros();
        PartitionPolynomial q{std::vector<double>(z.coeffs.begin() + low, z.coeffs.end())};
        ScanSample s;
        s.index = i;
        s.n = inst.graph.n;
        s.edges = static_cast<int>(inst.graph.edges.size());
        s.pins = static_cast<int>(inst.pins.size());
        s.degree = q.degree();
        s.min_distance = kInf;
        if (q.degree() >= 1) {
            for (auto r : poly_roots(q).roots) {
                double d = distance_to_segment(r, lambda0);
                if (d < s.min_distance) {
                    s.min_distance = d;
                    s.nearest_root = r;
                }
            }
        }
        samples[i] = s;
    });

    rep.samples = family.count;
    rep.min_distance = kInf;
    for (auto& s : samples) {
        if (s.min_distance < rep.min_distance || !rep.worst) {
            rep.min_distance = s.min_distance;
            rep.worst = s;
        }
        if (!(s.min_distance > delta)) {
            ++rep.violations;
            if (rep.violating.size() < 10) rep.violating.push_back(s);
        }
    }
    if (rep.violations > 0)
        rep.verdict = ScanVerdict::fail;
    else
        rep.verdict = rep.expected_zero_free ? ScanVerdict::pass : ScanVerdict::inconclusive;
    return rep;
}

// ------------------------------------------------------------------ Taylor / Barvinok

std::vector<cplx> log_taylor(const PartitionPolynomial& p, int m) {
    if (m < 0) throw Error(Errc::domain, "m must be nonnegative");
    if (p.coeffs.empty() || p.coeffs[0] == 0.0) throw Error(Errc::zero_constant_term, "Z(0) = 0");
    std::vector<cplx> a(m + 1, 0.0);
    for (int i = 0; i <= m && i < static_cast<int>(p.coeffs.size()); ++i) a[i] = p.coeffs[i];
    return series_log(a, m);
}

namespace {

TaylorApprox finish_approx(const PartitionPolynomial& p, cplx point, cplx lambda, std::vector<cplx> L) {
    TaylorApprox t;
    t.terms = static_cast<int>(L.size());
    cplx acc = 0.0, pw = 1.0;
    for (auto l : L) {
        pw *= point;
        acc += l * pw;
    }
    const double c0 = p.coeffs[0];
    t.value = c0 * std::exp(acc);
    const cplx exact = p(lambda);
    t.relative_error = exact == cplx(0.0) ? kInf : std::abs(t.value / exact - 1.0);
    t.log_coeffs = std::move(L);
    return t;
}

}  // namespace

TaylorApprox barvinok_eval(const PartitionPolynomial& p, cplx lambda, int m) {
    return finish_approx(p, lambda, lambda, log_taylor(p, m));
}

cplx SectorMap::to_disk(cplx lambda) const {
    const double a = 2.0 * half_angle / std::numbers::pi;
    const cplx q = std::pow(1.0 + lambda / apex, 1.0 / a);
    return (q - 1.0) / (q + 1.0);
}

cplx SectorMap::from_disk(cplx z) const {
    const double a = 2.0 * half_angle / std::numbers::pi;
    return apex * (std::pow((1.0 + z) / (1.0 - z), a) - 1.0);
}

std::vector<cplx> SectorMap::series(int m) const {
    // ((1+z)/(1-z))^a = exp(2a atanh z).
    const double a = 2.0 * half_angle / std::numbers::pi;
    std::vector<cplx> f(m + 1, 0.0);
    for (int k = 1; k <= m; k += 2) f[k] = 2.0 * a / k;
    std::vector<cplx> g = series_exp(f, m);
    g[0] = 0.0;
    for (auto& v : g) v *= apex;
    return g;
}

namespace {

void check_map(const SectorMap& map, const PartitionPolynomial& p, cplx lambda) {
    if (!(map.apex > 0.0) || !(map.half_angle > 0.0) || !(map.half_angle < std::numbers::pi))
        throw Error(Errc::domain, "sector map needs apex > 0 and half angle in (0, pi)");
    if (p.coeffs.empty() || p.coeffs[0] == 0.0) throw Error(Errc::zero_constant_term, "Z(0) = 0");
    if (!(std::abs(std::arg(lambda + map.apex)) < map.half_angle))
        throw Error(Errc::domain, "lambda lies outside the sector");
}

std::vector<cplx> sector_log_coeffs(const PartitionPolynomial& p, int m, const SectorMap& map) {
    return series_log(series_compose(p.coeffs, map.series(m), m), m);
}

}  // namespace

TaylorApprox barvinok_sector(const PartitionPolynomial& p, cplx lambda, int m, const SectorMap& map) {
    check_map(map, p, lambda);
    return finish_approx(p, map.to_disk(lambda), lambda, sector_log_coeffs(p, m, map));
}

std::vector<double> barvinok_sector_errors(const PartitionPolynomial& p, cplx lambda, int m, const SectorMap& map) {
    check_map(map, p, lambda);
    const std::vector<cplx> L = sector_log_coeffs(p, m, map);
    const cplx zs = map.to_disk(lambda);
    const cplx exact = p(lambda);
    std::vector<double> errs;
    cplx acc = 0.0, pw = 1.0;
    for (auto l : L) {
        pw *= zs;
        acc += l * pw;
        errs.push_back(std::abs(p.coeffs[0] * std::exp(acc) / exact - 1.0));
    }
    return errs;
}

double geometric_rate(const std::vector<double>& errors, int lo, int hi) {
    if (lo < 1 || hi > static_cast<int>(errors.size()) || hi < lo) throw Error(Errc::domain, "bad order range");
    // Entries at the rounding floor carry no rate information.
    std::vector<std::pair<double, double>> pts;
    for (int m = lo; m <= hi; ++m)
        if (errors[m - 1] > 1e-13) pts.emplace_back(m, std::log(errors[m - 1]));
    if (pts.size() < 3) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    return std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

}  // namespace zf
