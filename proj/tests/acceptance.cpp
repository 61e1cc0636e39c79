// Acceptance report: one PASS/FAIL line per criterion.
//   zf_acceptance [--only N]... [--expect-fail N]...
// Exit status is 0 when the failing criteria are exactly the expected ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "zerofree/certifier.hpp"
#include "zerofree/cli.hpp"
#include "zerofree/errors.hpp"
#include "zerofree/potential.hpp"
#include "zerofree/spectra.hpp"
#include "zerofree/thresholds.hpp"

using namespace zf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct FigureSet {
    double beta, gamma;
    int delta;
    double lambda0;
};

const FigureSet kFigures[] = {{3, 0.8, 11, 41},     {3, 1.5, 6, 1.5},      {3, 1.5, 6, -0.087},
                              {0.8, 0.6, 4, -0.065}, {1.5, 0.4, 6, -0.83}, {1.2, 0.5, 16, 12.5}};

CertOptions figure_options() {
    CertOptions o;
    o.k_seed = 0.01;
    o.margin = 1e-6;
    return o;
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    struct Row {
        double b, g;
        int D;
        Sign s;
        double want, tol;
    };
    const Row rows[] = {{3, 0.8, 11, Sign::positive, 41.6, 0.1},      {3, 1.5, 6, Sign::positive, 1.51, 0.01},
                        {3, 1.5, 6, Sign::negative, -0.0878, 0.0005}, {0.8, 0.6, 4, Sign::negative, -0.068, 0.001},
                        {1.5, 0.4, 6, Sign::negative, -0.8333, 0.0005}, {1.2, 0.5, 16, Sign::positive, 12.6, 0.1}};
    Outcome o;
    double worst = 0.0;
    for (const Row& r : rows) {
        const double got = bounded_lambda_bound(SpinParams{r.b, r.g, r.D}, r.s).bound;
        worst = std::max(worst, std::abs(got - r.want) / r.tol);
        if (!(std::abs(got - r.want) <= r.tol)) o.pass = false;
        if (r.want == 12.6 && !(got >= 12.5)) o.pass = false;
    }
    const double t = seconds_since(t0);
    if (!(t < 1.0)) o.pass = false;
    o.detail = "worst |err|/tol " + fmt("%.3f", worst) + ", " + fmt("%.4f", t) + " s (limit 1 s)";
    return o;
}

Outcome criterion2() {
    Outcome o;
    double worst = 0.0;
    for (int D = 3; D <= 8; ++D) {
        const double pos = std::pow(D - 1.0, D - 1.0) / std::pow(D - 2.0, D);
        const double neg = -std::pow(D - 1.0, D - 1.0) / std::pow(D, D);
        const double ep = std::abs(bounded_lambda_bound(SpinParams{1, 0, D}, Sign::positive).bound - pos);
        const double en = std::abs(bounded_lambda_bound(SpinParams{1, 0, D}, Sign::negative).bound - neg);
        worst = std::max({worst, ep, en});
    }
    o.pass = worst <= 1e-12;
    o.detail = "max abs error " + fmt("%.2e", worst) + " (tol 1e-12), Delta 3..8";
    return o;
}

Outcome criterion3() {
    Outcome o;
    const auto r = setcover_report(5, 1.0);
    const double eta1 = r.eta1 ? *r.eta1 : std::nan("");
    o.pass = r.condition == 2 && std::abs(eta1 - 1.45399) <= 1e-3;
    int certified = 0, total = 0;
    for (int i = 0; i <= 8; ++i) {
        const double mu = -1.0 + i / 8.0;
        for (double eta0 : {0.5, 2.0, 10.0}) {
            ++total;
            const bool cond1 = setcover_report(2, mu).condition == 1;
            if (cond1 && certify_setcover(2, mu, eta0).pass) ++certified;
        }
    }
    if (certified != total) o.pass = false;
    o.detail = "eta1(5,1) = " + fmt("%.6f", eta1) + " (1.45399 +- 1e-3); Delta=2 condition-1 certificates " +
               std::to_string(certified) + "/" + std::to_string(total) + " (mu in [-1,0] step 1/8, eta0 in {0.5,2,10})";
    return o;
}

Outcome criterion4(std::vector<Certificate>& certs) {
    const auto t0 = Clock::now();
    Outcome o;
    std::ostringstream d;
    double min_margin = HUGE_VAL, min_slack = HUGE_VAL;
    for (const FigureSet& f : kFigures) {
        Certificate c = certify_bounded(SpinParams{f.beta, f.gamma, f.delta}, f.lambda0, figure_options());
        if (!c.pass || !(c.margin >= 1e-6)) o.pass = false;
        min_margin = std::min(min_margin, c.min_margin);
        certs.push_back(c);
        std::ostringstream out, err;
        char l0[32], bb[32], gg[32];
        std::snprintf(l0, sizeof l0, "%.17g", f.lambda0);
        std::snprintf(bb, sizeof bb, "%.17g", f.beta);
        std::snprintf(gg, sizeof gg, "%.17g", f.gamma);
        const int code = cli::run({"region-csv", "--beta", bb, "--gamma", gg, "--delta", std::to_string(f.delta),
                                   "--lambda0", l0, "--k", "0.01"},
                                  out, err);
        const std::string e = err.str();
        const auto pos = e.find("min_slack=");
        const double slack = pos == std::string::npos ? std::nan("") : std::stod(e.substr(pos + 10));
        min_slack = std::min(min_slack, slack);
        if (code != 0 || !(slack > 0.0)) o.pass = false;
    }
    const double t = seconds_since(t0);
    if (!(t < 30.0)) o.pass = false;
    d << "6 figure sets, min certificate margin " << fmt("%.2e", min_margin) << ", min CSV image slack "
      << fmt("%.2e", min_slack) << ", " << fmt("%.2f", t) << " s (limit 30 s)";
    o.detail = d.str();
    return o;
}

Outcome criterion5(const std::vector<Certificate>& certs) {
    const auto t0 = Clock::now();
    Outcome o;
    int violations = 0, scanned = 0;
    double worst_ratio = HUGE_VAL;
    for (size_t i = 0; i < certs.size(); ++i) {
        const Certificate& c = certs[i];
        if (!c.pass || !c.delta_hat) {
            o.pass = false;
            continue;
        }
        const FigureSet& f = kFigures[i];
        FamilySpec fam;
        fam.kind = "mixed";
        fam.n_max = 12;
        fam.max_degree = f.delta;
        fam.count = 200;
        fam.seed = 1000 + i;
        const double delta = *c.delta_hat / 2.0;
        ScanReport r = zero_scan(SpinParams{f.beta, f.gamma, f.delta}, fam, f.lambda0, delta, true);
        violations += r.violations;
        scanned += r.samples;
        worst_ratio = std::min(worst_ratio, r.min_distance / delta);
        if (r.verdict != ScanVerdict::pass) o.pass = false;
    }
    const double t = seconds_since(t0);
    if (!(t < 300.0)) o.pass = false;
    o.detail = std::to_string(scanned) + " instances, " + std::to_string(violations) +
               " roots within delta_hat/2, min root distance / (delta_hat/2) = " + fmt("%.3g", worst_ratio) + ", " +
               fmt("%.2f", t) + " s (limit 300 s)";
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int trees = 0, skipped = 0;
    while (trees < 500) {
        const int n = 1 + static_cast<int>(rng() % 9);
        auto e = oracle::random_tree(rng, n);
        SpinParams p{0.2 + 2.8 * u(rng), 2.0 * u(rng), 10};
        const double lam = std::exp(4.0 * u(rng) - 2.0) * (u(rng) < 0.8 ? 1.0 : -0.1);
        const int root = static_cast<int>(rng() % n);
        Pins pins;
        for (int v = 0; v < n; ++v)
            if (v != root && u(rng) < 0.2) pins[v] = u(rng) < 0.5 ? 0 : 1;
        Graph g(n, e);
        if (!is_feasible_2spin(p, g, pins)) continue;
        Pins p1 = pins, p0 = pins;
        p1[root] = 1;
        p0[root] = 0;
        const cplx den = oracle::z_2spin(p.beta, p.gamma, n, e, lam, p0);
        const cplx num = oracle::z_2spin(p.beta, p.gamma, n, e, lam, p1);
        if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(num))) {
            ++skipped;
            continue;
        }
        Ratio r = ratio_via_tree(p, g, root, pins, lam);
        worst = std::max(worst, r.infinite ? HUGE_VAL : oracle::rel_err(r.value, num / den));
        ++trees;
    }
    double worst_h = 0.0;
    int hypertrees = 0;
    while (hypertrees < 200) {
        auto [n, edges] = oracle::random_hypertree(rng, 1 + static_cast<int>(rng() % 4), 3);
        const double mu = -1.0 + 3.0 * u(rng);
        const double eta = std::exp(3.0 * u(rng) - 1.5);
        const cplx den = oracle::z_setcover(n, edges, mu, eta, {{0, 1}});
        const cplx num = oracle::z_setcover(n, edges, mu, eta, {{0, 0}});
        if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(num))) {
            ++skipped;
            continue;
        }
        Ratio r = ratio_via_setcover_tree(Hypergraph(n, edges), 0, {}, mu, eta);
        worst_h = std::max(worst_h, r.infinite ? HUGE_VAL : oracle::rel_err(r.value, num / den));
        ++hypertrees;
    }
    o.pass = worst < 1e-10 && worst_h < 1e-10;
    o.detail = "500 trees max rel err " + fmt("%.2e", worst) + ", 200 hypertrees " + fmt("%.2e", worst_h) +
               " (tol 1e-10; " + std::to_string(skipped) + " draws with vanishing denominator redrawn)";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_ec = 0.0, worst_bis = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng() % 7);
        auto e = oracle::random_graph(rng, n, n, 0.4);
        const double mu = 2.0 * u(rng);
        const double eta = 0.1 + 2.0 * u(rng);
        EdgeCoverReduction ec = edge_cover_to_setcover(Graph(n, e));
        worst_ec = std::max(worst_ec, oracle::rel_err(ec.evaluate(mu, eta), oracle::edge_cover(n, e, mu, eta)));
    }
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng() % 9);
        std::vector<int> side(n);
        for (auto& s : side) s = static_cast<int>(rng() % 2);
        oracle::Edges e;
        for (auto [a, b] : oracle::random_graph(rng, n, n, 0.5))
            if (side[a] != side[b]) e.emplace_back(a, b);
        const double mu = 2.0 * u(rng);
        const double eta = 0.1 + 2.0 * u(rng);
        BisReduction br = bis_to_setcover(Graph(n, e), side);
        worst_bis = std::max(worst_bis, oracle::rel_err(br.evaluate(eta, mu), oracle::bis(n, e, side, eta, mu)));
    }
    o.pass = worst_ec < 1e-10 && worst_bis < 1e-10;
    o.detail = "edge cover max rel err " + fmt("%.2e", worst_ec) + ", BIS " + fmt("%.2e", worst_bis) +
               " over 100 instances each (tol 1e-10)";
    return o;
}

Outcome criterion8() {
    Outcome o;
    const SpinParams hc{1.0, 0.0, 3};
    const Certificate c = certify_bounded(hc, 3.5, figure_options());
    if (!c.pass) o.pass = false;
    const double lambda = 3.5 * 0.9;
    const SectorMap map{4.0 / 27.0, 115.0 * 3.14159265358979323846 / 180.0};
    FamilySpec fam;
    fam.kind = "mixed";
    fam.n_max = 12;
    fam.max_degree = 3;
    fam.count = 50;
    fam.seed = 808;
    double worst_rate = 0.0, worst_err = 0.0;
    int used = 0;
    for (int i = 0; i < fam.count; ++i) {
        Instance inst = family_instance(hc, fam, i);
        PartitionPolynomial z = Z_polynomial_2spin(hc, inst.graph, inst.pins);
        const int low = z.low_order_zeros();
        PartitionPolynomial q{std::vector<double>(z.coeffs.begin() + low, z.coeffs.end())};
        if (q.degree() < 1) continue;  // constant: every truncation is exact
        auto errs = barvinok_sector_errors(q, lambda, 40, map);
        worst_err = std::max(worst_err, errs.back());
        worst_rate = std::max(worst_rate, geometric_rate(errs, 10, 40));
        ++used;
    }
    if (!(worst_rate < 0.98) || !(worst_err < 1e-4)) o.pass = false;
    o.detail = "certificate at lambda0=3.5 " + std::string(c.pass ? "pass" : "fail") + ", " + std::to_string(used) +
               " nonconstant instances, worst geometric ratio " + fmt("%.3f", worst_rate) +
               " (limit 0.98), worst relative error at m=40 " + fmt("%.2e", worst_err) + " (limit 1e-4)";
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_rh = 0.0;
    int n = 0;
    while (n < 10000) {
        SpinParams p{0.1 + 3.0 * u(rng), 2.0 * u(rng), 2 + static_cast<int>(rng() % 15)};
        const double lam = (u(rng) < 0.5 ? -1.0 : 1.0) * std::exp(4.0 * u(rng) - 3.0);
        const double x = 3.0 * u(rng) - 2.0, y = 3.0 * u(rng) - 1.5;
        const double s = lam * std::exp(x);
        if (!(1.0 + p.gamma * s * std::cos(y) > 0.0) || !(p.beta + s * std::cos(y) > 0.0)) continue;
        const cplx z = lam * std::exp(cplx(x, y));
        const cplx w = std::log((p.gamma * z + 1.0) / (z + p.beta));
        const RH rh = rh_closed_form(p, lam, x, y);
        worst_rh = std::max({worst_rh, std::abs(rh.r - w.real()), std::abs(rh.h - std::abs(w.imag()))});
        ++n;
    }
    double worst_fd = 0.0;
    n = 0;
    while (n < 10000) {
        SpinParams p{0.1 + 3.0 * u(rng), 2.0 * u(rng), 2 + static_cast<int>(rng() % 15)};
        const double lam = (u(rng) < 0.5 ? -1.0 : 1.0) * std::exp(6.0 * u(rng) - 4.0);
        const double x0 = u(rng), x = x0 - 2.0 * u(rng);
        const double s = lam * std::exp((p.delta - 1.0) * x);
        if (!(p.gamma * s + 1.0 > 0.05) || !(p.beta + s > 0.05)) continue;
        auto G = [&](double k) { return G_func(p, lam, x0, x - 1.0, k, x); };
        const double eps = 1e-4 / (1.0 + (p.delta - 1.0) * (x0 - x));
        const double fd = 2.0 * (G(eps / 2) - G(0.0)) / (eps / 2) - (G(eps) - G(0.0)) / eps;
        const double h = H_func(p, lam, x0, x);
        worst_fd = std::max(worst_fd, std::abs(fd - h) / std::max(1.0, std::abs(h)));
        ++n;
    }
    o.pass = worst_rh < 1e-12 && worst_fd < 1e-5;
    o.detail = "rh closed form max abs err " + fmt("%.2e", worst_rh) + " (tol 1e-12), H vs finite difference " +
               fmt("%.2e", worst_fd) + " (tol 1e-5 relative to max(1,|H|)), 1e4 points each";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only, expect_fail;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const int n = std::atoi(argv[i + 1]);
        if (flag == "--only")
            only.insert(n);
        else if (flag == "--expect-fail")
            expect_fail.insert(n);
        else {
            std::fprintf(stderr, "usage: %s [--only N]... [--expect-fail N]...\n", argv[0]);
            return 2;
        }
    }
    std::vector<Certificate> certs;
    std::vector<std::function<Outcome()>> criteria{criterion1,
                                                   criterion2,
                                                   criterion3,
                                                   [&] { return criterion4(certs); },
                                                   [&] {
                                                       if (certs.empty()) criterion4(certs);
                                                       return criterion5(certs);
                                                   },
                                                   criterion6,
                                                   criterion7,
                                                   criterion8,
                                                   criterion9};
    bool as_expected = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Outcome r;
        try {
            r = criteria[i]();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const bool expected = expect_fail.count(id) > 0;
        std::printf("criterion %d: %s  %s%s\n", id, r.pass ? "PASS" : "FAIL", r.detail.c_str(),
                    !r.pass && expected ? "  [known failure]" : "");
        std::fflush(stdout);
        if (r.pass == expected) as_expected = false;
    }
    return as_expected ? 0 : 1;
}
