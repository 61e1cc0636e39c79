#include "zerofree/cli.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zerofree/certifier.hpp"
#include "zerofree/io.hpp"
#include "zerofree/regions.hpp"
#include "zerofree/spectra.hpp"
#include "zerofree/thresholds.hpp"

namespace zf::cli {

namespace {

using io::json;

struct Emit {
    std::ostream& out;
    std::string path;

    void text(const std::string& s) const {
        if (path.empty())
            out << s;
        else
            io::write_text_file(path, s);
    }
    void doc(const json& j) const { text(j.dump(2) + "\n"); }
};

struct SpinFlags {
    double beta = 1.0, gamma = 0.0;
    int delta = 3;
    void add(CLI::App* app) {
        app->add_option("--beta", beta, "edge weight for two 0 spins")->capture_default_str();
        app->add_option("--gamma", gamma, "edge weight for two 1 spins")->capture_default_str();
        app->add_option("--delta", delta, "maximum degree")->capture_default_str();
    }
    SpinParams params() const { return SpinParams{beta, gamma, delta}; }
};

struct CertFlags {
    CertOptions o;
    double k = 0.0;
    bool no_delta = false;
    void add(CLI::App* app) {
        app->add_option("--grid-x", o.grid_x, "x grid points")->capture_default_str();
        app->add_option("--grid-lambda", o.grid_lambda, "activity grid points")->capture_default_str();
        app->add_option("--grid-theta", o.grid_theta, "theta grid points (set cover)")->capture_default_str();
        app->add_option("--boundary", o.boundary_samples, "boundary samples per side")->capture_default_str();
        app->add_option("--margin", o.margin, "required slack")->capture_default_str();
        app->add_option("--k", k, "slope tried before the halving grid");
        app->add_option("--k-steps", o.k_steps, "halving steps")->capture_default_str();
        app->add_flag("--no-delta", no_delta, "skip the delta estimate");
    }
    CertOptions options(int jobs) const {
        CertOptions r = o;
        if (k > 0.0) r.k_seed = k;
        r.estimate_delta = !no_delta;
        r.jobs = jobs;
        return r;
    }
};

int certificate_exit(const Certificate& c, const Emit& emit) {
    emit.doc(io::to_json(c));
    if (!emit.path.empty()) emit.out << "verdict: " << (c.pass ? "pass" : "fail") << "\n";
    return c.pass ? 0 : 1;
}

Certificate recompute(const Certificate& c, int jobs) {
    CertOptions o;
    auto grid = [&](const char* key, int& slot) {
        auto it = c.grids.find(key);
        if (it != c.grids.end()) slot = static_cast<int>(it->second);
    };
    grid("x", o.grid_x);
    grid("lambda", o.grid_lambda);
    grid("eta", o.grid_lambda);
    grid("theta", o.grid_theta);
    grid("boundary", o.boundary_samples);
    grid("k_steps", o.k_steps);
    grid("delta_radii", o.delta_radii);
    grid("delta_directions", o.delta_directions);
    o.margin = c.margin;
    o.jobs = jobs;
    if (c.k) o.k_seed = *c.k;
    if (auto it = c.grids.find("estimate_delta"); it != c.grids.end()) o.estimate_delta = it->second != 0.0;
    auto in = [&](const char* key) {
        auto it = c.inputs.find(key);
        if (it == c.inputs.end()) throw Error(Errc::invalid_input, std::string("certificate lacks input ") + key);
        return it->second;
    };
    if (c.regime == Regime::setcover) {
        if (auto it = c.region.find("eps"); it != c.region.end()) o.setcover_eps = it->second;
        if (auto it = c.region.find("M"); it != c.region.end()) o.setcover_M = it->second;
        return certify_setcover(static_cast<int>(in("delta")), in("mu"), in("eta0"), o);
    }
    SpinParams p{in("beta"), in("gamma"), c.inputs.count("delta") ? static_cast<int>(in("delta")) : 2};
    if (c.choices.count("region_override")) {
        TriangleRegion r{c.region.at("x0"), c.region.at("x1"), 0.0, std::nullopt};
        if (c.region.count("x2")) r.trim = std::make_pair(c.region.at("x2"), c.region.at("x3"));
        o.region = r;
    }
    switch (c.regime) {
        case Regime::bounded: return certify_bounded(p, in("lambda0"), o);
        case Regime::rect: return certify_rect(p, in("lambda0"), o);
        case Regime::unbounded: return certify_unbounded(p, in("lambda0"), o);
        default: break;
    }
    throw Error(Errc::invalid_input, "unknown regime");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zero-free region thresholds, contraction certificates and partition-function tools", "zerofree"};
    app.require_subcommand(1);
    std::string out_path;
    int jobs = 0;
    std::uint64_t seed = 1;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out,--json", out_path, "write the result to this file instead of stdout");
        sub->add_option("--jobs", jobs, "worker threads (0: available parallelism)")->capture_default_str();
    };

    // thresholds
    auto* th = app.add_subcommand("thresholds", "closed-form activity bounds");
    SpinFlags th_spin;
    th_spin.add(th);
    std::string th_model = "2spin", th_sign = "pos";
    double th_mu = 0.0;
    th->add_option("--model", th_model, "2spin or setcover")->check(CLI::IsMember({"2spin", "setcover"}))->capture_default_str();
    th->add_option("--sign", th_sign, "pos or neg")->check(CLI::IsMember({"pos", "neg"}))->capture_default_str();
    th->add_option("--mu", th_mu, "set-cover edge parameter")->capture_default_str();
    common(th);

    // certify
    auto* cert = app.add_subcommand("certify", "numerical contraction certificates");
    cert->require_subcommand(1);
    SpinFlags c_spin;
    CertFlags c_flags;
    double c_lambda0 = 0.0, c_mu = 0.0, c_eta0 = 0.0;
    std::string c_in;
    std::vector<CLI::App*> two_spin_subs;
    for (const char* name : {"bounded", "rect", "unbounded"}) {
        auto* s = cert->add_subcommand(name, std::string(name) + " regime");
        c_spin.add(s);
        s->add_option("--lambda0", c_lambda0, "activity endpoint")->required();
        c_flags.add(s);
        common(s);
        two_spin_subs.push_back(s);
    }
    auto* c_sc = cert->add_subcommand("setcover", "generalized set cover");
    c_sc->add_option("--delta", c_spin.delta, "maximum degree")->required();
    c_sc->add_option("--mu", c_mu, "edge parameter")->required();
    c_sc->add_option("--eta0", c_eta0, "activity endpoint")->required();
    c_flags.add(c_sc);
    common(c_sc);
    auto* c_re = cert->add_subcommand("recheck", "recompute a stored certificate and compare verdicts");
    c_re->add_option("--in", c_in, "certificate JSON")->required()->check(CLI::ExistingFile);
    common(c_re);

    // zeros
    auto* zs = app.add_subcommand("zeros", "roots of Z and randomized zero-free scans");
    SpinFlags z_spin;
    z_spin.add(zs);
    std::string z_model = "2spin", z_family = "mixed:n=12,count=200", z_graph, z_expect = "auto";
    double z_lambda0 = 0.0, z_margin = 0.0;
    zs->add_option("--model", z_model, "only 2spin")->check(CLI::IsMember({"2spin"}))->capture_default_str();
    zs->add_option("--lambda0", z_lambda0, "activity endpoint");
    zs->add_option("--delta-margin", z_margin, "roots closer than this to the segment count as violations")
        ->capture_default_str();
    zs->add_option("--family", z_family, "kind:n=..,deg=..,count=..,pins=..")->capture_default_str();
    zs->add_option("--graph", z_graph, "graph JSON: report the roots of this instance only")->check(CLI::ExistingFile);
    zs->add_option("--expect", z_expect, "auto, zero-free or not")
        ->check(CLI::IsMember({"auto", "zero-free", "not"}))
        ->capture_default_str();
    zs->add_option("--seed", seed, "seed for the random family")->capture_default_str();
    common(zs);

    // approx
    auto* ap = app.add_subcommand("approx", "truncated Taylor expansion of ln Z");
    SpinFlags a_spin;
    a_spin.add(ap);
    std::string a_graph;
    double a_lambda = 0.0, a_apex = 0.0, a_angle = 90.0;
    int a_terms = 20;
    ap->add_option("--graph", a_graph, "graph JSON with optional pins")->required()->check(CLI::ExistingFile);
    ap->add_option("--lambda", a_lambda, "activity")->required();
    ap->add_option("--terms", a_terms, "number of Taylor terms")->capture_default_str();
    ap->add_option("--sector-apex", a_apex, "expand in the sector variable with this apex (0: plain Taylor)");
    ap->add_option("--sector-angle", a_angle, "sector half angle in degrees")->capture_default_str();
    common(ap);

    // partition
    auto* pa = app.add_subcommand("partition", "exact partition function by enumeration");
    SpinFlags p_spin;
    p_spin.add(pa);
    std::string p_model = "2spin", p_graph;
    double p_lambda = 1.0, p_lambda_im = 0.0, p_mu = 0.0, p_eta = 1.0;
    pa->add_option("--model", p_model, "2spin or setcover")->check(CLI::IsMember({"2spin", "setcover"}))->capture_default_str();
    pa->add_option("--graph", p_graph, "graph JSON (hypergraph JSON for setcover)")->required()->check(CLI::ExistingFile);
    pa->add_option("--lambda", p_lambda, "activity (2spin)")->capture_default_str();
    pa->add_option("--lambda-im", p_lambda_im, "imaginary part of the activity")->capture_default_str();
    pa->add_option("--mu", p_mu, "edge parameter (setcover)")->capture_default_str();
    pa->add_option("--eta", p_eta, "activity (setcover)")->capture_default_str();
    common(pa);

    // region-csv
    auto* rc = app.add_subcommand("region-csv", "boundary of the contraction region and its image");
    SpinFlags r_spin;
    r_spin.add(rc);
    double r_lambda0 = 0.0, r_k = 0.01, r_lambda = 0.0;
    int r_samples = 256;
    rc->add_option("--lambda0", r_lambda0, "activity selecting the region")->required();
    rc->add_option("--k", r_k, "half slope")->capture_default_str();
    rc->add_option("--lambda", r_lambda, "activity for the image (default lambda0)");
    rc->add_option("--samples", r_samples, "points per side")->capture_default_str();
    common(rc);

    std::vector<std::string> argv_store{"zerofree"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Emit emit{out, out_path};
    try {
        if (app.got_subcommand(th)) {
            if (th_model == "setcover") {
                emit.doc(io::to_json(setcover_report(th_spin.delta, th_mu)));
            } else {
                emit.doc(io::to_json(threshold_report(th_spin.params(), th_sign == "pos" ? Sign::positive : Sign::negative)));
            }
            return 0;
        }
        if (app.got_subcommand(cert)) {
            for (size_t i = 0; i < two_spin_subs.size(); ++i) {
                if (!cert->got_subcommand(two_spin_subs[i])) continue;
                const CertOptions o = c_flags.options(jobs);
                const SpinParams p = c_spin.params();
                if (i == 0) return certificate_exit(certify_bounded(p, c_lambda0, o), emit);
                if (i == 1) return certificate_exit(certify_rect(p, c_lambda0, o), emit);
                return certificate_exit(certify_unbounded(p, c_lambda0, o), emit);
            }
            if (cert->got_subcommand(c_sc))
                return certificate_exit(certify_setcover(c_spin.delta, c_mu, c_eta0, c_flags.options(jobs)), emit);
            const Certificate stored = io::certificate_from_json(io::read_json_file(c_in));
            const Certificate fresh = recompute(stored, jobs);
            const bool match = fresh.pass == stored.pass;
            emit.doc(json{{"stored", stored.pass ? "pass" : "fail"},
                          {"recomputed", fresh.pass ? "pass" : "fail"},
                          {"match", match}});
            return match ? 0 : 1;
        }
        if (app.got_subcommand(zs)) {
            const SpinParams p = z_spin.params();
            p.validate();
            if (!z_graph.empty()) {
                json gj = io::read_json_file(z_graph);
                Graph g = io::graph_from_json(gj);
                Pins pins = gj.contains("pins") ? io::pins_from_json(gj["pins"], g.n) : Pins{};
                PartitionPolynomial z = Z_polynomial_2spin(p, g, pins);
                json j = io::to_json(poly_roots(z));
                j["coefficients"] = z.coeffs;
                emit.doc(j);
                return 0;
            }
            FamilySpec fam = parse_family(z_family);
            if (z_family.find("deg=") == std::string::npos) fam.max_degree = p.delta;
            fam.seed = seed;
            std::optional<bool> expect;
            if (z_expect == "zero-free") expect = true;
            if (z_expect == "not") expect = false;
            ScanReport rep = zero_scan(p, fam, z_lambda0, z_margin, expect, jobs);
            json j = io::to_json(rep);
            j["seed"] = seed;
            j["family"] = z_family;
            emit.doc(j);
            return rep.verdict == ScanVerdict::fail ? 1 : 0;
        }
        if (app.got_subcommand(ap)) {
            json gj = io::read_json_file(a_graph);
            Graph g = io::graph_from_json(gj);
            Pins pins = gj.contains("pins") ? io::pins_from_json(gj["pins"], g.n) : Pins{};
            PartitionPolynomial z = Z_polynomial_2spin(a_spin.params(), g, pins);
            const int low = z.low_order_zeros();
            PartitionPolynomial q{std::vector<double>(z.coeffs.begin() + low, z.coeffs.end())};
            TaylorApprox t;
            json j;
            if (a_apex > 0.0) {
                SectorMap map{a_apex, a_angle * 3.14159265358979323846 / 180.0};
                t = barvinok_sector(q, a_lambda, a_terms, map);
                j = io::to_json(t);
                j["method"] = "sector";
            } else {
                t = barvinok_eval(q, a_lambda, a_terms);
                j = io::to_json(t);
                j["method"] = "taylor";
            }
            j["stripped_order"] = low;  // Z = lambda^low * q(lambda)
            emit.doc(j);
            return 0;
        }
        if (app.got_subcommand(pa)) {
            json gj = io::read_json_file(p_graph);
            json j;
            if (p_model == "setcover") {
                Hypergraph h = io::hypergraph_from_json(gj);
                Pins pins = gj.contains("pins") ? io::pins_from_json(gj["pins"], h.n) : Pins{};
                const cplx zv = exact_Z_setcover(h, p_mu, p_eta, pins);
                j["Z"] = {io::number(zv.real()), io::number(zv.imag())};
                j["coefficients"] = Z_polynomial_setcover(h, p_mu, pins).coeffs;
            } else {
                Graph g = io::graph_from_json(gj);
                Pins pins = gj.contains("pins") ? io::pins_from_json(gj["pins"], g.n) : Pins{};
                const SpinParams p = p_spin.params();
                const cplx zv = exact_Z_2spin(p, g, pins, cplx(p_lambda, p_lambda_im));
                j["Z"] = {io::number(zv.real()), io::number(zv.imag())};
                j["coefficients"] = Z_polynomial_2spin(p, g, pins).coeffs;
            }
            emit.doc(j);
            return 0;
        }
        if (app.got_subcommand(rc)) {
            const SpinParams p = r_spin.params();
            CaseTriangle ct = triangle_params_for_case(p, r_lambda0);
            ct.region.k = r_k;
            const double lam = rc->count("--lambda") ? r_lambda : r_lambda0;
            RegionCurves curves = bounded_region_curves(p, lam, ct.region, r_samples);
            std::ostringstream csv;
            csv << std::setprecision(17) << "kind,re,im\n";
            for (auto z : curves.boundary) csv << "U," << z.real() << "," << z.imag() << "\n";
            for (auto z : curves.image) csv << "image," << z.real() << "," << z.imag() << "\n";
            emit.text(csv.str());
            err << "min_slack=" << std::setprecision(6) << curves.min_slack << "\n";
            return curves.min_slack > 0.0 ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace zf::cli
