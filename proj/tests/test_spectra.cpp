#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "zerofree/errors.hpp"
#include "zerofree/spectra.hpp"

using namespace zf;

namespace {

// Coefficients of c * prod (x - r_i).
std::vector<cplx> from_roots(const std::vector<cplx>& roots, cplx lead) {
    std::vector<cplx> c{lead};
    for (auto r : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    return c;
}

}  // namespace

TEST_SUITE("spectra") {
    TEST_CASE("roots of small polynomials") {
        RootSet r = poly_roots(PartitionPolynomial{{2.0, 2.0, 0.5}});
        REQUIRE(r.roots.size() == 2);
        for (auto z : r.roots) CHECK(std::abs(z + 2.0) < 1e-6);
        RootSet lin = poly_roots(PartitionPolynomial{{1.0, 3.0}});
        REQUIRE(lin.roots.size() == 1);
        CHECK(std::abs(lin.roots[0] + 1.0 / 3.0) < 1e-14);
        RootSet z2 = poly_roots(PartitionPolynomial{{0.0, 0.0, 1.0, 1.0}});
        REQUIRE(z2.roots.size() == 3);
        CHECK(std::count(z2.roots.begin(), z2.roots.end(), cplx(0.0)) == 2);
    }

    TEST_CASE("roots reproduce the coefficients") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int t = 0; t < 200; ++t) {
            const int deg = 1 + static_cast<int>(rng() % 24);
            std::vector<double> c(deg + 1);
            for (auto& x : c) x = u(rng);
            c.back() = 1.0 + std::abs(c.back());
            RootSet r = poly_roots(PartitionPolynomial{c});
            REQUIRE(static_cast<int>(r.roots.size()) == deg);
            CHECK(r.residual_max < 1e-8);
            auto back = from_roots(r.roots, c.back());
            double scale = 0.0;
            for (auto x : c) scale = std::max(scale, std::abs(x));
            for (int i = 0; i <= deg; ++i) CHECK(std::abs(back[i] - c[i]) < 1e-7 * scale * (deg + 1));
        }
    }

    TEST_CASE("log Taylor coefficients") {
        auto a = log_taylor(PartitionPolynomial{{1.0, 3.0}}, 4);
        CHECK(std::abs(a[0] - 3.0) < 1e-14);
        CHECK(std::abs(a[1] + 4.5) < 1e-14);
        CHECK(std::abs(a[2] - 9.0) < 1e-13);
        CHECK(std::abs(a[3] + 81.0 / 4.0) < 1e-12);
        auto b = log_taylor(PartitionPolynomial{{1.0, 2.0, 1.0}}, 3);
        CHECK(std::abs(b[0] - 2.0) < 1e-14);
        CHECK(std::abs(b[1] + 1.0) < 1e-14);
        CHECK(std::abs(b[2] - 2.0 / 3.0) < 1e-14);
        CHECK_THROWS_AS(log_taylor(PartitionPolynomial{{0.0, 1.0}}, 3), Error);
    }

    TEST_CASE("exp of the log series returns the coefficients") {
        std::vector<double> c{2.0, 1.0, -0.5, 0.25, 3.0};
        const int m = 4;
        auto L = log_taylor(PartitionPolynomial{c}, m);
        // exp via g' = f' g
        std::vector<cplx> g(m + 1, 0.0);
        g[0] = 1.0;
        for (int k = 1; k <= m; ++k) {
            for (int j = 1; j <= k; ++j) g[k] += static_cast<double>(j) * L[j - 1] * g[k - j];
            g[k] /= static_cast<double>(k);
        }
        for (int k = 0; k <= m; ++k) CHECK(std::abs(c[0] * g[k] - c[k]) < 1e-12);
    }

    TEST_CASE("Taylor evaluation") {
        PartitionPolynomial z{{1.0, 3.0}};
        CHECK(barvinok_eval(z, 0.0, 10).relative_error == 0.0);
        double prev = 1.0;
        for (int m = 2; m <= 30; m += 4) {
            const double e = barvinok_eval(z, 0.1, m).relative_error;
            CHECK(e < prev);
            prev = e;
        }
        CHECK(barvinok_eval(PartitionPolynomial{{1.0, 1.0, 0.25}}, 0.9, 30).relative_error < 1e-6);
    }

    TEST_CASE("sector map") {
        SectorMap map{4.0 / 27.0, 115.0 * 3.14159265358979323846 / 180.0};
        for (cplx l : {cplx(0.5, 0.0), cplx(3.15, 0.0), cplx(1.0, 2.0)}) {
            const cplx z = map.to_disk(l);
            CHECK(std::abs(z) < 1.0);
            CHECK(std::abs(map.from_disk(z) - l) < 1e-12 * std::max(1.0, std::abs(l)));
        }
        auto s = map.series(30);
        const cplx z(0.1, 0.05);
        cplx sum = 0.0, pw = 1.0;
        for (auto c : s) {
            sum += c * pw;
            pw *= z;
        }
        CHECK(std::abs(sum - map.from_disk(z)) < 1e-12);
        PartitionPolynomial hc{{1.0, 3.0}};
        CHECK(barvinok_sector(hc, 0.0, 10, map).relative_error < 1e-15);
        auto errs = barvinok_sector_errors(hc, 3.15, 40, map);
        CHECK(errs.back() < errs.front());
        CHECK(geometric_rate(errs, 10, 40) < 0.98);
    }

    TEST_CASE("family instances respect the degree bound and are reproducible") {
        FamilySpec f = parse_family("random:n=10,deg=3,count=50");
        CHECK(f.kind == "random");
        CHECK(f.n_max == 10);
        CHECK(f.max_degree == 3);
        CHECK(f.count == 50);
        SpinParams hc{1.0, 0.0, 3};
        for (int i = 0; i < 50; ++i) {
            Instance a = family_instance(hc, f, i), b = family_instance(hc, f, i);
            CHECK(a.graph.edges == b.graph.edges);
            CHECK(a.pins == b.pins);
            CHECK(a.graph.n <= 10);
            CHECK(a.graph.max_degree() <= 3);
            CHECK(is_feasible_2spin(hc, a.graph, a.pins));
        }
        CHECK_THROWS_AS(parse_family("random:bogus=1"), Error);
    }

    TEST_CASE("zero scans") {
        SpinParams hc{1.0, 0.0, 3};
        FamilySpec f = parse_family("mixed:n=10,deg=3,count=60");
        ScanReport ok = zero_scan(hc, f, 3.0, 1e-3);
        CHECK(ok.verdict == ScanVerdict::pass);
        CHECK(ok.samples == 60);
        // Shearer: paths and stars of degree 3 have roots on the negative axis near -0.15.
        ScanReport bad = zero_scan(hc, f, -0.5, 1e-3, false);
        CHECK(bad.verdict == ScanVerdict::fail);
        CHECK(bad.violations > 0);
        CHECK(distance_to_segment(cplx(-1.0, 1.0), 2.0) == doctest::Approx(std::sqrt(2.0)));
        CHECK(distance_to_segment(cplx(1.0, 1.0), 2.0) == doctest::Approx(1.0));
        CHECK(distance_to_segment(cplx(-1.0, 0.0), -2.0) == doctest::Approx(0.0));
    }
}
