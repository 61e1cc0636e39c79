#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "zerofree/errors.hpp"
#include "zerofree/regions.hpp"

using namespace zf;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("regions") {
    TEST_CASE("triangle membership") {
        TriangleRegion t{0.0, -1.0, 0.1, std::nullopt};
        CHECK(contains(t, cplx(-0.5, 0.04)));
        CHECK_FALSE(contains(t, cplx(-0.5, 0.06)));
        CHECK_FALSE(contains(t, cplx(0.1, 0.0)));
        CHECK_FALSE(contains(t, cplx(-1.1, 0.0)));
        t.trim = std::make_pair(-1.0, -0.2);
        CHECK_FALSE(contains(t, cplx(-0.1, 0.0)));
        for (const auto& bp : triangle_boundary(t, 64).points) CHECK(std::abs(slack(t, bp.z)) < 1e-12);
    }

    TEST_CASE("rect, cone and spiral membership") {
        RectRegion r{0.5, -1.0, 0.2};
        CHECK(contains(r, cplx(0.0, 0.19)));
        CHECK_FALSE(contains(r, cplx(0.0, 0.21)));
        for (const auto& bp : rect_boundary(r, 16).points) CHECK(std::abs(slack(r, bp.z)) < 1e-12);
        ConeRegion c{0.5};
        CHECK(contains(c, cplx(-2.0, 0.9)));
        CHECK_FALSE(contains(c, cplx(-2.0, 1.1)));
        CHECK_FALSE(contains(c, cplx(0.1, 0.0)));
        // Closure under addition.
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            cplx a(-3.0 * u(rng), 0.0), b(-3.0 * u(rng), 0.0);
            a.imag(c.k * a.real() * (2.0 * u(rng) - 1.0));
            b.imag(c.k * b.real() * (2.0 * u(rng) - 1.0));
            CHECK(slack(c, a + b) >= -1e-12);
        }
        SpiralRegion s{0.5};
        CHECK(contains(s, cplx(0.0, 0.0)));
        CHECK(contains(s, cplx(0.9, 0.0)));
        CHECK_FALSE(contains(s, cplx(1.1, 0.0)));
        // Closure under multiplication.
        for (int i = 0; i < 1000; ++i) {
            const double ta = (2.0 * u(rng) - 1.0) * kPi, tb = (2.0 * u(rng) - 1.0) * kPi;
            const cplx a = std::polar(std::exp(-std::abs(ta) / s.k) * u(rng), ta);
            const cplx b = std::polar(std::exp(-std::abs(tb) / s.k) * u(rng), tb);
            const double arg = ta + tb;  // unwrapped argument of the product
            CHECK(std::abs(a * b) <= std::exp(-std::abs(arg) / s.k) + 1e-12);
        }
    }

    TEST_CASE("figure corners") {
        CaseTriangle a = triangle_params_for_case(SpinParams{3.0, 0.8, 11}, 41.0);
        CHECK(a.region.x0 == doctest::Approx(0.0));
        CHECK(a.region.x1 == doctest::Approx(-std::log(3.0)));
        CaseTriangle b = triangle_params_for_case(SpinParams{3.0, 1.5, 6}, 1.5);
        CHECK(b.region.x0 == doctest::Approx(std::log(1.5)));
        CHECK(b.region.x1 == doctest::Approx(-std::log(3.0)));
        CaseTriangle c = triangle_params_for_case(SpinParams{1.2, 0.5, 16}, 12.5);
        CHECK(c.region.x1 == doctest::Approx(std::log(0.5)));
        REQUIRE(c.region.trim);
        CHECK(c.region.re_hi() == doctest::Approx(-std::log(1.2)));
    }

    TEST_CASE("spiral boundary maps against complex arithmetic") {
        std::mt19937_64 rng(12);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 5000; ++i) {
            const double mu = -1.0 + 3.0 * u(rng);
            const double k = 0.02 + 0.8 * setcover_k_limit(mu) * u(rng);
            const double th = 1e-3 + (kPi - 2e-3) * u(rng);
            const cplx uu = std::exp(cplx(-th / k, th));
            const cplx q = uu / (1.0 - uu);
            CHECK(r_k1(k, th) == doctest::Approx(std::log(std::abs(q))).epsilon(1e-10));
            CHECK(h_k1(k, th) == doctest::Approx(th - std::arg(1.0 - uu)).epsilon(1e-10));
            const cplx m = 1.0 + mu * uu;
            CHECK(r_k2(mu, k, th) == doctest::Approx(std::log(std::abs(m))).epsilon(1e-9).scale(1.0));
            CHECK(h_k2(mu, k, th) == doctest::Approx(std::arg(m)).scale(1.0));
            CHECK(h_k1(k, th) >= th);
        }
    }

    TEST_CASE("p_k is continuous at the knee and inverts r_k1") {
        for (double k : {0.05, 0.2, 0.5, 1.0}) {
            const double knee = -(kPi / k + std::log1p(std::exp(-kPi / k)));
            CHECK(p_k(k, knee - 1e-9) == doctest::Approx(kPi));
            CHECK(p_k(k, knee + 1e-9) == doctest::Approx(kPi).epsilon(1e-6));
            for (double th : {0.01, 0.3, 1.0, 2.0, 3.0}) {
                CHECK(r_k1_inv(k, r_k1(k, th)) == doctest::Approx(th).epsilon(1e-9));
                CHECK(p_k(k, r_k1(k, th)) == doctest::Approx(h_k1(k, th)).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("theta0 root and mu = -1 bound") {
        for (double mu : {-1.0, -0.5, 0.5, 1.0}) {
            const double k = 0.5 * setcover_k_limit(mu);
            const double th = theta0(mu, k);
            CHECK(th > kPi / 2);
            CHECK(th < kPi);
            CHECK(std::abs(k * std::sin(th) + std::cos(th) + mu * std::exp(-th / k)) < 1e-12);
        }
        for (double k : {0.1, 0.3, 0.6})
            for (double th = 1e-4; th < kPi; th += 1e-3) CHECK(std::abs(h_k2(-1.0, k, th)) < std::atan(k));
        CHECK_THROWS_AS(theta0(0.0, 0.1), Error);
    }
}
