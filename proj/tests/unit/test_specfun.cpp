#include <doctest.h>

#include <cmath>
#include <tuple>

#include "gradcontact/specfun.hpp"

using namespace gradcontact;

TEST_CASE("pochhammer small cases") {
    CHECK(pochhammer(0.7, 0) == 1.0);
    CHECK(pochhammer(2.0, 3) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(pochhammer(0.5, 2) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("pochhammer splits over consecutive ranges") {
    for (double a : {-2.5, -0.3, 0.25, 0.7, 3.0})
        for (int m = 0; m <= 6; ++m)
            for (int n = 0; n <= 6; ++n)
                CHECK(pochhammer(a, m + n) ==
                      doctest::Approx(pochhammer(a, m) * pochhammer(a + m, n)).epsilon(1e-13));
}

TEST_CASE("pochhammer ratio stays finite for large counts") {
    // (a)_n / (b)_n = Gamma(a+n) Gamma(b) / (Gamma(a) Gamma(b+n))
    const double r = pochhammer_ratio(0.35, 1.0, 400);
    const double ref = std::exp(std::lgamma(400.35) - std::lgamma(0.35) - std::lgamma(401.0));
    CHECK(r == doctest::Approx(ref).epsilon(1e-11));
}

TEST_CASE("gegenbauer small cases") {
    CHECK(gegenbauer(0, 0.3, 0.77) == 1.0);
    CHECK(gegenbauer(1, 0.25, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(gegenbauer(2, 0.25, 1.0) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(gegenbauer_at_one(2, 0.25) == doctest::Approx(0.375).epsilon(1e-15));
}

TEST_CASE("gegenbauer satisfies the three-term recurrence") {
    for (double lambda : {0.05, 0.25, 0.45})
        for (double t : {-0.95, -0.3, 0.0, 0.6, 0.99}) {
            const auto C = gegenbauer_sequence(64, lambda, t);
            for (int n = 2; n <= 64; ++n) {
                const double lhs = n * C[n];
                const double rhs = 2 * (n + lambda - 1) * t * C[n - 1] - (n + 2 * lambda - 2) * C[n - 2];
                const double scale = std::abs(n * C[n]) + std::abs(2 * (n + lambda - 1) * t * C[n - 1]) + 1e-300;
                CHECK(std::abs(lhs - rhs) <= 1e-13 * scale);
            }
        }
}

TEST_CASE("gegenbauer parity") {
    for (int n = 0; n <= 30; ++n)
        for (double t : {0.1, 0.5, 0.93}) {
            const double plus = gegenbauer(n, 0.35, t);
            const double minus = gegenbauer(n, 0.35, -t);
            const double sign = n % 2 == 0 ? 1.0 : -1.0;
            CHECK(std::abs(minus - sign * plus) <= 1e-13 * std::max(1.0, std::abs(plus)));
        }
}

TEST_CASE("gegenbauer sequence agrees with single evaluation and the value at one") {
    const auto C = gegenbauer_sequence(20, 0.15, 1.0);
    for (int n = 0; n <= 20; ++n) {
        CHECK(C[n] == doctest::Approx(gegenbauer(n, 0.15, 1.0)).epsilon(1e-14));
        CHECK(C[n] == doctest::Approx(gegenbauer_at_one(n, 0.15)).epsilon(1e-12));
    }
}

TEST_CASE("gauss_2f1 elementary identities") {
    CHECK(gauss_2f1(0.3, 1.7, 2.2, 0.0) == 1.0);
    CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
    CHECK(gauss_2f1(-2.0, 1.0, 1.0, 0.3) == doctest::Approx(0.49).epsilon(1e-15));
    // F(1,1;2;z) = -ln(1-z)/z on the transformed branch too.
    for (double z : {-0.6, -0.9, -3.0, -20.0})
        CHECK(gauss_2f1(1.0, 1.0, 2.0, z) == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-13));
    // Terminating series for any real argument: F(-n, b; b; z) = (1 - z)^n.
    CHECK(gauss_2f1(-3.0, 0.4, 0.4, -5.0) == doctest::Approx(216.0).epsilon(1e-14));
}

TEST_CASE("gauss_2f1 Gauss summation at z = 1") {
    const double a = 0.2, b = 0.3, c = 1.4;
    const double ref = std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
    CHECK(gauss_2f1(a, b, c, 1.0) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("gauss_2f1 transformed and direct summation agree") {
    Hyp2f1Options direct;
    direct.allow_transform = false;
    direct.max_terms = 10000;
    for (double z : {-0.55, -0.7, -0.85})
        for (auto [a, b, c] : {std::tuple{0.35, 1.2, 1.65}, std::tuple{-0.4, 2.5, 1.1}, std::tuple{0.7, 0.15, 2.3}}) {
            const double t = gauss_2f1(a, b, c, z);
            const double d = gauss_2f1(a, b, c, z, direct);
            CHECK(std::abs(t - d) <= 1e-10 * std::abs(d));
        }
}

TEST_CASE("gauss_2f1 rejects poles and divergent arguments") {
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, -2.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.5, 1.2), std::domain_error);
}

TEST_CASE("gamma_ratio handles large and negative arguments") {
    CHECK(gamma_ratio(170.5, 171.0) == doctest::Approx(std::exp(std::lgamma(170.5) - std::lgamma(171.0))).epsilon(1e-12));
    CHECK(gamma_ratio(-0.5, 1.0) == doctest::Approx(-2 * std::sqrt(pi_v<double>)).epsilon(1e-14));
}
