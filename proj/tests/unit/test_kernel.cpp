#include <doctest.h>

#include <cmath>

#include "gradcontact/kernel.hpp"
#include "gradcontact/oracle.hpp"

using namespace gradcontact;

namespace {
// Reference values from 30-digit mpmath evaluation of the defining formulas.
constexpr double kH0_half = 2.39628046947118441487984493382;   // h_0(0.5)
constexpr double kH2_half = 0.0998450195612993506199935338883;  // h_2(0.5)
constexpr double kDelta0_half = 1.8540746773013719184338503472;  // Delta_0(0.5)
}  // namespace

TEST_CASE("beta_n closed values") {
    const double pi = pi_v<double>;
    CHECK(beta_n(0.3, 0) == doctest::Approx(pi / std::cos(pi * 0.15)).epsilon(1e-15));
    CHECK(beta_n(0.5, 0) == doctest::Approx(4.442882938158366).epsilon(1e-14));
    CHECK(beta_n(0.5, 2) == doctest::Approx(beta_n(0.5, 0) * 0.375).epsilon(1e-14));
    CHECK(beta_n(0.5, 2) == doctest::Approx(1.666081101809387).epsilon(1e-13));
}

TEST_CASE("h_n against high-precision and quadrature values") {
    CHECK(h_n(1.0 - 1e-12, 0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(h_n(0.5, 0) == doctest::Approx(kH0_half).epsilon(1e-14));
    CHECK(h_n(0.5, 2) == doctest::Approx(kH2_half).epsilon(1e-13));
    CHECK(oracle::quad_h(0.5, 0, 0).value == doctest::Approx(kH0_half).epsilon(1e-12));
    CHECK(oracle::quad_h(0.5, 2, 2).value == doctest::Approx(kH2_half).epsilon(1e-12));
}

TEST_CASE("Gegenbauer orthogonality under the weight") {
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m <= 8; ++m)
            if (m != n) CHECK(std::abs(oracle::quad_h(0.4, n, m).value) <= 1e-11);
}

TEST_CASE("delta_k values, sign and affine growth") {
    CHECK(delta_k(0.5, 0) == doctest::Approx(kDelta0_half).epsilon(1e-14));
    const double a2 = 0.37;
    const double slope = std::tgamma(a2 / 2) * std::tgamma((1 - a2) / 2) / std::sqrt(pi_v<double>);
    for (int k = 0; k < 40; ++k) {
        CHECK(delta_k(a2, k) > 0);
        CHECK(delta_k(a2, k + 1) - delta_k(a2, k) == doctest::Approx(slope).epsilon(1e-12));
    }
}

TEST_CASE("H coefficients vanish below the diagonal and on odd gaps") {
    const ExponentPair<double> pair(0.7, 0.3);
    for (int m = 0; m <= 10; ++m)
        for (int k = 0; k < m; ++k) CHECK(H_coeff(m, k, pair) == 0.0);
    for (int m = 0; m <= 10; ++m)
        for (int l = 0; l <= 5; ++l) CHECK(H_coeff(m, m + 1 + 2 * l, pair) == 0.0);
    // The quadrature agrees that these projections vanish.
    for (int m = 2; m <= 8; m += 2)
        for (int k = 0; k < m; ++k) CHECK(std::abs(oracle::quad_H(m, k, 0.7, 0.3).value) <= 1e-11);
}

TEST_CASE("H coefficients agree with quadrature for n, k <= 12") {
    for (auto [a1, a2] : {std::pair{0.5, 0.3}, std::pair{0.7, 0.3}, std::pair{0.9, 0.1}, std::pair{0.3, 0.1}}) {
        const ExponentPair<double> pair(a1, a2);
        for (int n = 0; n <= 12; ++n)
            for (int k = n; k <= 12; k += 2) {
                const double q = oracle::quad_H(n, k, a1, a2).value;
                const double h = H_coeff(n, k, pair);
                CHECK(std::abs(h - q) <= 1e-9 * std::max(std::abs(q), 1e-3));
            }
    }
    CHECK(H_coeff(0, 0, ExponentPair<double>(0.5, 0.3)) == doctest::Approx(kH0_half).epsilon(1e-10));
}

TEST_CASE("L table: symmetry, odd-gap zeros and quadrature agreement") {
    const ExponentPair<double> pair(0.7, 0.3);
    const auto tab = build_tables(pair, 8);
    CHECK_FALSE(tab.equal_branch);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(tab.L(i, j) == tab.L(j, i));
    // Odd gaps are never stored in the even-index tables; the odd-index
    // series itself starts from a vanishing H, so its value is zero.
    for (int n = 0; n <= 6; ++n) CHECK(H_coeff(n, n + 1, pair) == 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double q = oracle::quad_L(2 * i, 2 * j, 0.7, 0.3).value;
            CHECK(std::abs(tab.L(i, j) - q) <= 1e-8 * std::abs(q));
        }
}

TEST_CASE("equal exponents give a diagonal L and identity R") {
    const ExponentPair<double> pair(0.45, 0.45);
    const auto tab = build_tables(pair, 10);
    CHECK(tab.equal_branch);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            CHECK(std::abs(tab.R(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
            if (i != j) CHECK(tab.L(i, j) == 0.0);
        }
    for (int i = 0; i < 10; ++i) {
        const double hd = H_diagonal_equal(2 * i, 0.45);
        CHECK(tab.L(i, i) == doctest::Approx(hd * hd * delta_k(0.45, 2 * i)).epsilon(1e-14));
    }
}

TEST_CASE("R approaches the identity as the exponent gap closes") {
    const double a1 = 0.6;
    std::vector<double> worst;
    for (int j = 2; j <= 6; ++j) {
        const auto tab = build_tables(ExponentPair<double>(a1, a1 - std::pow(10.0, -j)), 4);
        double off = 0, diag = 0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                if (r != c) off = std::max(off, std::abs(tab.R(r, c)));
                else diag = std::max(diag, std::abs(tab.R(r, c) - 1));
            }
        worst.push_back(off);
        CHECK(diag < 0.1);
    }
    for (std::size_t k = 1; k < worst.size(); ++k) CHECK(worst[k] < worst[k - 1]);
    CHECK(worst.back() < 1e-4);
}

TEST_CASE("L-series terms decay with the predicted power") {
    for (auto [a1, a2] : {std::pair{0.7, 0.3}, std::pair{0.9, 0.1}, std::pair{0.5, 0.45}}) {
        const ExponentPair<double> pair(a1, a2);
        LSeriesTerms<double> terms(0, 2, pair);
        std::vector<double> v;
        for (int l = 0; l <= 200; ++l) {
            v.push_back(terms.value());
            terms.advance();
        }
        const double slope = std::log(std::abs(v[200] / v[20])) / std::log(200.0 / 20.0);
        CHECK(std::abs(slope - (2 * (a2 - a1) - 3)) < 0.2);
    }
}

TEST_CASE("L entries are stable under the tail tolerance") {
    const ExponentPair<double> pair(0.3, 0.1);
    KernelOptions loose;
    loose.tail_tol = 1e-10;
    const auto a = build_tables(pair, 4);
    const auto b = build_tables(pair, 4, loose);
    CHECK((a.L - b.L).cwiseAbs().maxCoeff() <= 1e-8 * a.L.cwiseAbs().maxCoeff());
    CHECK(a.max_terms_used <= KernelOptions{}.term_cap);
}

TEST_CASE("H closed form is finite on a dense exponent grid") {
    for (double a1 = 0.05; a1 < 1.0; a1 += 0.05)
        for (double a2 = 0.025; a2 < a1; a2 += 0.05) {
            const ExponentPair<double> pair(a1, a2);
            for (int n = 0; n <= 8; n += 2)
                for (int k = n; k <= 30; k += 2) CHECK(std::isfinite(H_coeff(n, k, pair)));
        }
}

TEST_CASE("exponent pair validation") {
    CHECK_THROWS_AS(ExponentPair<double>(0.3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ExponentPair<double>(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_tables(ExponentPair<double>(0.5, 0.3), 0), std::invalid_argument);
}
