#include <doctest.h>

#include <cmath>
#include <vector>

#include "gradcontact/displacement.hpp"
#include "gradcontact/oracle.hpp"
#include "gradcontact/solver.hpp"
#include "problems.hpp"

using namespace gradcontact;
using gradcontact::testing::make_jkr;
using gradcontact::testing::make_problem;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// One-sided slope of v_j just outside x = b, at distance h b.
double edge_slope(const ContactSolution<double>& s, int body, double h) {
    const double x1 = s.b * (1 + h), x2 = s.b * (1 + 2 * h);
    return (surface_displacement(s, body, x2) - surface_displacement(s, body, x1)) / (x2 - x1);
}

}  // namespace

TEST_CASE("exterior point classification") {
    CHECK(ExteriorPoint<double>::classify(-2.0).regime == ExteriorRegime::near);
    CHECK(ExteriorPoint<double>::classify(3.0).regime == ExteriorRegime::near);
    CHECK(ExteriorPoint<double>::classify(-3.5).regime == ExteriorRegime::far);
    CHECK_THROWS_AS(ExteriorPoint<double>::classify(0.5), std::domain_error);
    CHECK_THROWS_AS(integral_In(0, -1.0, 0.3, 0.5), std::domain_error);
}

TEST_CASE("I_n is even in t") {
    for (int n : {0, 2, 4, 6})
        for (double t : {1.2, 2.5, 3.0, 7.0})
            CHECK(integral_In(n, t, 0.35, 0.7) == integral_In(n, -t, 0.35, 0.7));
    CHECK_THROWS_AS(integral_In(1, 2.0, 0.35, 0.7), std::invalid_argument);
}

TEST_CASE("I_n is continuous across the regime seam") {
    const double h = 1e-6;
    for (auto [a1, aj] : {std::pair{0.7, 0.35}, std::pair{0.5, 0.5}, std::pair{0.9, 0.1}})
        for (int n : {0, 2, 4, 6}) {
            const double mid = integral_In(n, -3.0, aj, a1);
            // Both closed forms hold on either side of the seam (near form at its working precision).
            Hyp2f1Options wide;
            wide.tolerance = 1e-19;
            for (double t : {-3.0 - h, -3.0, -3.0 + h}) {
                const double zeta = -(t + 1) / 2;
                const double near = double(detail::In_near<long double>(n, zeta, aj, a1, wide));
                const double far = detail::In_far<double>(n, zeta, aj, a1, {});
                CHECK(std::abs(near - far) / std::abs(mid) <= 1e-8);
            }
            // The change across the seam matches the smooth change over 2h on the far side.
            const double jump = integral_In(n, -3.0 + h, aj, a1) - integral_In(n, -3.0 - h, aj, a1);
            const double smooth = integral_In(n, -3.0 - h, aj, a1) - integral_In(n, -3.0 - 3 * h, aj, a1);
            CHECK(std::abs(jump - smooth) / std::abs(mid) <= 1e-8);
        }
}

TEST_CASE("I_n against quadrature of the defining integral") {
    CHECK(rel(integral_In(0, -1.5, 0.5, 0.5), oracle::quad_I(0, -1.5, 0.5, 0.5).value) <= 1e-8);
    for (auto [a1, aj] : {std::pair{0.7, 0.1}, std::pair{0.7, 0.7}, std::pair{0.5, 0.25}, std::pair{0.9, 0.45},
                          std::pair{0.3, 0.3}, std::pair{0.9, 0.1}})
        for (int n : {0, 2, 4, 6})
            for (double t : {-1.2, -2.0, -3.001, -2.999, -5.0, -20.0}) {
                const double q = oracle::quad_I(n, t, aj, a1).value;
                const double v = integral_In(n, t, aj, a1);
                // Far-field values of high index sit near the quadrature's absolute precision.
                CHECK(std::abs(v - q) <= 1e-7 * std::abs(q) + 1e-13);
            }
}

TEST_CASE("displacements meet the gap condition at the contact edge") {
    for (auto [a1, a2] : {std::pair{0.7, 0.3}, std::pair{0.5, 0.5}, std::pair{0.9, 0.1}}) {
        const auto p = make_problem(a1, a2);
        const auto s = solve_contact(p);
        for (double sign : {-1.0, 1.0}) {
            const double x = sign * s.b * (1 + 1e-6);
            const double sum = surface_displacement(s, 1, x) + surface_displacement(s, 2, x);
            CHECK(rel(sum, s.delta - p.profile(s.b)) <= 1e-3);
        }
    }
}

TEST_CASE("two-term equal-exponent form agrees with the general series") {
    for (double a : {0.3, 0.6}) {
        const auto s = solve_contact(make_problem(a, a));
        REQUIRE(s.branch == SolutionBranch::equal_closed_form);
        auto general = s;
        general.branch = SolutionBranch::equal_series;
        for (double t : {-1.05, -1.7, -2.9, -4.0, 2.2, 12.0})
            for (int body : {1, 2})
                CHECK(rel(surface_displacement(s, body, t * s.b), surface_displacement(general, body, t * s.b)) <=
                      1e-8);
    }
}

TEST_CASE("far field decays like |x|^-alpha_j") {
    const auto s = solve_contact(make_problem(0.7, 0.3));
    for (int body : {1, 2}) {
        const double aj = body == 1 ? 0.7 : 0.3;
        const double x1 = -50 * s.b, x2 = -500 * s.b;
        const double slope = std::log(surface_displacement(s, body, x2) / surface_displacement(s, body, x1)) /
                             std::log(x2 / x1);
        CHECK(std::abs(slope + aj) <= 0.05);
        CHECK(surface_displacement(s, body, x2) > 0);
        CHECK(surface_displacement(s, body, x2) < surface_displacement(s, body, x1));
    }
}

TEST_CASE("displacement grows without bound as the exponent shrinks") {
    double prev = 0;
    for (double a : {0.1, 0.05, 0.01}) {
        const auto s = solve_contact(make_problem(a, a));
        const double v = surface_displacement(s, 1, -3.0);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev > 20);
}

TEST_CASE("edge slope is bounded for Hertz and diverges for JKR") {
    const auto hertz = solve_contact(make_problem(0.7, 0.35));
    const auto jkr = solve_contact(make_jkr(0.7, 0.35, 1.0));
    for (int body : {1, 2}) {
        // Hertz: the slope settles with shrinking increments.
        std::vector<double> sh;
        for (double h : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) sh.push_back(edge_slope(hertz, body, h));
        for (std::size_t k = 2; k < sh.size(); ++k) CHECK(std::abs(sh[k] - sh[k - 1]) < std::abs(sh[k - 1] - sh[k - 2]));
        CHECK(std::abs(sh.back()) < 3);
        // JKR: the slope magnitude keeps growing.
        std::vector<double> sj;
        for (double h : {1e-2, 1e-4, 1e-6}) sj.push_back(std::abs(edge_slope(jkr, body, h)));
        CHECK(sj[1] > 5 * sj[0]);
        CHECK(sj[2] > 5 * sj[1]);
    }
}

TEST_CASE("Chebyshev quadrature of v converges to the series") {
    const auto s = solve_contact(make_problem(0.7, 0.3));
    const double x = -2 * s.b;
    for (int body : {1, 2}) {
        const double exact = surface_displacement(s, body, x);
        std::vector<double> err;
        for (int order : {50, 100, 200, 400})
            err.push_back(std::abs(displacement_gauss_check(s, body, x, order) - exact) / std::abs(exact));
        for (std::size_t k = 1; k < err.size(); ++k) CHECK(err[k] < err[k - 1]);
        CHECK(err.back() <= 1e-4);
    }
    CHECK_THROWS_AS(displacement_gauss_check(s, 1, 0.5 * s.b, 100), std::domain_error);
}
