#include <doctest.h>

#include <cmath>
#include <vector>

#include "gradcontact/jkr.hpp"
#include "gradcontact/oracle.hpp"
#include "gradcontact/solver.hpp"
#include "problems.hpp"

using namespace gradcontact;
using gradcontact::testing::make_jkr;
using gradcontact::testing::make_problem;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double quad_energy_of(const ContactProblem<double>& p, const SpectralCoeffs<double>& c, double delta) {
    const auto comb = c.combined(delta);
    const auto series = [&](double t) { return even_series(comb, c.alpha1 / 2, t); };
    return oracle::quad_energy(series, c.alpha1, c.b, delta, p.profile);
}

}  // namespace

TEST_CASE("equal-exponent strain energy against quadrature") {
    for (double a : {0.2, 0.5, 0.8}) {
        const auto p = make_jkr(a, a, 1.0);
        for (double b : {0.8, 1.3, 2.0}) {
            const auto c = equal_coeffs(p, b, 4);
            const double U = strain_energy_equal(p, b).U_e;
            CHECK(rel(U, quad_energy_of(p, c, equal_delta(p, b))) <= 1e-8);
        }
    }
}

TEST_CASE("equal-exponent energy derivative against central differences") {
    for (double a : {0.2, 0.5, 0.8}) {
        const auto p = make_jkr(a, a, 1.0);
        for (double b : {0.8, 1.3, 2.0}) {
            const double h = 1e-6 * b;
            const double fd = (strain_energy_equal(p, b + h).U_e - strain_energy_equal(p, b - h).U_e) / (2 * h);
            CHECK(rel(strain_energy_equal(p, b).dU_db, fd) <= 1e-6);
        }
    }
}

TEST_CASE("zero adhesion recovers the Hertz solution") {
    for (double a : {0.3, 0.5, 0.9}) {
        const auto hertz = solve_contact(make_problem(a, a));
        const auto jkr = solve_contact(make_jkr(a, a, 0.0));
        CHECK(jkr.branch == SolutionBranch::jkr_equal_closed_form);
        CHECK(rel(jkr.b, hertz.b) <= 1e-10);
        CHECK(rel(jkr.delta, hertz.delta) <= 1e-9);
        CHECK(rel(jkr.pressure(0.0), hertz.pressure(0.0)) <= 1e-9);
        CHECK_FALSE(jkr.b_star.has_value());
    }
}

TEST_CASE("stationarity reduces to the quartic as alpha -> 0") {
    const double a = 1e-5;
    const auto p = make_jkr(a, a, 0.7);
    const double th_iso = 2 * isotropic_theta(1.0, 0.3);
    // Both sides share the factor b^{alpha+1}; compare the residuals relative to their scale.
    for (double b : {0.5, 0.8, 1.0, 1.5, 2.5}) {
        const double r = jkr_equal_residual(p, b) / std::pow(b, a + 1) * b;
        const double q = jkr_quartic_residual(th_iso, 1.0, 1.0, 0.7, b);
        const double scale = std::abs(q) + 2 * 0.7 * b + th_iso / 2;
        CHECK(std::abs(r - q) / scale <= 1e-4);
    }
}

TEST_CASE("stationarity reduces to the Gibson cubic as alpha -> 1") {
    const double a = 1 - 1e-6;
    auto p = make_problem(a, a, {1, 0}, 0.5);
    p.model = ContactModel::jkr;
    p.gamma_s = 0.4;
    const double s = 2.0;  // 1/e1 + 1/e2
    for (double b : {0.5, 0.8, 1.0, 1.5, 2.5}) {
        // Multiplying by s b^{1 - alpha} turns the expanded residual into the cubic in b^2.
        const double r = jkr_equal_residual(p, b) * s * std::pow(b, 1 - a);
        const double g = jkr_gibson_residual(1.0, 1.0, 1.0, 1.0, 0.4, b);
        const double scale = std::abs(g) + 2 * 0.4 * s * b * b + 3 * s * s / 8;
        CHECK(std::abs(r - g) / scale <= 1e-4);
    }
}

TEST_CASE("half-length grows with the work of adhesion") {
    double prev = 0;
    for (double g : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const double b = solve_contact(make_jkr(0.5, 0.5, g)).b;
        CHECK(b > prev);
        prev = b;
    }
    prev = 0;
    for (double g : {0.0, 0.5, 1.0, 2.0}) {
        const double b = solve_contact(make_jkr(0.7, 0.35, g)).b;
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("spectral energy matches the equal-exponent formula and quadrature") {
    const auto p = make_jkr(0.45, 0.45, 1.0);
    const auto tab = build_tables(p.exponents(), 12);
    for (double b : {1.0, 1.6}) {
        const double spec = strain_energy_at(p, tab, b);
        CHECK(rel(spec, strain_energy_equal(p, b).U_e) <= 1e-9);
    }
    for (auto [a1, a2] : {std::pair{0.5, 0.25}, std::pair{0.9, 0.5}}) {
        const auto q = make_jkr(a1, a2, 1.0);
        const auto t = build_tables(q.exponents(), 16);
        for (double b : {1.4, 2.1}) {
            const auto c = solve_system(q, t, b);
            const double delta = rigid_displacement(c, q.load);
            CHECK(rel(strain_energy_value(q, c, delta), quad_energy_of(q, c, delta)) <= 1e-7);
        }
    }
}

TEST_CASE("quartic profile energy uses the full series and matches quadrature") {
    auto q = make_jkr(0.7, 0.3, 1.0);
    q.profile = {0.5, 0.3};
    const auto t = build_tables(q.exponents(), 16);
    for (double b : {0.9, 1.5}) {
        const auto c = solve_system(q, t, b);
        const double delta = rigid_displacement(c, q.load);
        CHECK(rel(strain_energy_value(q, c, delta), quad_energy_of(q, c, delta)) <= 1e-7);
    }
}

TEST_CASE("finite-difference step sensitivity at the reference point") {
    const auto p = make_jkr(0.5, 0.25, 1.0);
    const auto tab = build_tables(p.exponents(), p.controls.N);
    const auto bs = epsilon_sensitivity(p, tab, {1e-3, 1e-4, 1e-5});
    REQUIRE(bs.size() == 3);
    CHECK(std::abs(bs[0] - 1.97621) <= 5e-4);
    CHECK(std::abs(bs[1] - 1.97666) <= 5e-4);
    CHECK(std::abs(bs[2] - 1.97670) <= 5e-4);
    CHECK(bs[0] < bs[1]);
    CHECK(bs[1] < bs[2]);
}

TEST_CASE("weak adhesion approaches the Hertz half-length monotonically") {
    const auto hp = make_problem(0.7, 0.35);
    const auto tab = build_tables(hp.exponents(), hp.controls.N);
    const double bh = solve_hertz(hp, tab).b;
    auto p = make_jkr(0.7, 0.35, 0.0);
    p.controls.fd_epsilon = 1e-6;
    std::vector<double> gap;
    for (double g : {1e-1, 1e-2, 1e-3}) {
        p.gamma_s = g;
        gap.push_back(std::abs(solve_jkr_general(p, tab).b - bh));
    }
    CHECK(gap[1] < gap[0]);
    CHECK(gap[2] < gap[1]);
    CHECK(gap[2] < 1e-3 * bh);
}

TEST_CASE("endpoint behavior turns tensile with adhesion") {
    const auto base = make_jkr(0.9, 0.5, 0.0);
    const auto tab = build_tables(base.exponents(), base.controls.N);
    double prev_series = -1;
    for (double g : {0.0, 1.0, 5.0}) {
        auto p = base;
        p.gamma_s = g;
        const auto s = solve_jkr_general(p, tab);
        const double endpoint = endpoint_series(s.coeffs, s.delta);
        const double mag = std::abs(s.coeffs.combined(s.delta)(0));
        if (g == 0.0) {
            CHECK(std::abs(endpoint) <= 1e-3 * mag);
            CHECK_FALSE(s.b_star.has_value());
        } else {
            CHECK(endpoint < 0);
            CHECK(s.pressure(s.b) == -std::numeric_limits<double>::infinity());
            CHECK(s.pressure(0.999999 * s.b) < s.pressure(0.999 * s.b));
            CHECK(endpoint < prev_series);
        }
        prev_series = endpoint;
    }
}

TEST_CASE("the solved half-length minimizes the total energy") {
    for (auto [a1, a2] : {std::pair{0.5, 0.25}, std::pair{0.9, 0.5}}) {
        const auto p = make_jkr(a1, a2, 1.0);
        const auto tab = build_tables(p.exponents(), p.controls.N);
        const auto s = solve_jkr_general(p, tab);
        const auto Ut = [&](double b) { return strain_energy_at(p, tab, b) - 2 * p.gamma_s * b; };
        const double h = 1e-3 * s.b;
        CHECK(Ut(s.b + h) >= Ut(s.b));
        CHECK(Ut(s.b - h) >= Ut(s.b));
    }
    const auto q = make_jkr(0.5, 0.5, 1.0);
    const auto s = solve_contact(q);
    const auto Ue = [&](double b) { return strain_energy_equal(q, b).U_total; };
    CHECK(Ue(s.b * 1.001) >= Ue(s.b));
    CHECK(Ue(s.b * 0.999) >= Ue(s.b));
}

TEST_CASE("adhesive solutions keep load balance and a single tensile crossing") {
    for (auto [a1, a2] : {std::pair{0.5, 0.25}, std::pair{0.9, 0.5}, std::pair{0.5, 0.5}}) {
        for (double g : {0.5, 2.0}) {
            const auto s = solve_contact(make_jkr(a1, a2, g));
            const auto rule = oracle::gauss_gegenbauer(120, s.coeffs.alpha1 / 2);
            const auto comb = s.coeffs.combined(s.delta);
            double load = 0;
            for (int i = 0; i < rule.nodes.size(); ++i)
                load += rule.weights(i) * even_series(comb, s.coeffs.alpha1 / 2, rule.nodes(i));
            CHECK(rel(s.b * load, 1.0) <= 1e-8);
            CHECK(s.pressure(0.0) > 0);
            REQUIRE(s.b_star.has_value());
            CHECK(s.tensile_crossings == 1);
            CHECK(*s.b_star > 0);
            CHECK(*s.b_star < s.b);
            CHECK(std::abs(s.pressure(*s.b_star)) <= 1e-8 * s.pressure(0.0));
        }
    }
}
