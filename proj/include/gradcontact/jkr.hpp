#pragma once

// Adhesive (JKR) contact: b minimizes U_e - 2 gamma_s b.

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gradcontact/assembly.hpp"
#include "gradcontact/hertz.hpp"
#include "gradcontact/kernel.hpp"
#include "gradcontact/rootfind.hpp"
#include "gradcontact/specfun.hpp"

namespace gradcontact {

template <typename Scalar = double>
struct EnergyReport {
    Scalar b;
    Scalar U_e;
    Scalar U_total;  // U_e - 2 gamma_s b
    Scalar dU_db;
    std::optional<Scalar> b_star;
};

enum class FdMode { forward, central };

// ---------------------------------------------------------------------------
// Equal exponents, f = Q0 x^2

/// Coefficients K1, K2 of U_e = K1 b^{-alpha} + K2 b^{alpha + 4}.
template <typename Scalar>
std::pair<Scalar, Scalar> equal_energy_constants(const ContactProblem<Scalar>& problem) {
    using std::sqrt;
    using std::tgamma;
    const Scalar a = problem.body1.alpha;
    const Scalar th = theta_sum(problem);
    const Scalar P = problem.load;
    const Scalar Q0 = problem.profile.Q0;
    const Scalar sqpi = sqrt(pi_v<Scalar>);
    const Scalar gm = tgamma((Scalar(1) - a) / Scalar(2));
    const Scalar K1 = P * P * th * tgamma(a / Scalar(2) + Scalar(1)) * gm / (Scalar(2) * a * sqpi);
    const Scalar K2 = sqpi * Q0 * Q0 / (Scalar(2) * th * (a + Scalar(2)) * gm * tgamma(a / Scalar(2) + Scalar(3)));
    return {K1, K2};
}

/// Tensile onset for the equal-exponent pressure at half-length b, if inside (0, b).
template <typename Scalar>
std::optional<Scalar> equal_tensile_onset(const ContactProblem<Scalar>& problem, Scalar b) {
    using std::cos;
    using std::sqrt;
    const Scalar a = problem.body1.alpha;
    const Scalar A = equal_operator_scale(problem, b);
    const Scalar c = Scalar(2) * b * b * problem.profile.Q0 * cos(pi_v<Scalar> * a / Scalar(2)) /
                     (pi_v<Scalar> * A * a * (a + Scalar(1)));
    const Scalar t2 = Scalar(1) / (a + Scalar(2)) + problem.load / (gamma0(a) * b * c);
    if (t2 > Scalar(0) && t2 < Scalar(1) - Scalar(1e-12)) return b * sqrt(t2);
    return std::nullopt;
}

template <typename Scalar>
EnergyReport<Scalar> strain_energy_equal(const ContactProblem<Scalar>& problem, Scalar b) {
    using std::pow;
    if (!problem.equal_exponents() || !problem.profile.quadratic())
        throw std::invalid_argument("strain_energy_equal: needs equal exponents and f = Q0 x^2");
    const Scalar a = problem.body1.alpha;
    const auto [K1, K2] = equal_energy_constants(problem);
    const Scalar U = K1 * pow(b, -a) + K2 * pow(b, a + Scalar(4));
    const Scalar dU = -a * K1 * pow(b, -a - Scalar(1)) + (a + Scalar(4)) * K2 * pow(b, a + Scalar(3));
    return {b, U, U - Scalar(2) * problem.gamma_s * b, dU, equal_tensile_onset(problem, b)};
}

/// Stationarity condition b^{alpha+1} (dU_e/db - 2 gamma_s) = 0 in expanded form.
template <typename Scalar>
Scalar jkr_equal_residual(const ContactProblem<Scalar>& problem, Scalar b) {
    using std::pow;
    using std::sqrt;
    using std::tgamma;
    const Scalar a = problem.body1.alpha;
    const Scalar th = theta_sum(problem);
    const Scalar P = problem.load;
    const Scalar Q0 = problem.profile.Q0;
    const Scalar sqpi = sqrt(pi_v<Scalar>);
    const Scalar gm = tgamma((Scalar(1) - a) / Scalar(2));
    return sqpi * Q0 * Q0 * pow(b, Scalar(2) * a + Scalar(4)) /
               (th * (a + Scalar(2)) * gm * tgamma(a / Scalar(2) + Scalar(2))) -
           Scalar(2) * problem.gamma_s * pow(b, a + Scalar(1)) -
           P * P * th * tgamma(a / Scalar(2) + Scalar(1)) * gm / (Scalar(2) * sqpi);
}

/// Homogeneous-limit quartic in b; theta_iso_sum = theta_1 + theta_2 of the isotropic bodies.
template <typename Scalar>
Scalar jkr_quartic_residual(Scalar theta_iso_sum, Scalar P, Scalar Q0, Scalar gamma_s, Scalar b) {
    return Q0 * Q0 * b * b * b * b / (Scalar(2) * theta_iso_sum) - Scalar(2) * gamma_s * b -
           P * P * theta_iso_sum / Scalar(2);
}

/// Incompressible linear-modulus limit: cubic in b^2.
template <typename Scalar>
Scalar jkr_gibson_residual(Scalar e1, Scalar e2, Scalar P, Scalar Q0, Scalar gamma_s, Scalar b) {
    const Scalar s = Scalar(1) / e1 + Scalar(1) / e2;
    const Scalar b2 = b * b;
    return Scalar(8) / Scalar(27) * Q0 * Q0 * b2 * b2 * b2 - Scalar(2) * gamma_s * s * b2 -
           Scalar(3) * P * P * s * s / Scalar(8);
}

template <typename Scalar>
ContactSolution<Scalar> solve_jkr_equal(const ContactProblem<Scalar>& problem) {
    if (!problem.equal_exponents() || !problem.profile.quadratic())
        throw std::invalid_argument("solve_jkr_equal: needs equal exponents and f = Q0 x^2");
    const auto& ctl = problem.controls;
    const Scalar a = problem.body1.alpha;
    const Scalar b_hertz = equal_closed_form_b(theta_sum(problem), problem.load, problem.profile.Q0, a);
    auto f = [&](Scalar b) { return jkr_equal_residual(problem, b); };
    // The adhesive root is never below the Hertz one; start just under it so
    // gamma_s = 0 still brackets a sign change.
    const auto br = expand_bracket(f, b_hertz * Scalar(0.999), b_hertz * Scalar(2), ctl.max_bracket_doublings, false);
    int changes = 1;
    const auto root = scan_and_solve(f, br, b_hertz, ctl, changes);
    const Scalar b = root.root;
    ContactSolution<Scalar> s{problem, b, equal_delta(problem, b), equal_coeffs(problem, b, ctl.N),
                              SolutionBranch::jkr_equal_closed_form, equal_tensile_onset(problem, b), 0, {}};
    s.tensile_crossings = s.b_star ? 1 : 0;
    s.diag.root_iterations = root.iterations;
    s.diag.sign_changes = changes;
    finalize_diagnostics(s);
    return s;
}

// ---------------------------------------------------------------------------
// General exponents

/// U_e from solved coefficients at b. Quadratic profiles use the two-term
/// reduction; otherwise the full series over the profile expansion.
template <typename Scalar>
Scalar strain_energy_value(const ContactProblem<Scalar>& problem, const SpectralCoeffs<Scalar>& c, Scalar delta) {
    using std::sqrt;
    const Scalar a = c.alpha1;
    const Scalar b = c.b;
    const auto comb = c.combined(delta);
    const Scalar G0 = gamma0(a);
    if (problem.profile.quadratic()) {
        const Scalar Q0 = problem.profile.Q0;
        Scalar U = b * G0 / Scalar(2) * comb(0) * (delta - b * b * Q0 / (a + Scalar(2)));
        if (comb.size() > 1)
            U -= Scalar(2) * b * b * b * Q0 * sqrt(pi_v<Scalar>) *
                 gamma_ratio((a + Scalar(3)) / Scalar(2), a / Scalar(2)) / ((a + Scalar(2)) * (a + Scalar(4))) *
                 comb(1);
        return U;
    }
    const auto ak = profile_gegenbauer_coeffs(problem.profile, b, a);
    Scalar U = b * delta / Scalar(2) * comb(0) * G0;
    for (int n = 0; n < 3 && n < comb.size(); ++n) U -= b / Scalar(2) * comb(n) * ak(n) * h_n(a, 2 * n);
    return U;
}

/// U_e at b, solving the system there.
template <typename Scalar>
Scalar strain_energy_at(const ContactProblem<Scalar>& problem, const KernelTables<Scalar>& tables, Scalar b) {
    const auto c = solve_system(problem, tables, b);
    return strain_energy_value(problem, c, rigid_displacement(c, problem.load));
}

/// Sign changes of the pressure on (0, b); returns the innermost one.
template <typename Scalar>
std::pair<std::optional<Scalar>, int> tensile_onset(const SpectralCoeffs<Scalar>& c, Scalar delta,
                                                    int samples = 512) {
    const auto comb = c.combined(delta);
    const Scalar lambda = c.alpha1 / Scalar(2);
    auto g = [&](Scalar t) { return even_series(comb, lambda, t); };
    std::optional<Scalar> first;
    int crossings = 0;
    Scalar t_prev(0), g_prev = g(Scalar(0));
    for (int i = 1; i < samples; ++i) {
        const Scalar t = Scalar(i) / Scalar(samples);
        const Scalar gt = g(t);
        if ((g_prev > 0) != (gt > 0) && gt != Scalar(0)) {
            ++crossings;
            if (!first) {
                auto tol = [](Scalar x, Scalar y) { return std::abs(x - y) <= Scalar(1e-14); };
                std::uintmax_t it = 200;
                const auto r = boost::math::tools::toms748_solve(g, t_prev, t, g_prev, gt, tol, it);
                first = c.b * (r.first + r.second) / Scalar(2);
            }
        }
        t_prev = t;
        g_prev = gt;
    }
    return {first, crossings};
}

template <typename Scalar>
EnergyReport<Scalar> strain_energy_general(const ContactProblem<Scalar>& problem, const KernelTables<Scalar>& tables,
                                           Scalar b, FdMode mode = FdMode::forward) {
    const Scalar eps(problem.controls.fd_epsilon);
    const auto c = solve_system(problem, tables, b);
    const Scalar delta = rigid_displacement(c, problem.load);
    const Scalar U = strain_energy_value(problem, c, delta);
    const Scalar dU = mode == FdMode::forward
                          ? (strain_energy_at(problem, tables, b + eps) - U) / eps
                          : (strain_energy_at(problem, tables, b + eps) - strain_energy_at(problem, tables, b - eps)) /
                                (Scalar(2) * eps);
    return {b, U, U - Scalar(2) * problem.gamma_s * b, dU, tensile_onset(c, delta).first};
}

template <typename Scalar>
ContactSolution<Scalar> solve_jkr_general(const ContactProblem<Scalar>& problem, const KernelTables<Scalar>& tables) {
    const auto& ctl = problem.controls;
    const Scalar eps(ctl.fd_epsilon);
    const Scalar two_gamma = Scalar(2) * problem.gamma_s;
    auto f = [&](Scalar b) {
        return (strain_energy_at(problem, tables, b + eps) - strain_energy_at(problem, tables, b)) / eps - two_gamma;
    };
    const Scalar b_hertz = solve_hertz(problem, tables).b;
    const auto br = expand_bracket(f, b_hertz * Scalar(0.75), b_hertz * Scalar(1.5), ctl.max_bracket_doublings);
    int changes = 1;
    const auto root = scan_and_solve(f, br, b_hertz, ctl, changes);

    const auto coeffs = solve_system(problem, tables, root.root);
    const Scalar delta = rigid_displacement(coeffs, problem.load);
    ContactSolution<Scalar> s{problem, root.root, delta, coeffs, SolutionBranch::jkr_spectral, std::nullopt, 0, {}};
    const auto [onset, crossings] = tensile_onset(coeffs, delta);
    s.b_star = onset;
    s.tensile_crossings = crossings;
    s.diag.root_iterations = root.iterations;
    s.diag.sign_changes = changes;
    s.diag.kernel_terms = tables.max_terms_used;
    finalize_diagnostics(s);
    return s;
}

/// b for each finite-difference step in `epsilons`, other settings unchanged.
template <typename Scalar>
std::vector<Scalar> epsilon_sensitivity(ContactProblem<Scalar> problem, const KernelTables<Scalar>& tables,
                                        const std::vector<double>& epsilons) {
    std::vector<Scalar> out;
    for (double e : epsilons) {
        problem.controls.fd_epsilon = e;
        out.push_back(solve_jkr_general(problem, tables).b);
    }
    return out;
}

}  // namespace gradcontact
