#pragma once

// Hertzian contact: the endpoint condition fixes b. General exponents use the
// spectral system; equal exponents have the closed form and a diagonal series.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gradcontact/assembly.hpp"
#include "gradcontact/errors.hpp"
#include "gradcontact/kernel.hpp"
#include "gradcontact/material.hpp"
#include "gradcontact/rootfind.hpp"
#include "gradcontact/specfun.hpp"

namespace gradcontact {

enum class SolutionBranch { spectral, equal_closed_form, equal_series, jkr_equal_closed_form, jkr_spectral };

inline const char* branch_name(SolutionBranch b) {
    switch (b) {
        case SolutionBranch::spectral: return "spectral";
        case SolutionBranch::equal_closed_form: return "equal-closed-form";
        case SolutionBranch::equal_series: return "equal-series";
        case SolutionBranch::jkr_equal_closed_form: return "jkr-equal-closed-form";
        case SolutionBranch::jkr_spectral: return "jkr-spectral";
    }
    return "unknown";
}

template <typename Scalar = double>
struct Diagnostics {
    Scalar endpoint_residual = 0;   // bracketed series at t = 1
    Scalar load_balance_error = 0;  // |b Gamma_0 (Phi_0^(1) + delta Phi_0^(2)) - P| / P
    Scalar truncation_tail = 0;     // max_j |Phi_{2(N-1)}^(j)| / |Phi_0^(j)|
    Scalar rcond = 1;
    int root_iterations = 0;
    int sign_changes = 1;           // sign changes seen by the bracket scan
    long kernel_terms = 0;          // longest l-series used for L
    std::vector<std::string> warnings;
};

template <typename Scalar = double>
struct ContactSolution {
    ContactProblem<Scalar> problem;
    Scalar b;
    Scalar delta;
    SpectralCoeffs<Scalar> coeffs;
    SolutionBranch branch;
    std::optional<Scalar> b_star;  // JKR: innermost zero of p on (0, b)
    int tensile_crossings = 0;     // JKR: sign changes of p on (0, b)
    Diagnostics<Scalar> diag;

    Scalar pressure(Scalar x) const { return pressure_at(coeffs, delta, x); }
};

// ---------------------------------------------------------------------------
// Equal exponents

/// theta_1 + theta_2 with both bodies evaluated at their own exponents.
template <typename Scalar>
Scalar theta_sum(const ContactProblem<Scalar>& problem) {
    return problem.theta1() + problem.theta2();
}

/// Closed-form half-length for equal exponents and f = Q0 x^2.
template <typename Scalar>
Scalar equal_closed_form_b(Scalar theta_total, Scalar P, Scalar Q0, Scalar alpha) {
    using std::exp;
    using std::lgamma;
    using std::pow;
    using std::sqrt;
    const Scalar g = exp(lgamma(Scalar(2) + alpha / Scalar(2)) + lgamma((Scalar(1) - alpha) / Scalar(2)));
    return pow(g * theta_total * P / (sqrt(pi_v<Scalar>) * Q0), Scalar(1) / (alpha + Scalar(2)));
}

/// Combined operator factor A = (theta_1 + theta_2) b^{1 - alpha} / alpha.
template <typename Scalar>
Scalar equal_operator_scale(const ContactProblem<Scalar>& problem, Scalar b) {
    using std::pow;
    const Scalar a = problem.body1.alpha;
    return theta_sum(problem) * pow(b, Scalar(1) - a) / a;
}

/// delta from load balance with the diagonal system, any polynomial profile.
template <typename Scalar>
Scalar equal_delta(const ContactProblem<Scalar>& problem, Scalar b) {
    using std::cos;
    const Scalar a = problem.body1.alpha;
    const auto [g1, g2] = profile_rhs(problem.profile, b, a, 1);
    const Scalar A = equal_operator_scale(problem, b);
    return (-g1(0) + pi_v<Scalar> * A * problem.load / (b * cos(pi_v<Scalar> * a / Scalar(2)))) / gamma0(a);
}

/// Coefficients Phi^(1), Phi^(2) of the diagonal system at b.
template <typename Scalar>
SpectralCoeffs<Scalar> equal_coeffs(const ContactProblem<Scalar>& problem, Scalar b, int N) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Scalar a = problem.body1.alpha;
    const Scalar A = equal_operator_scale(problem, b);
    auto [g1, g2] = profile_rhs(problem.profile, b, a, N);
    Vector scale(N);
    for (int i = 0; i < N; ++i) scale(i) = A * beta_n(a, 2 * i) * h_n(a, 2 * i);
    return {b, a, g1.cwiseQuotient(scale), g2.cwiseQuotient(scale), Scalar(1)};
}

/// Left side of the equal-exponent endpoint condition, scaled by Gamma(alpha).
template <typename Scalar>
Scalar equal_root_function(const ContactProblem<Scalar>& problem, Scalar b) {
    const Scalar a = problem.body1.alpha;
    const auto [g1, g2] = profile_rhs(problem.profile, b, a, 3);
    Scalar s = equal_delta(problem, b) * gamma0(a) * a / Scalar(2);
    for (int n = 0; n < 3; ++n)
        s += g1(n) * (Scalar(2 * n) + a / Scalar(2)) / pochhammer_ratio(a, Scalar(1), 2 * n);
    return s;
}

/// Closed-form Hertz pressure for equal exponents and f = Q0 x^2.
template <typename Scalar>
Scalar pressure_equal_closed_form(const ContactProblem<Scalar>& problem, Scalar b, Scalar x) {
    using std::pow;
    using std::sqrt;
    const Scalar a = problem.body1.alpha;
    const Scalar t2 = (x / b) * (x / b);
    if (t2 >= Scalar(1)) return Scalar(0);
    return problem.load * gamma_ratio(a / Scalar(2) + Scalar(2), (a + Scalar(3)) / Scalar(2)) /
           (sqrt(pi_v<Scalar>) * b) * pow(Scalar(1) - t2, (a + Scalar(1)) / Scalar(2));
}

/// Equal-exponent pressure at arbitrary b (endpoint-singular unless b is the Hertz value).
template <typename Scalar>
Scalar pressure_equal_free_b(const ContactProblem<Scalar>& problem, Scalar b, Scalar x) {
    using std::cos;
    using std::pow;
    const Scalar a = problem.body1.alpha;
    const Scalar t2 = (x / b) * (x / b);
    const Scalar A = equal_operator_scale(problem, b);
    const Scalar bracket = problem.load / (gamma0(a) * b) +
                           Scalar(2) * b * b * problem.profile.Q0 * cos(pi_v<Scalar> * a / Scalar(2)) /
                               (pi_v<Scalar> * A * a * (a + Scalar(1))) * (Scalar(1) / (a + Scalar(2)) - t2);
    return pow(Scalar(1) - t2, (a - Scalar(1)) / Scalar(2)) * bracket;
}

// ---------------------------------------------------------------------------
// Shared post-processing

template <typename Scalar>
Scalar truncation_tail(const SpectralCoeffs<Scalar>& c) {
    using std::abs;
    using std::max;
    const auto n = c.phi1.size();
    if (n < 2) return Scalar(0);
    Scalar t(0);
    if (c.phi1(0) != Scalar(0)) t = max(t, abs(c.phi1(n - 1)) / abs(c.phi1(0)));
    if (c.phi2(0) != Scalar(0)) t = max(t, abs(c.phi2(n - 1)) / abs(c.phi2(0)));
    return t;
}

/// Fill in the residual diagnostics and truncation warning for a solution.
template <typename Scalar>
void finalize_diagnostics(ContactSolution<Scalar>& s) {
    using std::abs;
    s.diag.endpoint_residual = endpoint_series(s.coeffs, s.delta);
    s.diag.load_balance_error = abs(resultant_force(s.coeffs, s.delta) - s.problem.load) / s.problem.load;
    s.diag.truncation_tail = truncation_tail(s.coeffs);
    s.diag.rcond = s.coeffs.rcond;
    if (s.diag.truncation_tail > Scalar(s.problem.controls.truncation_warn)) {
        std::ostringstream os;
        os << "truncation tail " << double(s.diag.truncation_tail) << " exceeds "
           << s.problem.controls.truncation_warn << " at N = " << s.coeffs.phi1.size();
        s.diag.warnings.push_back(os.str());
    }
    if (s.diag.sign_changes > 1)
        s.diag.warnings.push_back("bracket scan found " + std::to_string(s.diag.sign_changes) +
                                  " sign changes; the root nearest the initial guess was taken");
}

/// Scan a bracket and refine the sign change nearest `guess`.
template <typename Scalar, typename F>
RootResult<Scalar> scan_and_solve(F&& f, Bracket<Scalar> br, Scalar guess, const SolverControls& ctl,
                                  int& sign_changes) {
    using std::abs;
    using std::log;
    auto changes = scan_sign_changes(f, br.lo, br.hi, ctl.bracket_scan_points);
    sign_changes = std::max<int>(1, static_cast<int>(changes.size()));
    if (!changes.empty()) {
        auto dist = [&](const Bracket<Scalar>& c) {
            if (c.lo <= guess && guess <= c.hi) return Scalar(0);
            return std::min(abs(log(c.lo / guess)), abs(log(c.hi / guess)));
        };
        br = *std::min_element(changes.begin(), changes.end(),
                               [&](const auto& x, const auto& y) { return dist(x) < dist(y); });
    }
    return solve_bracketed(f, br, ctl.root_tol);
}

// ---------------------------------------------------------------------------
// Hertz solvers

/// Endpoint condition sum (alpha1)_{2n}/(2n)! (Phi^(1) + delta Phi^(2))_{2n} at b.
template <typename Scalar>
Scalar endpoint_residual(const ContactProblem<Scalar>& problem, const KernelTables<Scalar>& tables, Scalar b) {
    const auto c = solve_system(problem, tables, b);
    return endpoint_series(c, rigid_displacement(c, problem.load));
}

/// Starting guess: the equal-exponent closed form at the mean exponent.
template <typename Scalar>
Scalar hertz_initial_guess(const ContactProblem<Scalar>& problem) {
    const Scalar abar = (problem.body1.alpha + problem.body2.alpha) / Scalar(2);
    auto m1 = problem.body1;
    auto m2 = problem.body2;
    m1.alpha = abar;
    m2.alpha = abar;
    const Scalar Q = problem.profile.Q0 > Scalar(0) ? problem.profile.Q0 : problem.profile.Q1;
    return equal_closed_form_b(material_theta(m1) + material_theta(m2), problem.load, Q, abar);
}

template <typename Scalar>
ContactSolution<Scalar> solve_hertz(const ContactProblem<Scalar>& problem, const KernelTables<Scalar>& tables) {
    const auto& ctl = problem.controls;
    auto f = [&](Scalar b) { return endpoint_residual(problem, tables, b); };
    const Scalar guess = hertz_initial_guess(problem);
    const auto br = expand_bracket(f, guess / Scalar(2), guess * Scalar(2), ctl.max_bracket_doublings);
    int changes = 1;
    const auto root = scan_and_solve(f, br, guess, ctl, changes);

    const auto coeffs = solve_system(problem, tables, root.root);
    ContactSolution<Scalar> s{problem, root.root, rigid_displacement(coeffs, problem.load), coeffs,
                              SolutionBranch::spectral, std::nullopt, 0, {}};
    s.diag.root_iterations = root.iterations;
    s.diag.sign_changes = changes;
    s.diag.kernel_terms = tables.max_terms_used;
    finalize_diagnostics(s);
    return s;
}

template <typename Scalar>
ContactSolution<Scalar> solve_hertz(const ContactProblem<Scalar>& problem) {
    const auto tables = build_tables(problem.exponents(), problem.controls.N, problem.controls.kernel);
    return solve_hertz(problem, tables);
}

/// Equal exponents, f = Q0 x^2: b, delta and the coefficients in closed form.
template <typename Scalar>
ContactSolution<Scalar> solve_equal_exponent(const ContactProblem<Scalar>& problem) {
    if (!problem.equal_exponents()) throw std::invalid_argument("solve_equal_exponent: exponents differ");
    if (!problem.profile.quadratic()) throw std::invalid_argument("solve_equal_exponent: profile must be Q0 x^2");
    const Scalar a = problem.body1.alpha;
    const Scalar b = equal_closed_form_b(theta_sum(problem), problem.load, problem.profile.Q0, a);
    const auto coeffs = equal_coeffs(problem, b, problem.controls.N);
    ContactSolution<Scalar> s{problem, b, equal_delta(problem, b), coeffs, SolutionBranch::equal_closed_form,
                              std::nullopt, 0, {}};
    finalize_diagnostics(s);
    return s;
}

/// Equal exponents, any polynomial profile: b from the diagonal endpoint condition.
template <typename Scalar>
ContactSolution<Scalar> solve_equal_exponent_general(const ContactProblem<Scalar>& problem) {
    if (!problem.equal_exponents()) throw std::invalid_argument("solve_equal_exponent_general: exponents differ");
    const auto& ctl = problem.controls;
    auto f = [&](Scalar b) { return equal_root_function(problem, b); };
    const Scalar guess = hertz_initial_guess(problem);
    const auto br = expand_bracket(f, guess / Scalar(2), guess * Scalar(2), ctl.max_bracket_doublings);
    int changes = 1;
    const auto root = scan_and_solve(f, br, guess, ctl, changes);
    const auto coeffs = equal_coeffs(problem, root.root, ctl.N);
    ContactSolution<Scalar> s{problem, root.root, equal_delta(problem, root.root), coeffs,
                              SolutionBranch::equal_series, std::nullopt, 0, {}};
    s.diag.root_iterations = root.iterations;
    s.diag.sign_changes = changes;
    finalize_diagnostics(s);
    return s;
}

}  // namespace gradcontact
