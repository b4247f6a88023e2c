#pragma once

// Problem definition, right-hand sides, the truncated canonical system
// (I + gamma R) Phi = d and the quantities recovered from its solution.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "gradcontact/errors.hpp"
#include "gradcontact/kernel.hpp"
#include "gradcontact/material.hpp"
#include "gradcontact/specfun.hpp"

namespace gradcontact {

enum class ContactModel { hertz, jkr };

/// Combined gap profile f(x) = Q0 x^2 + Q1 x^4.
template <typename Scalar = double>
struct ProfilePoly {
    Scalar Q0;
    Scalar Q1 = Scalar(0);

    void validate() const {
        if (!(Q0 >= Scalar(0)) || !(Q1 >= Scalar(0)) || !(Q0 + Q1 > Scalar(0)))
            throw std::invalid_argument("profile: need Q0 >= 0, Q1 >= 0, Q0 + Q1 > 0");
    }
    bool quadratic() const { return Q1 == Scalar(0); }
    Scalar operator()(Scalar x) const { return Q0 * x * x + Q1 * x * x * x * x; }
};

struct SolverControls {
    int N = 16;                    // retained even-index basis functions
    KernelOptions kernel{};
    double root_tol = 1e-10;       // relative tolerance on b
    double fd_epsilon = 1e-4;      // forward-difference step for dU_e/db
    double rcond_min = 1e-13;      // reciprocal condition number floor
    double truncation_warn = 1e-6; // |Phi_{2(N-1)}| / |Phi_0| warning threshold
    int bracket_scan_points = 32;
    int max_bracket_doublings = 10;
};

template <typename Scalar = double>
struct ContactProblem {
    MaterialHalfPlane<Scalar> body1;
    MaterialHalfPlane<Scalar> body2;
    ProfilePoly<Scalar> profile;
    Scalar load = Scalar(1);
    ContactModel model = ContactModel::hertz;
    Scalar gamma_s = Scalar(0);
    SolverControls controls{};
    bool swapped = false;  // true when the inputs were reordered so body1.alpha >= body2.alpha

    /// Validates and orders the bodies by exponent.
    ContactProblem& normalize() {
        body1.validate();
        body2.validate();
        profile.validate();
        if (!(load > Scalar(0))) throw std::invalid_argument("problem: load P must be > 0");
        if (!(gamma_s >= Scalar(0))) throw std::invalid_argument("problem: gamma_s must be >= 0");
        if (controls.N < 1) throw std::invalid_argument("problem: N must be >= 1");
        if (body1.alpha < body2.alpha) {
            std::swap(body1, body2);
            swapped = !swapped;
        }
        return *this;
    }

    ExponentPair<Scalar> exponents() const { return {body1.alpha, body2.alpha}; }
    bool equal_exponents() const { return body1.alpha - body2.alpha < Scalar(controls.kernel.equal_threshold); }
    Scalar theta1() const { return material_theta(body1); }
    Scalar theta2() const { return material_theta(body2); }

    /// Internal index (1 = larger exponent) of a body given in input numbering.
    int internal_body(int body) const {
        if (body != 1 && body != 2) throw std::invalid_argument("body must be 1 or 2");
        return swapped ? 3 - body : body;
    }
};

template <typename Scalar = double>
struct SpectralCoeffs {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    Scalar b;
    Scalar alpha1;
    Vector phi1;  // Phi_{2i}^{(1)}
    Vector phi2;  // Phi_{2i}^{(2)}
    Scalar rcond = Scalar(1);

    /// Phi^{(1)} + delta Phi^{(2)}.
    Vector combined(Scalar delta) const { return phi1 + delta * phi2; }
};

/// A_j = theta_j b^{1 - alpha_j} / alpha_j.
template <typename Scalar>
Scalar operator_scale(const MaterialHalfPlane<Scalar>& body, Scalar b) {
    using std::pow;
    return material_theta(body) * pow(b, Scalar(1) - body.alpha) / body.alpha;
}

/// Coefficients a_0, a_2, a_4 of f(bt) = sum a_k C_k^{a1/2}(t).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> profile_gegenbauer_coeffs(const ProfilePoly<Scalar>& f, Scalar b, Scalar alpha1) {
    const Scalar a = alpha1;
    const Scalar b2 = b * b;
    Eigen::Matrix<Scalar, 3, 1> c;
    c(0) = b2 / (a + Scalar(2)) * (f.Q0 + Scalar(3) * f.Q1 * b2 / (a + Scalar(4)));
    c(1) = Scalar(2) * b2 / (a * (a + Scalar(2))) * (f.Q0 + Scalar(6) * f.Q1 * b2 / (a + Scalar(6)));
    c(2) = Scalar(24) * f.Q1 * b2 * b2 / (a * (a + Scalar(2)) * (a + Scalar(4)) * (a + Scalar(6)));
    return c;
}

/// Right-hand sides g^{(1)} (from -f(bt)) and g^{(2)} (from 1), even indices.
template <typename Scalar>
std::pair<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>
profile_rhs(const ProfilePoly<Scalar>& f, Scalar b, Scalar alpha1, int N) {
    using std::sqrt;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Scalar a = alpha1;
    const Scalar b2 = b * b;
    const Scalar sqpi = sqrt(pi_v<Scalar>);
    const Scalar G0 = gamma0(a);
    Vector g1 = Vector::Zero(N);
    Vector g2 = Vector::Zero(N);
    g2(0) = G0;
    g1(0) = -b2 * G0 / (a + Scalar(2)) * (f.Q0 + Scalar(3) * f.Q1 * b2 / (a + Scalar(4)));
    if (N > 1)
        g1(1) = -b2 * sqpi * a * gamma_ratio((a + Scalar(3)) / Scalar(2), a / Scalar(2) + Scalar(3)) / Scalar(2) *
                (f.Q0 + Scalar(6) * f.Q1 * b2 / (a + Scalar(6)));
    if (N > 2)
        g1(2) = -b2 * b2 * sqpi * a * (a + Scalar(2)) *
                gamma_ratio((a + Scalar(5)) / Scalar(2), a / Scalar(2) + Scalar(5)) / Scalar(4) * f.Q1;
    return {g1, g2};
}

/// Solve (I + gamma R) Phi^{(j)} = d^{(j)}, j = 1, 2, at half-length b.
template <typename Scalar>
SpectralCoeffs<Scalar> solve_system(const ContactProblem<Scalar>& problem, const KernelTables<Scalar>& tables,
                                    Scalar b) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (!(b > Scalar(0))) throw std::invalid_argument("solve_system: b must be > 0");
    if (tables.exponents.alpha1 != problem.body1.alpha || tables.exponents.alpha2 != problem.body2.alpha)
        throw std::invalid_argument("solve_system: tables built for a different exponent pair");
    const int N = tables.N;
    const Scalar A1 = operator_scale(problem.body1, b);
    const Scalar A2 = operator_scale(problem.body2, b);
    const Scalar gamma = A2 / A1;

    auto [g1, g2] = profile_rhs(problem.profile, b, problem.body1.alpha, N);
    const Vector scale = A1 * tables.betas.cwiseProduct(tables.hs);
    const Vector d1 = g1.cwiseQuotient(scale);
    const Vector d2 = g2.cwiseQuotient(scale);

    const Matrix M = Matrix::Identity(N, N) + gamma * tables.R;
    Eigen::PartialPivLU<Matrix> lu(M);
    const Scalar rc = lu.rcond();
    if (!(rc >= Scalar(problem.controls.rcond_min)))
        throw SingularSystemError("solve_system: reciprocal condition " + std::to_string(double(rc)) +
                                  " below threshold");
    return {b, problem.body1.alpha, lu.solve(d1), lu.solve(d2), rc};
}

/// Rigid approach delta fixed by the load balance int p dx = P.
template <typename Scalar>
Scalar rigid_displacement(const SpectralCoeffs<Scalar>& c, Scalar P) {
    const Scalar G0 = gamma0(c.alpha1);
    if (c.phi2(0) == Scalar(0)) throw SolverError("rigid_displacement: Phi_0^{(2)} vanishes");
    return (P / c.b - c.phi1(0) * G0) / (c.phi2(0) * G0);
}

/// int_{-b}^{b} p dx recovered from the solved coefficients.
template <typename Scalar>
Scalar resultant_force(const SpectralCoeffs<Scalar>& c, Scalar delta) {
    return c.b * gamma0(c.alpha1) * (c.phi1(0) + delta * c.phi2(0));
}

/// Polynomial part sum c_i C_{2i}^{a1/2}(t) of the pressure series.
template <typename Scalar, typename Derived>
Scalar even_series(const Eigen::MatrixBase<Derived>& coeffs, Scalar lambda, Scalar t) {
    const int N = static_cast<int>(coeffs.size());
    const auto C = gegenbauer_sequence(2 * (N - 1), lambda, t);
    Scalar s(0);
    for (int i = 0; i < N; ++i) s += coeffs(i) * C[2 * i];
    return s;
}

/// Value of the bracketed series at t = 1; zero under the Hertz endpoint condition.
template <typename Scalar>
Scalar endpoint_series(const SpectralCoeffs<Scalar>& c, Scalar delta) {
    const auto comb = c.combined(delta);
    Scalar s(0);
    for (int i = 0; i < comb.size(); ++i) s += comb(i) * gegenbauer_at_one(2 * i, c.alpha1 / Scalar(2));
    return s;
}

/// Contact pressure p(x) for |x| <= b. At |x| = b the limit is returned:
/// zero when the endpoint series vanishes to endpoint_tol (relative to the
/// sum of magnitudes), otherwise +/- infinity with the series' sign.
template <typename Scalar>
Scalar pressure_at(const SpectralCoeffs<Scalar>& c, Scalar delta, Scalar x, Scalar endpoint_tol = Scalar(1e-8)) {
    using std::abs;
    using std::pow;
    const Scalar t = x / c.b;
    if (abs(t) > Scalar(1)) throw std::domain_error("pressure_at: |x| > b");
    const auto comb = c.combined(delta);
    const Scalar lambda = c.alpha1 / Scalar(2);
    if (abs(t) == Scalar(1)) {
        Scalar s(0), mag(0);
        for (int i = 0; i < comb.size(); ++i) {
            const Scalar term = comb(i) * gegenbauer_at_one(2 * i, lambda);
            s += term;
            mag += abs(term);
        }
        if (abs(s) <= endpoint_tol * mag) return Scalar(0);
        return s > 0 ? std::numeric_limits<Scalar>::infinity() : -std::numeric_limits<Scalar>::infinity();
    }
    return pow(Scalar(1) - t * t, (c.alpha1 - Scalar(1)) / Scalar(2)) * even_series(comb, lambda, t);
}

/// p at each x in xs (|x| <= b).
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pressure_trace(const SpectralCoeffs<Scalar>& c, Scalar delta,
                                                        const Eigen::MatrixBase<Derived>& xs) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) out(i) = pressure_at(c, delta, Scalar(xs(i)));
    return out;
}

}  // namespace gradcontact
