#pragma once

// Independent validation paths. Everything here works from the defining
// integrals (brute-force quadrature) or from a direct collocation of the
// integral equation; none of it calls the closed-form coefficient formulas.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gradcontact/assembly.hpp"
#include "gradcontact/errors.hpp"
#include "gradcontact/material.hpp"
#include "gradcontact/specfun.hpp"

namespace gradcontact::oracle {

struct QuadResult {
    double value;
    double error;      // quadrature error estimate
    double l1;         // integral of |integrand|
    bool converged;    // error <= abs_tol * max(1, l1)
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;  // tanh-sinh refinement target
    std::size_t max_refinements = 15;
};

namespace detail {

inline boost::math::quadrature::tanh_sinh<double>& integrator(std::size_t levels) {
    thread_local boost::math::quadrature::tanh_sinh<double> ts(levels);
    return ts;
}

/// Tanh-sinh over [a, b] for g(x, da, db), where da = x - a and db = b - x
/// are passed without cancellation so endpoint singularities stay resolved.
template <typename G>
double integrate_with_ends(G&& g, double a, double b, const QuadOptions& opt, double* err, double* l1) {
    auto& ts = integrator(opt.max_refinements);
    const double width = b - a;
    auto f = [&](double x, double xc) {
        const double da = xc < 0 ? -xc : width - xc;
        const double db = xc < 0 ? width + xc : xc;
        return g(x, da, db);
    };
    std::size_t levels = 0;
    return ts.integrate(f, a, b, opt.rel_tol, err, l1, &levels);
}

/// Integrate g over the points of `cuts` (sorted, inclusive ends) with tanh-sinh.
template <typename G>
QuadResult integrate_pieces(G&& g, const std::vector<double>& cuts, const QuadOptions& opt) {
    QuadResult r{0.0, 0.0, 0.0, true};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        double err = 0.0, l1 = 0.0;
        r.value += integrate_with_ends([&](double x, double, double) { return g(x); }, cuts[i], cuts[i + 1], opt,
                                       &err, &l1);
        r.error += err;
        r.l1 += l1;
    }
    r.converged = r.error <= opt.abs_tol * std::max(1.0, r.l1);
    return r;
}

}  // namespace detail

/// int_{-1}^{1} (1 - tau^2)^{(a-1)/2} f(tau) dtau for smooth f. Each half of
/// the interval is folded with tau = +-(1 - u^2), which removes the endpoint
/// weight singularity.
template <typename F>
QuadResult weighted_quad(F&& f, double a, const QuadOptions& opt = {}) {
    auto half = [&](double side) {
        auto g = [&](double u) {
            const double u2 = u * u;
            const double tau = side * (1.0 - u2);
            return 2.0 * std::pow(u, a) * std::pow(2.0 - u2, (a - 1.0) / 2.0) * f(tau);
        };
        return detail::integrate_pieces(g, {0.0, 1.0}, opt);
    };
    const QuadResult r = half(1.0);
    const QuadResult l = half(-1.0);
    const double err = r.error + l.error;
    const double l1 = r.l1 + l.l1;
    return {r.value + l.value, err, l1, err <= opt.abs_tol * std::max(1.0, l1)};
}

/// int_{-1}^{1} (1 - tau^2)^{(a-1)/2} |tau - t|^{-s} f(tau) dtau for |t| < 1
/// and smooth f. The interval is split at t and every factor that vanishes at
/// a piece end is formed from the exact end distance.
template <typename F>
QuadResult kernel_quad(F&& f, double a, double s, double t, const QuadOptions& opt = {}) {
    if (!(std::abs(t) < 1.0)) throw std::domain_error("kernel_quad: need |t| < 1");
    const double e = (a - 1.0) / 2.0;
    auto left = [&](double tau, double da, double db) {
        return std::pow(da * ((1.0 - t) + db), e) * std::pow(db, -s) * f(tau);
    };
    auto right = [&](double tau, double da, double db) {
        return std::pow(((1.0 + t) + da) * db, e) * std::pow(da, -s) * f(tau);
    };
    QuadResult r{0.0, 0.0, 0.0, true};
    double err = 0.0, l1 = 0.0;
    r.value += detail::integrate_with_ends(left, -1.0, t, opt, &err, &l1);
    r.error += err;
    r.l1 += l1;
    r.value += detail::integrate_with_ends(right, t, 1.0, opt, &err, &l1);
    r.error += err;
    r.l1 += l1;
    r.converged = r.error <= opt.abs_tol * std::max(1.0, r.l1);
    return r;
}

/// H_k^{(n)} from its defining integral.
inline QuadResult quad_H(int n, int k, double a1, double a2, const QuadOptions& opt = {}) {
    return weighted_quad([&](double t) { return gegenbauer(n, a1 / 2, t) * gegenbauer(k, a2 / 2, t); }, a1, opt);
}

/// int C_n C_m (1 - t^2)^{(a-1)/2} dt; h_n when m = n.
inline QuadResult quad_h(double a, int n, int m, const QuadOptions& opt = {}) {
    return weighted_quad([&](double t) { return gegenbauer(n, a / 2, t) * gegenbauer(m, a / 2, t); }, a, opt);
}

/// g_n^{(1)} = -int C_n^{a1/2}(t) (1 - t^2)^{(a1-1)/2} f(bt) dt.
inline QuadResult quad_g(const ProfilePoly<double>& f, double b, double a1, int n, const QuadOptions& opt = {}) {
    auto r = weighted_quad([&](double t) { return -gegenbauer(n, a1 / 2, t) * f(b * t); }, a1, opt);
    return r;
}

/// I_n(t) for |t| > 1 from the defining integral.
inline QuadResult quad_I(int n, double t, double aj, double a1, const QuadOptions& opt = {}) {
    if (!(std::abs(t) > 1.0)) throw std::domain_error("quad_I: need |t| > 1");
    return weighted_quad([&](double tau) { return gegenbauer(n, a1 / 2, tau) * std::pow(std::abs(tau - t), -aj); },
                         a1, opt);
}

/// Power-kernel image int C_n^{a/2}(tau) (1 - tau^2)^{(a-1)/2} |t - tau|^{-a} dtau for |t| < 1.
inline QuadResult quad_power_image(int n, double a, double t, const QuadOptions& opt = {}) {
    return kernel_quad([&](double tau) { return gegenbauer(n, a / 2, tau); }, a, a, t, opt);
}

/// L_{nm} = int int w1(t) w1(tau) C_n(t) C_m(tau) |t - tau|^{-a2} dtau dt.
inline QuadResult quad_L(int n, int m, double a1, double a2, const QuadOptions& opt = {}) {
    QuadOptions inner = opt;
    inner.rel_tol = std::max(opt.rel_tol, 1e-12);
    double inner_err = 0.0;
    auto outer = weighted_quad(
        [&](double t) {
            // Outer nodes can round onto +-1; the inner integral is continuous there.
            const double tc = std::clamp(t, -1.0 + 1e-15, 1.0 - 1e-15);
            const auto r = kernel_quad([&](double tau) { return gegenbauer(m, a1 / 2, tau); }, a1, a2, tc, inner);
            inner_err = std::max(inner_err, r.error);
            return gegenbauer(n, a1 / 2, t) * r.value;
        },
        a1, opt);
    outer.error += inner_err * outer.l1;
    outer.converged = outer.error <= 1e-9 * std::max(1.0, std::abs(outer.value));
    return outer;
}

/// Gauss quadrature for the weight (1 - t^2)^{lambda - 1/2} (Golub-Welsch).
struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

inline GaussRule gauss_gegenbauer(int M, double lambda) {
    if (M < 1) throw std::invalid_argument("gauss_gegenbauer: M must be >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(M, M);
    for (int k = 1; k < M; ++k) {
        const double kk = k;
        const double off = std::sqrt(kk * (kk + 2 * lambda - 1) / (4 * (kk + lambda) * (kk + lambda - 1)));
        J(k, k - 1) = off;
        J(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::sqrt(pi_v<double>) * std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1));
    GaussRule rule{es.eigenvalues(), es.eigenvectors().row(0).transpose().array().square() * mu0};
    return rule;
}

/// U_e = (b/2) int p(bt) (delta - f(bt)) dt with p given as weight times `series(t)`.
template <typename Series>
double quad_energy(Series&& series, double a1, double b, double delta, const ProfilePoly<double>& f, int M = 200) {
    const auto rule = gauss_gegenbauer(M, a1 / 2);
    double s = 0.0;
    for (int i = 0; i < M; ++i) {
        const double t = rule.nodes(i);
        s += rule.weights(i) * series(t) * (delta - f(b * t));
    }
    return b / 2 * s;
}

// ---------------------------------------------------------------------------
// Collocation (Nystrom-type) solver

/// Product-integration grid. Unknowns are samples of the smooth factor
/// u(tau) = p(b tau) / (1 - tau^2)^{(a1-1)/2} at Chebyshev nodes, interpolated
/// piecewise-linearly (linear extrapolation on the two end panels). The
/// weights W_j(i, k) = int (1 - tau^2)^{(a1-1)/2} |tau_i - tau|^{-a_j} l_k(tau) dtau
/// are integrated panel by panel, so every singularity sits at a panel end.
struct CollocationGrid {
    int M;
    double alpha1, alpha2;
    Eigen::VectorXd nodes;
    Eigen::MatrixXd W1, W2;
    Eigen::VectorXd mass;  // int (1 - tau^2)^{(a1-1)/2} l_k(tau) dtau
};

inline CollocationGrid make_collocation_grid(int M, double a1, double a2, const QuadOptions& opt = {}) {
    if (M < 4) throw std::invalid_argument("make_collocation_grid: M must be >= 4");
    CollocationGrid g{M, a1, a2, Eigen::VectorXd(M), Eigen::MatrixXd::Zero(M, M), Eigen::MatrixXd::Zero(M, M),
                      Eigen::VectorXd::Zero(M)};
    for (int i = 0; i < M; ++i) g.nodes(i) = -std::cos((2.0 * i + 1.0) * pi_v<double> / (2.0 * M));

    // Panel p spans [e_p, e_{p+1}] with e_0 = -1, e_{M+1} = 1, e_{p} = nodes(p-1).
    std::vector<double> edges(M + 2);
    edges[0] = -1.0;
    edges[M + 1] = 1.0;
    for (int i = 0; i < M; ++i) edges[i + 1] = g.nodes(i);
    // Linear pieces: panel p uses nodes (k0, k0+1).
    auto panel_nodes = [M](int p) { return std::clamp(p - 1, 0, M - 2); };

    // int w K {1, tau} over [lo, hi]; kern receives (tau, tau - lo, hi - tau).
    auto moments = [&](auto&& kern, double lo, double hi) {
        auto weight = [&](double tau, double da, double db) {
            const double one_plus = lo == -1.0 ? da : 1.0 + tau;
            const double one_minus = hi == 1.0 ? db : 1.0 - tau;
            return std::pow(one_plus * one_minus, (a1 - 1.0) / 2.0);
        };
        auto f0 = [&](double tau, double da, double db) { return weight(tau, da, db) * kern(tau, da, db); };
        auto f1 = [&](double tau, double da, double db) { return weight(tau, da, db) * kern(tau, da, db) * tau; };
        double err = 0.0, l1 = 0.0;
        const double m0 = detail::integrate_with_ends(f0, lo, hi, opt, &err, &l1);
        const double m1 = detail::integrate_with_ends(f1, lo, hi, opt, &err, &l1);
        return std::pair{m0, m1};
    };
    auto scatter = [&](auto&& row, int p, std::pair<double, double> m) {
        const int k0 = panel_nodes(p);
        const double x0 = g.nodes(k0), x1 = g.nodes(k0 + 1);
        const double h = x1 - x0;
        // l_{k0} = (x1 - tau)/h, l_{k0+1} = (tau - x0)/h
        row(k0) += (x1 * m.first - m.second) / h;
        row(k0 + 1) += (m.second - x0 * m.first) / h;
    };

    Eigen::RowVectorXd mass_row = Eigen::RowVectorXd::Zero(M);
    for (int p = 0; p <= M; ++p)
        scatter(mass_row, p, moments([](double, double, double) { return 1.0; }, edges[p], edges[p + 1]));
    g.mass = mass_row.transpose();

    for (int i = 0; i < M; ++i) {
        const double ti = g.nodes(i);
        for (int p = 0; p <= M; ++p) {
            const double lo = edges[p], hi = edges[p + 1];
            auto dist = [&](double tau, double da, double db) {
                return ti == lo ? da : ti == hi ? db : std::abs(ti - tau);
            };
            scatter(g.W1.row(i), p,
                    moments([&](double tau, double da, double db) { return std::pow(dist(tau, da, db), -a1); }, lo,
                            hi));
            if (a2 == a1) continue;
            scatter(g.W2.row(i), p,
                    moments([&](double tau, double da, double db) { return std::pow(dist(tau, da, db), -a2); }, lo,
                            hi));
        }
    }
    if (a2 == a1) g.W2 = g.W1;
    return g;
}

struct NystromSolution {
    Eigen::VectorXd nodes;  // tau_i
    Eigen::VectorXd u1;     // smooth factor of phi^(1) at the nodes
    Eigen::VectorXd u2;     // smooth factor of phi^(2) at the nodes
    double delta;
    double rcond;

    /// Smooth factor of p(b tau) = (1 - tau^2)^{(a1-1)/2} (u1 + delta u2).
    Eigen::VectorXd smooth() const { return u1 + delta * u2; }
};

/// Solve A1 K1[phi] + A2 K2[phi] = rhs_j at the nodes for rhs_1 = -f(b tau),
/// rhs_2 = 1, then fix delta by load balance.
inline NystromSolution nystrom_solve(const ContactProblem<double>& problem, double b, const CollocationGrid& grid) {
    if (grid.alpha1 != problem.body1.alpha || grid.alpha2 != problem.body2.alpha)
        throw std::invalid_argument("nystrom_solve: grid built for a different exponent pair");
    const double A1 = material_theta(problem.body1) * std::pow(b, 1 - problem.body1.alpha) / problem.body1.alpha;
    const double A2 = material_theta(problem.body2) * std::pow(b, 1 - problem.body2.alpha) / problem.body2.alpha;
    const Eigen::MatrixXd K = A1 * grid.W1 + A2 * grid.W2;
    Eigen::VectorXd r1(grid.M), r2 = Eigen::VectorXd::Ones(grid.M);
    for (int i = 0; i < grid.M; ++i) r1(i) = -problem.profile(b * grid.nodes(i));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    const double rc = lu.rcond();
    if (!(rc > 1e-14)) throw SingularSystemError("nystrom_solve: collocation matrix is ill-conditioned");
    NystromSolution s{grid.nodes, lu.solve(r1), lu.solve(r2), 0.0, rc};
    const double m1 = b * grid.mass.dot(s.u1);
    const double m2 = b * grid.mass.dot(s.u2);
    s.delta = (problem.load - m1) / m2;
    return s;
}

}  // namespace gradcontact::oracle
