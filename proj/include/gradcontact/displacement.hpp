#pragma once

// Surface normal displacements outside the contact zone.
//
// I_n(t; aj, a1) = int_{-1}^{1} (1 - tau^2)^{(a1-1)/2} C_n^{a1/2}(tau) |tau - t|^{-aj} dtau, |t| > 1,
// evaluated in closed form through Gauss hypergeometric functions of
// zeta = -(t + 1)/2 (near regime zeta <= 1) or of -1/zeta (far regime).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "gradcontact/assembly.hpp"
#include "gradcontact/hertz.hpp"
#include "gradcontact/kernel.hpp"
#include "gradcontact/specfun.hpp"

namespace gradcontact {

enum class ExteriorRegime { near, far };

template <typename Scalar = double>
struct ExteriorPoint {
    Scalar t;
    ExteriorRegime regime;

    /// Classify a normalized coordinate; near means 1 < |t| <= 3.
    static ExteriorPoint classify(Scalar t) {
        using std::abs;
        if (!(abs(t) > Scalar(1))) throw std::domain_error("ExteriorPoint: need |t| > 1");
        return {t, abs(t) <= Scalar(3) ? ExteriorRegime::near : ExteriorRegime::far};
    }
};

namespace detail {

template <typename Scalar>
Scalar In_near(int n, Scalar zeta, Scalar aj, Scalar a1, const Hyp2f1Options& opt) {
    using std::pow;
    using std::tgamma;
    const Scalar half_a1p1 = (a1 + Scalar(1)) / Scalar(2);
    const Scalar pre = pochhammer_ratio(a1, Scalar(1), n) * tgamma(half_a1p1) / pow(Scalar(2), aj - a1) *
                       (n % 2 == 0 ? Scalar(1) : Scalar(-1));
    const Scalar t1 = pochhammer(aj, n) * tgamma(half_a1p1 - aj) / tgamma(a1 - aj + Scalar(n) + Scalar(1)) *
                      gauss_2f1(aj - a1 - Scalar(n), aj + Scalar(n), aj + (Scalar(1) - a1) / Scalar(2), -zeta, opt);
    const Scalar t2 = tgamma(aj - half_a1p1) / tgamma(aj) * pow(zeta, half_a1p1 - aj) *
                      gauss_2f1(half_a1p1 + Scalar(n), (Scalar(1) - a1) / Scalar(2) - Scalar(n),
                                (Scalar(3) + a1) / Scalar(2) - aj, -zeta, opt);
    return pre * (t1 + t2);
}

template <typename Scalar>
Scalar In_far(int n, Scalar zeta, Scalar aj, Scalar a1, const Hyp2f1Options& opt) {
    using std::pow;
    using std::sqrt;
    using std::tgamma;
    const Scalar sign = n % 2 == 0 ? Scalar(1) : Scalar(-1);
    const Scalar pre = sign * sqrt(pi_v<Scalar>) * pochhammer_ratio(a1, Scalar(1), n) * pochhammer(aj, n) *
                       gamma_ratio((a1 + Scalar(1)) / Scalar(2), a1 / Scalar(2) + Scalar(n) + Scalar(1)) /
                       (pow(Scalar(2), aj + Scalar(2 * n)) * pow(zeta, aj + Scalar(n)));
    return pre * gauss_2f1(aj + Scalar(n), (a1 + Scalar(1)) / Scalar(2) + Scalar(n), a1 + Scalar(2 * n + 1),
                           -Scalar(1) / zeta, opt);
}

}  // namespace detail

/// I_n(t; aj, a1) for |t| > 1. For t > 1 the parity identity for even n is used.
template <typename Scalar>
Scalar integral_In(int n, Scalar t, Scalar aj, Scalar a1, const Hyp2f1Options& opt = {}) {
    const auto pt = ExteriorPoint<Scalar>::classify(t);
    if (t > Scalar(0)) {
        if (n % 2 != 0) throw std::invalid_argument("integral_In: t > 1 needs even n");
        t = -t;
    }
    const Scalar zeta = -(t + Scalar(1)) / Scalar(2);
    if (pt.regime == ExteriorRegime::far) return detail::In_far(n, zeta, aj, a1, opt);
    // The two near-regime terms cancel strongly as n grows; carry extra precision.
    Hyp2f1Options wide = opt;
    wide.tolerance = std::min(opt.tolerance, 1e-19);
    using Wide = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;
    return Scalar(detail::In_near<Wide>(n, Wide(zeta), Wide(aj), Wide(a1), wide));
}

/// Equal-exponent integrals I~_0 = I_0 / alpha and I~_2 = I_2 / alpha in
/// their two-term near-regime form; far points use the general formula.
template <typename Scalar>
std::pair<Scalar, Scalar> equal_tilde_integrals(Scalar t, Scalar alpha, const Hyp2f1Options& opt = {}) {
    using std::abs;
    using std::cos;
    using std::pow;
    using std::tgamma;
    const auto pt = ExteriorPoint<Scalar>::classify(t);
    if (pt.regime == ExteriorRegime::far)
        return {integral_In(0, t, alpha, alpha, opt) / alpha, integral_In(2, t, alpha, alpha, opt) / alpha};
    const Scalar a = alpha;
    const Scalar tn = -abs(t);
    const Scalar zeta = -(tn + Scalar(1)) / Scalar(2);
    const Scalar c = pi_v<Scalar> / cos(pi_v<Scalar> * a / Scalar(2));
    const Scalar k = tgamma((a + Scalar(1)) / Scalar(2)) * pow(zeta, (Scalar(1) - a) / Scalar(2)) /
                     (tgamma(a + Scalar(1)) * tgamma((Scalar(3) - a) / Scalar(2)));
    const Scalar I0 =
        c * (Scalar(1) / a - k * gauss_2f1((Scalar(1) - a) / Scalar(2), (Scalar(1) + a) / Scalar(2),
                                           (Scalar(3) - a) / Scalar(2), -zeta, opt));
    const Scalar I2 =
        c * a * (a + Scalar(1)) / Scalar(2) *
        ((a + Scalar(1)) / Scalar(2) * gauss_2f1(Scalar(-2), a + Scalar(2), (a + Scalar(1)) / Scalar(2), -zeta, opt) -
         k * gauss_2f1(-(Scalar(3) + a) / Scalar(2), (Scalar(5) + a) / Scalar(2), (Scalar(3) - a) / Scalar(2), -zeta,
                       opt));
    return {I0, I2};
}

/// v_j(x) for |x| > b; `body` uses the caller's numbering (before any swap).
template <typename Scalar>
Scalar surface_displacement(const ContactSolution<Scalar>& s, int body, Scalar x, const Hyp2f1Options& opt = {}) {
    using std::abs;
    using std::pow;
    if (!(abs(x) > s.b)) throw std::domain_error("surface_displacement: need |x| > b");
    const int j = s.problem.internal_body(body);
    const auto& mat = j == 1 ? s.problem.body1 : s.problem.body2;
    const Scalar t = x / s.b;
    const Scalar a1 = s.coeffs.alpha1;
    const auto comb = s.coeffs.combined(s.delta);

    const bool two_term = (s.branch == SolutionBranch::equal_closed_form ||
                           s.branch == SolutionBranch::jkr_equal_closed_form);
    if (two_term) {
        const auto [I0, I2] = equal_tilde_integrals(t, a1, opt);
        const Scalar phi2 = comb.size() > 1 ? comb(1) : Scalar(0);
        return material_theta(mat) * pow(s.b, Scalar(1) - a1) * (comb(0) * I0 + phi2 * I2);
    }
    const Scalar Aj = operator_scale(mat, s.b);
    Scalar v(0);
    for (int i = 0; i < comb.size(); ++i) v += comb(i) * integral_In(2 * i, t, mat.alpha, a1, opt);
    return Aj * v;
}

/// Chebyshev-node quadrature of v_j(x) with `order` nodes (cross-check only).
template <typename Scalar>
Scalar displacement_gauss_check(const ContactSolution<Scalar>& s, int body, Scalar x, int order) {
    using std::abs;
    using std::cos;
    using std::pow;
    using std::sin;
    if (!(abs(x) > s.b)) throw std::domain_error("displacement_gauss_check: need |x| > b");
    if (order < 1) throw std::invalid_argument("displacement_gauss_check: order must be >= 1");
    const int j = s.problem.internal_body(body);
    const auto& mat = j == 1 ? s.problem.body1 : s.problem.body2;
    const Scalar t = x / s.b;
    Scalar sum(0);
    for (int i = 1; i <= order; ++i) {
        const Scalar ang = Scalar(2 * i - 1) * pi_v<Scalar> / Scalar(2 * order);
        const Scalar xi = cos(ang);
        sum += s.pressure(s.b * xi) / pow(abs(t - xi), mat.alpha) * sin(ang);
    }
    return pi_v<Scalar> * operator_scale(mat, s.b) / Scalar(order) * sum;
}

}  // namespace gradcontact
