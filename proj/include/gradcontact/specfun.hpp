#pragma once

// Special functions shared by every other module: rising factorials, gamma
// ratios, Gegenbauer polynomials and the Gauss hypergeometric function.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradcontact/errors.hpp"

namespace gradcontact {

template <typename Scalar>
inline constexpr Scalar pi_v = std::numbers::pi_v<Scalar>;

/// Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1.
template <typename Scalar>
Scalar pochhammer(Scalar a, int n) {
    Scalar r(1);
    for (int i = 0; i < n; ++i) r *= a + Scalar(i);
    return r;
}

/// (a)_n / (b)_n evaluated factor by factor, so it never overflows for the
/// index ranges used here and stays finite when a -> b.
template <typename Scalar>
Scalar pochhammer_ratio(Scalar a, Scalar b, int n) {
    Scalar r(1);
    for (int i = 0; i < n; ++i) r *= (a + Scalar(i)) / (b + Scalar(i));
    return r;
}

/// Sign of Gamma(x) for real non-pole x.
template <typename Scalar>
int gamma_sign(Scalar x) {
    if (x > Scalar(0)) return 1;
    const long f = static_cast<long>(std::floor(x));
    return (f % 2 == 0) ? 1 : -1;
}

/// Gamma(a) / Gamma(b) as a log-gamma difference.
template <typename Scalar>
Scalar gamma_ratio(Scalar a, Scalar b) {
    using std::exp;
    using std::lgamma;
    return Scalar(gamma_sign(a) * gamma_sign(b)) * exp(lgamma(a) - lgamma(b));
}

/// C_n^lambda(t) by the three-term recurrence.
template <typename Scalar>
Scalar gegenbauer(int n, Scalar lambda, Scalar t) {
    if (n == 0) return Scalar(1);
    Scalar prev(1);
    Scalar cur = Scalar(2) * lambda * t;
    for (int k = 2; k <= n; ++k) {
        const Scalar next = (Scalar(2) * (Scalar(k) + lambda - Scalar(1)) * t * cur -
                             (Scalar(k) + Scalar(2) * lambda - Scalar(2)) * prev) /
                            Scalar(k);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// C_0^lambda(t), ..., C_nmax^lambda(t).
template <typename Scalar>
std::vector<Scalar> gegenbauer_sequence(int nmax, Scalar lambda, Scalar t) {
    std::vector<Scalar> c(static_cast<std::size_t>(nmax) + 1);
    c[0] = Scalar(1);
    if (nmax >= 1) c[1] = Scalar(2) * lambda * t;
    for (int k = 2; k <= nmax; ++k) {
        c[k] = (Scalar(2) * (Scalar(k) + lambda - Scalar(1)) * t * c[k - 1] -
                (Scalar(k) + Scalar(2) * lambda - Scalar(2)) * c[k - 2]) /
               Scalar(k);
    }
    return c;
}

/// C_n^lambda(1) = (2 lambda)_n / n!.
template <typename Scalar>
Scalar gegenbauer_at_one(int n, Scalar lambda) {
    return pochhammer_ratio(Scalar(2) * lambda, Scalar(1), n);
}

template <typename Scalar>
struct HypergeometricArgs {
    Scalar a;
    Scalar b;
    Scalar c;
    Scalar z;
};

struct Hyp2f1Options {
    double tolerance = 1e-15;   // term-ratio stopping tolerance
    int max_terms = 10000;
    double direct_radius = 0.5; // sum directly for |z| <= direct_radius
    bool allow_transform = true;
};

namespace detail {

/// Returns m when x is (numerically) the nonpositive integer -m.
template <typename Scalar>
std::optional<int> nonpositive_integer(Scalar x) {
    using std::abs;
    using std::round;
    const Scalar r = round(x);
    if (r <= Scalar(0) && abs(x - r) <= Scalar(1e-12) * (Scalar(1) + abs(x)))
        return static_cast<int>(-r);
    return std::nullopt;
}

template <typename Scalar>
Scalar hyp2f1_terminating(Scalar a, Scalar b, Scalar c, Scalar z, int terms) {
    Scalar term(1);
    Scalar sum(1);
    for (int k = 0; k < terms; ++k) {
        term *= (a + Scalar(k)) * (b + Scalar(k)) / ((c + Scalar(k)) * Scalar(k + 1)) * z;
        sum += term;
    }
    return sum;
}

template <typename Scalar>
Scalar hyp2f1_series(Scalar a, Scalar b, Scalar c, Scalar z, const Hyp2f1Options& opt) {
    using std::abs;
    Scalar term(1);
    Scalar sum(1);
    Scalar comp(0);  // Neumaier compensation
    int small_run = 0;
    for (int k = 0; k < opt.max_terms; ++k) {
        term *= (a + Scalar(k)) * (b + Scalar(k)) / ((c + Scalar(k)) * Scalar(k + 1)) * z;
        const Scalar t = sum + term;
        if (abs(sum) >= abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        if (abs(term) <= Scalar(opt.tolerance) * abs(sum + comp)) {
            if (++small_run >= 2) return sum + comp;
        } else {
            small_run = 0;
        }
    }
    throw ConvergenceError("gauss_2f1: series did not converge within " +
                           std::to_string(opt.max_terms) + " terms");
}

}  // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments.
///
/// Terminating series are summed exactly for any z. Otherwise the series is
/// summed directly for |z| <= direct_radius (or when transforms are disabled)
/// and for 0 < z < 1; for z < -direct_radius the Pfaff transformation
/// F(a,b;c;z) = (1-z)^{-b} F(b, c-a; c; z/(z-1)) maps the argument into
/// (0, 1/2] (or (1/2, 1) when z < -1).
template <typename Scalar>
Scalar gauss_2f1(const HypergeometricArgs<Scalar>& args, const Hyp2f1Options& opt = {}) {
    using std::abs;
    using std::pow;
    const auto [a, b, c, z] = args;

    const auto ma = detail::nonpositive_integer(a);
    const auto mb = detail::nonpositive_integer(b);
    const auto mc = detail::nonpositive_integer(c);
    std::optional<int> m;
    if (ma && mb)
        m = std::min(*ma, *mb);
    else if (ma)
        m = ma;
    else if (mb)
        m = mb;

    if (m) {
        if (mc && *mc < *m)
            throw std::domain_error("gauss_2f1: c is a pole before the series terminates");
        return detail::hyp2f1_terminating(a, b, c, z, *m);
    }
    if (mc) throw std::domain_error("gauss_2f1: c is a nonpositive integer");
    if (z == Scalar(0)) return Scalar(1);

    if (z == Scalar(1)) {
        if (c - a - b <= Scalar(0))
            throw std::domain_error("gauss_2f1: divergent at z = 1 (c - a - b <= 0)");
        return gamma_ratio(c, c - a) * gamma_ratio(c - a - b, c - b);
    }
    if (z > Scalar(1)) throw std::domain_error("gauss_2f1: z > 1 is outside the real branch");

    const bool direct = !opt.allow_transform || abs(z) <= Scalar(opt.direct_radius) || z > Scalar(0);
    if (direct) {
        if (abs(z) >= Scalar(1)) throw std::domain_error("gauss_2f1: |z| >= 1 without transformation");
        return detail::hyp2f1_series(a, b, c, z, opt);
    }

    // Pfaff: pick the variant whose transformed series terminates, if any.
    const Scalar w = z / (z - Scalar(1));
    if (detail::nonpositive_integer(c - b))
        return pow(Scalar(1) - z, -a) * gauss_2f1(HypergeometricArgs<Scalar>{a, c - b, c, w}, opt);
    return pow(Scalar(1) - z, -b) * gauss_2f1(HypergeometricArgs<Scalar>{b, c - a, c, w}, opt);
}

template <typename Scalar>
Scalar gauss_2f1(Scalar a, Scalar b, Scalar c, Scalar z, const Hyp2f1Options& opt = {}) {
    return gauss_2f1(HypergeometricArgs<Scalar>{a, b, c, z}, opt);
}

}  // namespace gradcontact
