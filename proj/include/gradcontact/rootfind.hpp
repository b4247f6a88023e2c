#pragma once

// Bracketed scalar root finding shared by the Hertz and JKR branches.

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gradcontact/errors.hpp"

namespace gradcontact {

template <typename Scalar>
struct Bracket {
    Scalar lo, hi;
    Scalar f_lo, f_hi;
};

/// Widen [lo, hi] geometrically (lo /= 2 and/or hi *= 2 per step) until f
/// changes sign. `grow_down = false` keeps lo fixed.
template <typename Scalar, typename F>
Bracket<Scalar> expand_bracket(F&& f, Scalar lo, Scalar hi, int max_doublings, bool grow_down = true) {
    Scalar flo = f(lo);
    Scalar fhi = f(hi);
    for (int k = 0; k < max_doublings && (flo > 0) == (fhi > 0) && flo != 0 && fhi != 0; ++k) {
        if (grow_down) {
            lo /= Scalar(2);
            flo = f(lo);
        }
        hi *= Scalar(2);
        fhi = f(hi);
    }
    if ((flo > 0) == (fhi > 0) && flo != 0 && fhi != 0)
        throw BracketError("no sign change in [" + std::to_string(double(lo)) + ", " + std::to_string(double(hi)) +
                           "] after " + std::to_string(max_doublings) + " doublings");
    return {lo, hi, flo, fhi};
}

/// Sample f at `points` log-spaced abscissae in [lo, hi] and return the
/// sub-brackets that contain a sign change.
template <typename Scalar, typename F>
std::vector<Bracket<Scalar>> scan_sign_changes(F&& f, Scalar lo, Scalar hi, int points) {
    using std::exp;
    using std::log;
    std::vector<Bracket<Scalar>> out;
    if (points < 2) return out;
    const Scalar llo = log(lo), lhi = log(hi);
    Scalar x_prev = lo;
    Scalar f_prev = f(lo);
    for (int i = 1; i < points; ++i) {
        const Scalar x = (i == points - 1) ? hi : exp(llo + (lhi - llo) * Scalar(i) / Scalar(points - 1));
        const Scalar fx = f(x);
        if (f_prev == Scalar(0) || (f_prev > 0) != (fx > 0)) out.push_back({x_prev, x, f_prev, fx});
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

template <typename Scalar>
struct RootResult {
    Scalar root;
    int iterations;
};

/// TOMS 748 on a sign-changing bracket, stopping at relative width rel_tol.
template <typename Scalar, typename F>
RootResult<Scalar> solve_bracketed(F&& f, const Bracket<Scalar>& br, double rel_tol, int max_iter = 200) {
    using std::abs;
    using std::min;
    if (br.f_lo == Scalar(0)) return {br.lo, 0};
    if (br.f_hi == Scalar(0)) return {br.hi, 0};
    auto tol = [rel_tol](Scalar a, Scalar b) { return abs(b - a) <= Scalar(rel_tol) * min(abs(a), abs(b)); };
    std::uintmax_t it = static_cast<std::uintmax_t>(max_iter);
    const auto r = boost::math::tools::toms748_solve(f, br.lo, br.hi, br.f_lo, br.f_hi, tol, it);
    if (it >= static_cast<std::uintmax_t>(max_iter) && !tol(r.first, r.second))
        throw ConvergenceError("root finder did not reach relative tolerance " + std::to_string(rel_tol));
    return {(r.first + r.second) / Scalar(2), static_cast<int>(it)};
}

}  // namespace gradcontact
