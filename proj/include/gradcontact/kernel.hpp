#pragma once

// Spectral kernel coefficients for the two-power-kernel operator.
//
// Basis: weighted Gegenbauer polynomials C_n^{a1/2}(t) (1-t^2)^{(a1-1)/2}.
// Only even basis indices are retained (all profiles are even), so matrix
// entry (i, j) of L and R refers to basis indices (2i, 2j).

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradcontact/errors.hpp"
#include "gradcontact/specfun.hpp"

namespace gradcontact {

template <typename Scalar = double>
struct ExponentPair {
    Scalar alpha1;
    Scalar alpha2;

    ExponentPair(Scalar a1, Scalar a2) : alpha1(a1), alpha2(a2) {
        if (!(a1 > Scalar(0) && a1 < Scalar(1)) || !(a2 > Scalar(0) && a2 <= a1))
            throw std::invalid_argument("ExponentPair: require 0 < alpha2 <= alpha1 < 1");
    }

    Scalar gap() const { return alpha1 - alpha2; }
};

/// beta_n(alpha) = pi (alpha)_n / (n! cos(pi alpha / 2)), the eigenvalue of the
/// single power kernel on the n-th weighted Gegenbauer polynomial.
template <typename Scalar>
Scalar beta_n(Scalar alpha, int n) {
    using std::cos;
    return pi_v<Scalar> * pochhammer_ratio(alpha, Scalar(1), n) / cos(pi_v<Scalar> * alpha / Scalar(2));
}

/// Squared norm of C_n^{alpha/2} under the weight (1-t^2)^{(alpha-1)/2}.
template <typename Scalar>
Scalar h_n(Scalar alpha, int n) {
    using std::exp;
    using std::lgamma;
    using std::pow;
    const Scalar half = alpha / Scalar(2);
    const Scalar log_ratio = lgamma(Scalar(n) + alpha) - lgamma(Scalar(n) + Scalar(1)) - Scalar(2) * lgamma(half);
    return pi_v<Scalar> * pow(Scalar(2), Scalar(1) - alpha) * exp(log_ratio) / (Scalar(n) + half);
}

/// Delta_k = beta_k(alpha2) / h_k(alpha2), affine in k.
template <typename Scalar>
Scalar delta_k(Scalar alpha2, int k) {
    using std::sqrt;
    using std::tgamma;
    return tgamma(alpha2 / Scalar(2)) * tgamma((Scalar(1) - alpha2) / Scalar(2)) *
           (Scalar(k) + alpha2 / Scalar(2)) / sqrt(pi_v<Scalar>);
}

/// Gamma_0 = int_{-1}^{1} (1-t^2)^{(a1-1)/2} dt.
template <typename Scalar>
Scalar gamma0(Scalar alpha1) {
    using std::sqrt;
    return sqrt(pi_v<Scalar>) * gamma_ratio((alpha1 + Scalar(1)) / Scalar(2), alpha1 / Scalar(2) + Scalar(1));
}

/// H_k^{(n)} = int C_n^{a1/2} C_k^{a2/2} (1-t^2)^{(a1-1)/2} dt in product form.
/// Zero when k < n or k - n is odd.
template <typename Scalar>
Scalar H_coeff(int n, int k, const ExponentPair<Scalar>& pair) {
    using std::sqrt;
    if (k < n || (k - n) % 2 != 0) return Scalar(0);
    const Scalar a1 = pair.alpha1;
    const Scalar a2 = pair.alpha2;
    const int s = (k - n) / 2;
    const int t = (k + n) / 2;
    const Scalar lead = sqrt(pi_v<Scalar>) * gamma_ratio((a1 + Scalar(1)) / Scalar(2), a1 / Scalar(2) + Scalar(1));
    return lead * pochhammer_ratio(a1, Scalar(1), n) *
           pochhammer_ratio(a2 / Scalar(2), a1 / Scalar(2) + Scalar(1), t) *
           pochhammer_ratio((a2 - a1) / Scalar(2), Scalar(1), s);
}

/// Diagonal coefficient H_n^{(n)} in the equal-exponent limit.
template <typename Scalar>
Scalar H_diagonal_equal(int n, Scalar alpha) {
    using std::sqrt;
    return sqrt(pi_v<Scalar>) * gamma_ratio((alpha + Scalar(1)) / Scalar(2), alpha / Scalar(2)) *
           pochhammer_ratio(alpha, Scalar(1), n) / (alpha / Scalar(2) + Scalar(n));
}

struct KernelOptions {
    double tail_tol = 1e-13;
    long term_cap = 100000;
    double equal_threshold = 1e-8;  // alpha1 - alpha2 below this -> diagonal branch
};

/// Terms of the l-series for L_{nm} (basis indices n, m of equal parity),
/// starting at l = 0. The k-th returned value is
/// H_{h+2l}^{(lo)} H_{h+2l}^{(h)} Delta_{h+2l} with h = max(n, m), lo = min(n, m).
template <typename Scalar>
class LSeriesTerms {
public:
    LSeriesTerms(int n, int m, const ExponentPair<Scalar>& pair)
        : a1_(pair.alpha1), a2_(pair.alpha2), lo_(std::min(n, m)), hi_(std::max(n, m)) {
        term_ = H_coeff(lo_, hi_, pair) * H_coeff(hi_, hi_, pair) * delta_k(a2_, hi_);
    }

    Scalar value() const { return term_; }
    long index() const { return l_; }

    void advance() {
        const Scalar l = Scalar(l_);
        const Scalar lo = Scalar(lo_);
        const Scalar hi = Scalar(hi_);
        const Scalar two(2);
        Scalar r = ((a2_ + hi + lo) / two + l) * ((hi - lo + a2_ - a1_) / two + l) /
                   (((hi - lo) / two + Scalar(1) + l) * ((a1_ + hi + lo) / two + Scalar(1) + l));
        r *= ((a2_ + two * hi) / two + l) * ((a2_ - a1_) / two + l) /
             ((Scalar(1) + l) * ((a1_ + two * hi) / two + Scalar(1) + l));
        r *= (hi + two * l + two + a2_ / two) / (hi + two * l + a2_ / two);
        term_ *= r;
        ++l_;
    }

private:
    Scalar a1_, a2_;
    int lo_, hi_;
    long l_ = 0;
    Scalar term_;
};

template <typename Scalar>
struct LSeriesResult {
    Scalar value;
    long terms;
    Scalar error_estimate;  // relative
};

namespace detail {

/// Power-law tail sum_{j > l} t_j fitted from two consecutive terms.
template <typename Scalar>
Scalar power_tail(Scalar prev, Scalar cur, long l) {
    using std::log;
    using std::pow;
    if (cur == Scalar(0) || prev == Scalar(0) || (cur > 0) != (prev > 0)) return Scalar(0);
    const Scalar x = Scalar(l);
    const Scalar p = -log(cur / prev) / log(x / (x - Scalar(1)));
    if (!(p > Scalar(1))) return Scalar(0);
    const Scalar c = cur * pow(x, p);
    return c * pow(x + Scalar(0.5), Scalar(1) - p) / (p - Scalar(1));
}

}  // namespace detail

/// Sum the l-series for L_{nm}. Stops once the current term is below
/// tail_tol |S| and the tail-corrected sum agrees with its value at the
/// previous checkpoint to tail_tol.
template <typename Scalar>
LSeriesResult<Scalar> sum_l_series(int n, int m, const ExponentPair<Scalar>& pair, const KernelOptions& opt) {
    using std::abs;
    LSeriesTerms<Scalar> series(n, m, pair);
    Scalar sum(0);
    Scalar comp(0);
    Scalar prev_corrected(0);
    bool have_prev_checkpoint = false;
    long next_checkpoint = 32;
    const Scalar tol(opt.tail_tol);

    for (long l = 0; l < opt.term_cap; ++l) {
        const Scalar t = series.value();
        const Scalar s = sum + t;
        comp += (abs(sum) >= abs(t)) ? (sum - s) + t : (t - s) + sum;
        sum = s;
        if (l + 1 == next_checkpoint) {
            const Scalar total = sum + comp;
            series.advance();
            const Scalar next = series.value();
            const Scalar corrected = total + detail::power_tail(t, next, l + 1) + next;
            const Scalar err = have_prev_checkpoint ? abs(corrected - prev_corrected) : abs(corrected);
            if (abs(t) <= tol * abs(total) && err <= tol * abs(corrected))
                return {corrected, l + 1, abs(corrected) > 0 ? err / abs(corrected) : Scalar(0)};
            prev_corrected = corrected;
            have_prev_checkpoint = true;
            next_checkpoint = next_checkpoint * 5 / 4 + 16;
            continue;
        }
        series.advance();
    }
    throw ConvergenceError("L series (" + std::to_string(n) + "," + std::to_string(m) +
                           ") did not meet the tail criterion within " + std::to_string(opt.term_cap) + " terms");
}

template <typename Scalar = double>
struct KernelTables {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    ExponentPair<Scalar> exponents;
    int N;
    double tail_tol;
    bool equal_branch;
    Matrix H;      // H(i, j) = H_{2i}^{(2j)}
    Matrix L;
    Matrix R;
    Vector betas;  // beta_{2i}(alpha1)
    Vector hs;     // h_{2i}(alpha1)
    long max_terms_used = 0;
    Scalar max_error_estimate = 0;
};

/// Build H, L and R for the pair and truncation N (number of even indices).
template <typename Scalar>
KernelTables<Scalar> build_tables(const ExponentPair<Scalar>& pair, int N, const KernelOptions& opt = {}) {
    if (N < 1) throw std::invalid_argument("build_tables: N must be >= 1");
    if (!(opt.tail_tol > 0)) throw std::invalid_argument("build_tables: tail_tol must be > 0");
    using Matrix = typename KernelTables<Scalar>::Matrix;
    using Vector = typename KernelTables<Scalar>::Vector;

    KernelTables<Scalar> tab{pair, N, opt.tail_tol, pair.gap() < Scalar(opt.equal_threshold),
                             Matrix::Zero(N, N), Matrix::Zero(N, N), Matrix::Zero(N, N),
                             Vector(N), Vector(N)};
    const Scalar a1 = pair.alpha1;
    for (int i = 0; i < N; ++i) {
        tab.betas(i) = beta_n(a1, 2 * i);
        tab.hs(i) = h_n(a1, 2 * i);
    }

    if (tab.equal_branch) {
        for (int i = 0; i < N; ++i) {
            const Scalar hd = H_diagonal_equal(2 * i, a1);
            tab.H(i, i) = hd;
            tab.L(i, i) = hd * hd * delta_k(pair.alpha2, 2 * i);
            tab.R(i, i) = Scalar(1);
        }
        return tab;
    }

    for (int i = 0; i < N; ++i)
        for (int j = 0; j <= i; ++j) tab.H(i, j) = H_coeff(2 * j, 2 * i, pair);

    for (int i = 0; i < N; ++i) {
        for (int j = i; j < N; ++j) {
            const auto res = sum_l_series(2 * i, 2 * j, pair, opt);
            tab.L(i, j) = res.value;
            tab.L(j, i) = res.value;
            tab.max_terms_used = std::max(tab.max_terms_used, res.terms);
            tab.max_error_estimate = std::max(tab.max_error_estimate, res.error_estimate);
        }
    }
    for (int i = 0; i < N; ++i) tab.R.row(i) = tab.L.row(i) / (tab.betas(i) * tab.hs(i));
    return tab;
}

}  // namespace gradcontact
