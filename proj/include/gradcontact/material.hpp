#pragma once

#include <cmath>
#include <stdexcept>

#include "gradcontact/specfun.hpp"

namespace gradcontact {

/// Half-plane whose Young modulus grows with depth as E(y) = e |y|^alpha.
template <typename Scalar = double>
struct MaterialHalfPlane {
    Scalar e;      // modulus factor
    Scalar alpha;  // depth exponent, 0 < alpha < 1
    Scalar nu;     // Poisson ratio, 0 < nu <= 1/2

    void validate() const {
        if (!(e > Scalar(0))) throw std::invalid_argument("material: e must be > 0");
        if (!(alpha > Scalar(0) && alpha < Scalar(1))) throw std::invalid_argument("material: alpha must be in (0, 1)");
        if (!(nu > Scalar(0) && nu <= Scalar(0.5))) throw std::invalid_argument("material: nu must be in (0, 0.5]");
        if (!(q_squared() > Scalar(0))) throw std::invalid_argument("material: q^2 must be > 0");
    }

    Scalar q_squared() const { return (Scalar(1) + alpha) * (Scalar(1) - alpha * nu / (Scalar(1) - nu)); }
};

template <typename Scalar>
Scalar material_q(const MaterialHalfPlane<Scalar>& body) {
    using std::sqrt;
    return sqrt(body.q_squared());
}

template <typename Scalar>
Scalar material_C(const MaterialHalfPlane<Scalar>& body) {
    using std::lgamma;
    using std::exp;
    using std::pow;
    const Scalar a = body.alpha;
    const Scalar q = material_q(body);
    const Scalar three_halves(1.5);
    const Scalar log_g = lgamma(a / Scalar(2) - q / Scalar(2) + three_halves) +
                         lgamma(a / Scalar(2) + q / Scalar(2) + three_halves) - lgamma(a + Scalar(2));
    return pow(Scalar(2), a + Scalar(1)) / pi_v<Scalar> * exp(log_g);
}

/// Compliance theta in v(x) = (theta / alpha) int p(xi) |x - xi|^{-alpha} dxi.
template <typename Scalar>
Scalar material_theta(const MaterialHalfPlane<Scalar>& body) {
    using std::sin;
    const Scalar q = material_q(body);
    return material_C(body) * (Scalar(1) - body.nu * body.nu) * q * sin(pi_v<Scalar> * q / Scalar(2)) /
           ((body.alpha + Scalar(1)) * body.e);
}

/// Homogeneous-limit compliance 2(1 - nu^2) / (pi E).
template <typename Scalar>
Scalar isotropic_theta(Scalar E, Scalar nu) {
    return Scalar(2) * (Scalar(1) - nu * nu) / (pi_v<Scalar> * E);
}

}  // namespace gradcontact
