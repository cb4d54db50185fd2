// Quadrature of the singular nonlinear integral int |x|^{-b} |u|^{alpha+2} dx.
//
// The integrand 4 pi r^{2-b} |u|^{alpha+2} has an r^{2-b} cusp at the origin,
// where the plain trapezoid sum carries a zeta(b-2) h^{3-b} endpoint defect.
// Subtracting that term (Navot's expansion, with |u(0)| extrapolated from the
// first nodes) restores the accuracy the Pohozaev checks require at the
// production resolutions. For b = 0 the defect vanishes identically.
#pragma once

#include <cmath>

#include "inls/grid.hpp"

namespace inls {

// zeta(-lam) for lam in (1, 2], via the functional equation and a short
// Euler-Maclaurin tail for zeta(1 + lam).
inline real zeta_neg(real lam) {
    if (lam >= 2.0) return 0.0; // zeta(-2) = 0
    const real s = 1.0 + lam;   // in (2, 3)
    real acc = 0.0;
    const int N = 40;
    for (int k = 1; k <= N; ++k) acc += std::pow(static_cast<real>(k), -s);
    const real Nr = static_cast<real>(N);
    acc += std::pow(Nr, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Nr, -s) +
           s * std::pow(Nr, -s - 1.0) / 12.0;
    return std::pow(2.0, -lam) * std::pow(pi, -lam - 1.0) * std::sin(-pi * lam / 2.0) *
           std::tgamma(s) * acc;
}

// u(0) from the first three nodes assuming u = u0 + A r^2 + B r^{2-b},
// the local behaviour of regular radial profiles of this equation.
inline cplx extrapolate_origin(const RadialField& u, real b) {
    if (u.size() < 3) return u[0];
    const cplx u1 = u[0], u2 = u[1], u3 = u[2];
    if (b < 1e-9) return (4.0 * u1 - u2) / 3.0;
    const real p = std::pow(2.0, 2.0 - b);
    const real q = std::pow(3.0, 2.0 - b);
    // Cramer solve of [[1,1,1],[1,4,p],[1,9,q]] for the constant coefficient.
    const real det = (4.0 * q - 9.0 * p) - (q - 9.0) + (p - 4.0);
    if (std::abs(det) < 1e-12) return (4.0 * u1 - u2) / 3.0;
    return (u1 * (4.0 * q - 9.0 * p) - u2 * (q - 9.0) + u3 * (p - 4.0)) / det;
}

// Grid-mollified inhomogeneity weight used by the time integrator:
//   w(r) = (r^2 + rho^2)^{-b/2},  rho = a few grid spacings.
// The raw r^{-b} kinks the field at the first nodes every phase step and
// degrades the splitting order; smoothing at the grid scale restores it while
// converging to the exact weight under refinement. Quadrature diagnostics
// keep the exact weight.
inline real evolution_weight(real r, real b, real rho) {
    if (rho <= 0.0) return std::pow(r, -b);
    return std::pow(r * r + rho * rho, -b / 2.0);
}

inline real evolution_weight_deriv(real r, real b, real rho) {
    if (rho <= 0.0) return -b * std::pow(r, -b - 1.0);
    return -b * r * std::pow(r * r + rho * rho, -b / 2.0 - 1.0);
}

// int w(r) |u|^{alpha+2} dx for the mollified weight (smooth integrand).
inline real pot_nl_integral_mollified(const RadialField& u, real alpha, real b, real rho) {
    const auto& g = u.grid();
    const auto& w = g.weights();
    const auto& r = g.nodes();
    real s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        s += w[j] * evolution_weight(r[j], b, rho) * std::pow(std::abs(u[j]), alpha + 2.0);
    return s;
}

// int |x|^{-b} |u|^{alpha+2} dx with the origin-cusp correction.
inline real pot_nl_integral(const RadialField& u, real alpha, real b) {
    const auto& g = u.grid();
    const auto& r = g.nodes();
    const real h = g.dr();
    const real ex = alpha + 2.0;
    real s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        s += std::pow(r[j], 2.0 - b) * std::pow(std::abs(u[j]), ex);
    s *= 4.0 * pi * h;
    if (b > 1e-9) {
        const real u0 = std::abs(extrapolate_origin(u, b));
        s -= zeta_neg(2.0 - b) * 4.0 * pi * std::pow(u0, ex) * std::pow(h, 3.0 - b);
    }
    return s;
}

} // namespace inls
