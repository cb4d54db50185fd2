// The concrete C^2 cutoff profiles used by the localized virial and
// coercivity machinery: phi_R equal to r^2 on [0, R] with flattened growth
// beyond, and the plateau cutoff chi_R.
//
// Both are assembled from the quintic smoothstep p(t) = t^3 (10 - 15 t + 6 t^2).
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "inls/grid.hpp"

namespace inls {

inline real smoothstep(real t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
inline real smoothstep_d(real t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
inline real smoothstep_dd(real t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

namespace detail {

// zeta(s) = phi''-profile in the similarity variable: 2 on [0,1],
// 2 p(2-s) on (1,2), 0 beyond.
inline real cut_zeta(real s) {
    if (s <= 1.0) return 2.0;
    if (s >= 2.0) return 0.0;
    return 2.0 * smoothstep(2.0 - s);
}

inline real cut_zeta_d(real s) {
    if (s <= 1.0 || s >= 2.0) return 0.0;
    return -2.0 * smoothstep_d(2.0 - s);
}

inline real cut_zeta_dd(real s) {
    if (s <= 1.0 || s >= 2.0) return 0.0;
    return 2.0 * smoothstep_dd(2.0 - s);
}

// P(t) = int_0^t p, P2(t) = int_0^t P for the closed-form antiderivatives.
inline real smoothstep_i(real t) {
    const real t4 = t * t * t * t;
    return t4 * (2.5 + t * (-3.0 + t));
}
inline real smoothstep_ii(real t) {
    const real t5 = t * t * t * t * t;
    return t5 * (0.5 + t * (-0.5 + t / 7.0));
}

// theta'(s) = int_0^s zeta.
inline real cut_theta_d(real s) {
    if (s <= 1.0) return 2.0 * s;
    if (s >= 2.0) return 3.0;
    return 3.0 - 2.0 * smoothstep_i(2.0 - s);
}

// theta(s) = int_0^s theta'.
inline real cut_theta(real s) {
    if (s <= 1.0) return s * s;
    static const real P2_1 = smoothstep_ii(1.0); // = 1/7
    if (s >= 2.0) return 1.0 + 3.0 - 2.0 * P2_1 + 3.0 * (s - 2.0);
    return 1.0 + 3.0 * (s - 1.0) - 2.0 * P2_1 + 2.0 * smoothstep_ii(2.0 - s);
}

} // namespace detail

enum class CutoffKind { phi_R, chi_R };

// Samples of the cutoff and its derivatives on the grid nodes.
struct CutoffProfile {
    CutoffKind kind;
    real R;
    std::shared_ptr<const RadialGrid> grid;
    std::vector<real> value;      // phi_R or chi_R
    std::vector<real> d1;         // radial first derivative
    std::vector<real> d2;         // radial second derivative
    std::vector<real> laplacian;  // d2 + 2 d1 / r
    std::vector<real> bilaplacian;// Lap^2 (phi_R only; zero for chi_R)
};

inline CutoffProfile build_cutoff(CutoffKind kind, real R,
                                  std::shared_ptr<const RadialGrid> grid) {
    if (!(R > 0.0)) throw std::invalid_argument("build_cutoff: R must be positive");
    const std::size_t n = grid->n();
    CutoffProfile c{kind, R, grid, std::vector<real>(n), std::vector<real>(n),
                    std::vector<real>(n), std::vector<real>(n), std::vector<real>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const real r = grid->node(j);
        const real s = r / R;
        if (kind == CutoffKind::phi_R) {
            c.value[j] = R * R * detail::cut_theta(s);
            c.d1[j] = R * detail::cut_theta_d(s);
            c.d2[j] = detail::cut_zeta(s);
            c.laplacian[j] = c.d2[j] + 2.0 * c.d1[j] / r;
            // Lap^2 phi_R = (zeta'' + 4 zeta'/s) / R^2 in the similarity variable
            c.bilaplacian[j] =
                (detail::cut_zeta_dd(s) + 4.0 * detail::cut_zeta_d(s) / s) / (R * R);
        } else {
            if (r <= 0.5 * R) {
                c.value[j] = 1.0;
                c.d1[j] = c.d2[j] = 0.0;
            } else if (r >= R) {
                c.value[j] = c.d1[j] = c.d2[j] = 0.0;
            } else {
                const real t = 2.0 - 2.0 * r / R;
                c.value[j] = smoothstep(t);
                c.d1[j] = -2.0 / R * smoothstep_d(t);
                c.d2[j] = 4.0 / (R * R) * smoothstep_dd(t);
            }
            c.laplacian[j] = c.d2[j] + 2.0 * c.d1[j] / r;
            c.bilaplacian[j] = 0.0;
        }
    }
    return c;
}

// Pointwise product chi * u.
inline RadialField apply_cutoff(const CutoffProfile& chi, const RadialField& u) {
    if (!u.grid().same_as(*chi.grid))
        throw std::invalid_argument("apply_cutoff: grid mismatch");
    RadialField out = u;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= chi.value[j];
    return out;
}

} // namespace inls
