// Ground state Q of  Lap Q - Q + |x|^{-b} Q^{alpha+1} = 0  by shooting on Q(0),
// with the derived variational constants (Pohozaev residuals, sharp
// Gagliardo-Nirenberg constant, scattering/blow-up threshold products).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <vector>

#include "inls/dst.hpp"
#include "inls/exponents.hpp"
#include "inls/grid.hpp"
#include "inls/nlquad.hpp"

namespace inls {

struct GroundState {
    RadialField profile;  // real positive samples of Q
    real alpha = 0.0;     // parameters the profile was solved for
    real b = 0.0;
    real q0 = 0.0;        // Q(0) from the shooting bracket
    real mass = 0.0;      // ||Q||_L2^2
    real grad_sq = 0.0;   // ||grad Q||_L2^2
    real pot_int = 0.0;   // int |x|^{-b} Q^{alpha+2} dx
    real c_opt = 0.0;     // sharp Gagliardo-Nirenberg constant (ratio form)
    real threshold_grad = 0.0;   // ||grad Q|| ||Q||^{sigma_c}
    real threshold_energy = 0.0; // E0(Q) M(Q)^{sigma_c}
    std::array<real, 2> pohozaev_res{0.0, 0.0};
    real far_field_slope = 0.0;  // d log(rQ)/dr on the matching window
};

namespace detail {

// Dormand-Prince 5(4) step for v'' = v - r^{-(alpha+b)} v_+^{alpha+1}.
struct GroundStateOde {
    real alpha_b; // alpha + b
    real expo;    // alpha + 1

    std::array<real, 2> operator()(real r, const std::array<real, 2>& y) const {
        const real v = y[0];
        const real f = v > 0.0 ? std::pow(r, -alpha_b) * std::pow(v, expo) : 0.0;
        return {y[1], y[0] - f};
    }
};

struct OdePoint {
    real r;
    real v;
    real vp;
};

enum class ShotKind { undershoot, overshoot };

struct ShotResult {
    ShotKind kind;
    std::vector<OdePoint> trace; // filled only when requested
};

template <class Rhs>
inline ShotResult integrate_shot(const Rhs& rhs, real r0, std::array<real, 2> y0, real r_stop,
                                 bool keep_trace) {
    // Dormand-Prince coefficients.
    static constexpr real c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr real a21 = 1.0 / 5;
    static constexpr real a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr real a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr real a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
    static constexpr real a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr real b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr real e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const real rtol = 1e-12, atol = 1e-15;
    real r = r0;
    std::array<real, 2> y = y0;
    real h = 1e-4;
    ShotResult out{ShotKind::undershoot, {}};
    if (keep_trace) out.trace.push_back({r, y[0], y[1]});

    auto k1 = rhs(r, y);
    int rejected = 0;
    while (r < r_stop) {
        h = std::min(h, r_stop - r);
        std::array<real, 2> y2, y3, y4, y5, y6, y7;
        for (int i = 0; i < 2; ++i) y2[i] = y[i] + h * a21 * k1[i];
        auto k2 = rhs(r + c2 * h, y2);
        for (int i = 0; i < 2; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        auto k3 = rhs(r + c3 * h, y3);
        for (int i = 0; i < 2; ++i) y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        auto k4 = rhs(r + c4 * h, y4);
        for (int i = 0; i < 2; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        auto k5 = rhs(r + c5 * h, y5);
        for (int i = 0; i < 2; ++i)
            y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        auto k6 = rhs(r + h, y6);
        for (int i = 0; i < 2; ++i)
            y7[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        auto k7 = rhs(r + h, y7);

        real err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const real ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                 e7 * k7[i]);
            const real sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y7[i]));
            err = std::max(err, std::abs(ei) / sc);
        }
        if (err <= 1.0) {
            r += h;
            y = y7;
            k1 = k7;
            if (keep_trace) out.trace.push_back({r, y[0], y[1]});
            // overshoot: v crossed zero; undershoot: Q' = (v' - v/r)/r turned positive
            if (y[0] <= 0.0) {
                out.kind = ShotKind::overshoot;
                return out;
            }
            if (y[1] - y[0] / r > 0.0) {
                out.kind = ShotKind::undershoot;
                return out;
            }
            rejected = 0;
        } else if (++rejected > 60) {
            throw no_convergence("ground state: step control failed");
        }
        const real fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < 1e-14) throw no_convergence("ground state: step underflow");
    }
    // no event by r_stop: classify by the sign of the growing mode content
    out.kind = (y[1] + y[0] > 0.0) ? ShotKind::undershoot : ShotKind::overshoot;
    return out;
}

inline std::array<real, 2> series_start(real a, real alpha, real b, real r0) {
    // Q(r) ~ a + (a/6) r^2 - a^{alpha+1} r^{2-b} / ((2-b)(3-b)) near the origin.
    const real B = -std::pow(a, alpha + 1.0) / ((2.0 - b) * (3.0 - b));
    const real Q = a + a / 6.0 * r0 * r0 + B * std::pow(r0, 2.0 - b);
    const real Qp = a / 3.0 * r0 + (2.0 - b) * B * std::pow(r0, 1.0 - b);
    return {r0 * Q, Q + r0 * Qp}; // v, v'
}

} // namespace detail

inline GroundState solve_ground_state(const ModelParams& params,
                                      std::shared_ptr<const RadialGrid> grid, real tol = 1e-12) {
    params.validate();
    const real alpha = params.alpha, b = params.b;
    if (!intercritical(alpha, b))
        throw out_of_range_error("solve_ground_state: (alpha, b) not intercritical");

    const detail::GroundStateOde ode{alpha + b, alpha + 1.0};
    const real r0 = 1e-6;
    const real r_stop = 0.8 * grid->r_max();

    auto classify = [&](real a) {
        return detail::integrate_shot(ode, r0, detail::series_start(a, alpha, b, r0), r_stop, false)
            .kind;
    };

    // Bracket the separatrix in [1e-3, 1e3]: small amplitudes turn back up,
    // large ones cross zero.
    real lo = 1e-3, hi = 0.0, a = 1.0;
    if (classify(lo) == detail::ShotKind::overshoot)
        throw no_convergence("solve_ground_state: no undershoot at lower bracket");
    while (true) {
        if (classify(a) == detail::ShotKind::overshoot) {
            hi = a;
            break;
        }
        lo = a;
        a *= 2.0;
        if (a > 1e3) throw no_convergence("solve_ground_state: no overshoot below 1e3");
    }
    while (hi - lo > tol * std::max(1.0, lo)) {
        const real mid = 0.5 * (lo + hi);
        if (classify(mid) == detail::ShotKind::overshoot)
            hi = mid;
        else
            lo = mid;
    }
    const real q0 = 0.5 * (lo + hi);

    auto shot = detail::integrate_shot(ode, r0, detail::series_start(q0, alpha, b, r0), r_stop, true);
    const auto& trace = shot.trace;
    if (trace.size() < 8) throw no_convergence("solve_ground_state: degenerate trajectory");

    // Cubic Hermite interpolation of v on the stored trajectory.
    auto v_at = [&](real r) -> real {
        auto it = std::lower_bound(trace.begin(), trace.end(), r,
                                   [](const detail::OdePoint& p, real rr) { return p.r < rr; });
        if (it == trace.begin()) ++it;
        if (it == trace.end()) --it;
        const auto& p1 = *std::prev(it);
        const auto& p2 = *it;
        const real hseg = p2.r - p1.r;
        const real t = (r - p1.r) / hseg;
        const real h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
        const real h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        return h00 * p1.v + h10 * hseg * p1.vp + h01 * p2.v + h11 * hseg * p2.vp;
    };

    // Far-field slope of log v on a window where the decaying mode dominates.
    const real w0 = std::min(8.0, 0.5 * r_stop);
    const real w1 = w0 + 2.0;
    const real r_last = trace.back().r;
    real slope = 0.0;
    if (r_last > w1) {
        const real va = v_at(w0), vb = v_at(w1);
        if (va <= 0.0 || vb <= 0.0)
            throw no_convergence("solve_ground_state: far field not positive");
        slope = (std::log(vb) - std::log(va)) / (w1 - w0);
        if (std::abs(slope + 1.0) > 0.01)
            throw no_convergence("solve_ground_state: far-field slope off e^{-r} by >1%");
    }

    // Stitch the profile: interpolated trajectory up to r_match, pure e^{-r}
    // tail beyond (the shooting residue of the growing mode is cut off).
    const real r_match = std::min({0.55 * r_stop + 1.5, 11.0, r_last});
    const real v_match = v_at(r_match);
    std::vector<cplx> q(grid->n());
    for (std::size_t j = 0; j < grid->n(); ++j) {
        const real r = grid->node(j);
        const real v = (r <= r_match) ? v_at(r) : v_match * std::exp(-(r - r_match));
        q[j] = cplx{v / r, 0.0};
    }

    GroundState gs{RadialField(grid, std::move(q))};
    gs.alpha = alpha;
    gs.b = b;
    gs.q0 = q0;
    gs.far_field_slope = slope;
    gs.mass = mass(gs.profile);
    gs.grad_sq = gradient_norm_sq(gs.profile);
    gs.pot_int = pot_nl_integral(gs.profile, alpha, b);

    const real sc = sigma_c(alpha, b);
    const real c1 = (4.0 - 2.0 * b - alpha) / (3.0 * alpha + 2.0 * b);
    const real c2 = (4.0 - 2.0 * b - alpha) / (2.0 * (alpha + 2.0));
    gs.pohozaev_res = {std::abs(gs.mass - c1 * gs.grad_sq) / gs.mass,
                       std::abs(gs.mass - c2 * gs.pot_int) / gs.mass};
    gs.c_opt = gs.pot_int / (std::pow(gs.mass, (4.0 - 2.0 * b - alpha) / 4.0) *
                             std::pow(gs.grad_sq, (3.0 * alpha + 2.0 * b) / 4.0));
    gs.threshold_grad = std::sqrt(gs.grad_sq) * std::pow(gs.mass, sc / 2.0);
    const real e0 = 0.5 * gs.grad_sq - gs.pot_int / (alpha + 2.0);
    gs.threshold_energy = e0 * std::pow(gs.mass, sc);
    return gs;
}

struct COptPair {
    real ratio;
    real closed_form;
};

// The sharp constant from its defining ratio and from the Pohozaev closed form.
inline COptPair c_opt_two_ways(const GroundState& gs, const ModelParams& params) {
    const real alpha = params.alpha, b = params.b;
    const real closed = (2.0 * (alpha + 2.0) / (3.0 * alpha + 2.0 * b)) *
                        std::pow(gs.threshold_grad, -(3.0 * alpha - 4.0 + 2.0 * b) / 2.0);
    return {gs.c_opt, closed};
}

} // namespace inls
