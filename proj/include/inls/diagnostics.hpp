// Post-run verification of the virial identity, mass evacuation from balls,
// and the Morawetz-type space-time bounds.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "inls/evolution.hpp"

namespace inls {

struct VirialReport {
    real max_dev_variance = 0.0; // |d2/dt2 variance - 8K| relative
    real max_dev_action = 0.0;   // |d/dt M_phi - assembled RHS| relative
    real abs_floor = 0.0;        // scale used to regularize the relative error
    std::size_t points = 0;
};

// Compare centered finite differences of the recorded variance and virial
// action against the identity right-hand sides, over records in [t0, t1].
inline VirialReport virial_verify(const TimeSeries& series, real t0, real t1) {
    std::vector<const FunctionalRecord*> rs;
    for (const auto& r : series.records)
        if (r.t >= t0 - 1e-12 && r.t <= t1 + 1e-12) rs.push_back(&r);
    if (rs.size() < 3) throw std::invalid_argument("virial_verify: fewer than 3 records");
    const real h = rs[1]->t - rs[0]->t;
    for (std::size_t i = 1; i < rs.size(); ++i)
        if (std::abs(rs[i]->t - rs[i - 1]->t - h) > 1e-9 * std::max(h, 1.0))
            throw std::invalid_argument("virial_verify: non-uniform record cadence");

    // Scale floor: typical magnitude of 8K over the window.
    real scale = 0.0;
    for (auto* r : rs) scale = std::max(scale, std::abs(8.0 * r->K));
    scale = std::max(scale, 1e-12);

    VirialReport rep;
    rep.abs_floor = scale;
    rep.points = rs.size();
    for (std::size_t i = 1; i + 1 < rs.size(); ++i) {
        const real d2v =
            (rs[i + 1]->variance - 2.0 * rs[i]->variance + rs[i - 1]->variance) / (h * h);
        const real dev = std::abs(d2v - 8.0 * rs[i]->K) / scale;
        rep.max_dev_variance = std::max(rep.max_dev_variance, dev);
        const real dM = (rs[i + 1]->virial_action - rs[i - 1]->virial_action) / (2.0 * h);
        const real devM = std::abs(dM - rs[i]->virial_rhs) /
                          std::max(scale, std::abs(rs[i]->virial_rhs));
        rep.max_dev_action = std::max(rep.max_dev_action, devM);
    }
    return rep;
}

struct EvacuationEntry {
    real radius;
    real initial_mass;
    real running_min;
    real t_of_min;
    std::vector<real> min_times; // times achieving new running minima
};

// The numerical shadow of mass evacuation: for each configured ball radius,
// the running minimum of the ball mass and where it was attained.
inline std::vector<EvacuationEntry> evacuation_probe(const TimeSeries& series,
                                                     const std::vector<real>& radii) {
    if (series.records.empty()) throw std::invalid_argument("evacuation_probe: empty series");
    std::vector<EvacuationEntry> out;
    for (real R : radii) {
        std::size_t idx = series.ball_radii.size();
        for (std::size_t i = 0; i < series.ball_radii.size(); ++i)
            if (std::abs(series.ball_radii[i] - R) < 1e-9) idx = i;
        if (idx == series.ball_radii.size())
            throw std::invalid_argument("evacuation_probe: radius not recorded");
        EvacuationEntry e{R, series.records.front().ball_mass[idx], infinity, 0.0, {}};
        for (const auto& rec : series.records) {
            const real bm = rec.ball_mass[idx];
            if (bm < e.running_min) {
                e.running_min = bm;
                e.t_of_min = rec.t;
                e.min_times.push_back(rec.t);
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

struct MorawetzReport {
    real R = 0.0, T = 0.0;
    real avg_pot_ball = 0.0;      // (1/T) int_0^T int_{r<=R/2} |x|^{-b}|u|^{a+2}
    real avg_pow_ball = 0.0;      // same with |u|^{alpha+2+b}
    real l4_spacetime = 0.0;      // int_0^T int |u|^4
    real classical_lhs = 0.0;     // int_0^T [ -int dV/dr |u|^2 + amp int |x|^{-1}|u|^{a+2} ]
    real rhs_shape = 0.0;         // R/T + R^{-2} + R^{-alpha-b}
    real sup_morawetz_action = 0.0; // sup_t |M_{|x|}(t)|
    real l4_comparator = 0.0;     // ||u||^3_{Loo L2} sup ||grad u||
};

// Space-time integrals from the stored snapshots (trapezoid in time).
inline MorawetzReport morawetz_report(const TimeSeries& series, real R, real T,
                                      const Potential& V, const ModelParams& params,
                                      real nl_amplitude = 1.0) {
    if (series.snapshots.empty()) throw std::invalid_argument("morawetz_report: empty series");
    const real alpha = params.alpha, b = params.b;
    MorawetzReport rep;
    rep.R = R;
    rep.T = T;
    rep.rhs_shape = R / T + std::pow(R, -2.0) + std::pow(R, -alpha - b);

    const auto& grid = series.snapshots.front().second.grid();
    const auto Vd = V.sample_deriv(grid);
    const auto& r = grid.nodes();
    const auto& w = grid.weights();

    real prev_t = 0.0;
    real prev_i1 = 0.0, prev_i2 = 0.0, prev_i4 = 0.0, prev_icl = 0.0;
    bool first = true;
    for (const auto& [t, u] : series.snapshots) {
        if (t > T + 1e-12) break;
        real i1 = 0.0, i2 = 0.0, i4 = 0.0, icl = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const real amp = std::abs(u[j]);
            const real a2 = amp * amp;
            if (r[j] <= 0.5 * R) {
                i1 += w[j] * std::pow(r[j], -b) * std::pow(amp, alpha + 2.0);
                i2 += w[j] * std::pow(amp, alpha + 2.0 + b);
            }
            i4 += w[j] * a2 * a2;
            icl += w[j] * (nl_amplitude * std::pow(amp, alpha + 2.0) / r[j] - Vd[j] * a2);
        }
        rep.sup_morawetz_action =
            std::max(rep.sup_morawetz_action, std::abs(virial_action_morawetz_flow(u)));
        if (!first) {
            const real hdt = t - prev_t;
            rep.avg_pot_ball += 0.5 * hdt * (i1 + prev_i1);
            rep.avg_pow_ball += 0.5 * hdt * (i2 + prev_i2);
            rep.l4_spacetime += 0.5 * hdt * (i4 + prev_i4);
            rep.classical_lhs += 0.5 * hdt * (icl + prev_icl);
        }
        prev_t = t;
        prev_i1 = i1;
        prev_i2 = i2;
        prev_i4 = i4;
        prev_icl = icl;
        first = false;
    }
    rep.avg_pot_ball /= T;
    rep.avg_pow_ball /= T;

    real sup_grad = 0.0, sup_mass = 0.0;
    for (const auto& rec : series.records) {
        if (rec.t > T + 1e-12) break;
        sup_grad = std::max(sup_grad, std::sqrt(std::max(rec.grad_sq, 0.0)));
        sup_mass = std::max(sup_mass, rec.mass);
    }
    rep.l4_comparator = std::pow(std::sqrt(sup_mass), 3.0) * sup_grad;
    return rep;
}

} // namespace inls
