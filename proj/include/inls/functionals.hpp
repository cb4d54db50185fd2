// Scalar functionals of a radial field: mass, energy, virial and blow-up
// functionals, localized virial action, ball masses, and the coercivity probe.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "inls/cutoff.hpp"
#include "inls/dst.hpp"
#include "inls/grid.hpp"
#include "inls/ground_state.hpp"
#include "inls/nlquad.hpp"
#include "inls/potential.hpp"

namespace inls {

// One row of the diagnostic time series. The virial functional K is recorded
// with the sign of the active nonlinearity, so that d^2/dt^2 ||x u||^2 = 8 K
// holds for focusing, defocusing and linear runs alike; for the focusing
// equation it reduces to the blow-up functional of the dichotomy analysis.
struct FunctionalRecord {
    real t = 0.0;
    real mass = 0.0;
    real energy = 0.0;
    real grad_sq = 0.0;
    real lambda_sq = 0.0;   // ||grad u||^2 + int V |u|^2
    real pot_nl = 0.0;      // int |x|^{-b} |u|^{alpha+2} dx
    real pot_V = 0.0;       // int V |u|^2 dx
    real K = 0.0;
    real H = 0.0;
    real variance = 0.0;    // int |x|^2 |u|^2 dx
    real virial_action = 0.0;   // M_phi for the active weight
    real virial_rhs = 0.0;      // assembled d/dt M_phi from the virial identity
    real rad_sup = 0.0;         // sup_j r_j |u_j|
    std::vector<real> ball_mass;   // int_{|x|<=R_i} |u|^2, per configured radius
    std::vector<real> ball_pot_nl; // int_{|x|<=R_i} |x|^{-b}|u|^{alpha+2}
    real lp_norm_a = 0.0;   // ||u||_{L^{l}} at the lower admissible probe l
    real lp_norm_b = 0.0;   // ||u||_{L^{l}} at the upper admissible probe l
    real l4_norm4 = 0.0;    // int |u|^4 dx
    real mora_classical = 0.0; // -int dV/dr |u|^2 + amp * int |x|^{-1}|u|^{alpha+2}
};

// Localized virial action M_phi = 2 int phi'(r) Im(conj(u) d_r u) dx.
inline real virial_action_samples(const RadialField& u, std::span<const real> phi_d1) {
    const auto& g = u.grid();
    if (phi_d1.size() != g.n()) throw std::invalid_argument("virial_action: length mismatch");
    const auto du = radial_derivative(u);
    const auto& w = g.weights();
    real s = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j)
        s += w[j] * phi_d1[j] * std::imag(std::conj(u[j]) * du[j]);
    return 2.0 * s;
}

inline real virial_action(const RadialField& u, const CutoffProfile& phi) {
    return virial_action_samples(u, phi.d1);
}

// M_{|x|^2}: weight phi = r^2, phi' = 2r.
inline real virial_action_variance_flow(const RadialField& u) {
    const auto& g = u.grid();
    std::vector<real> d1(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) d1[j] = 2.0 * g.node(j);
    return virial_action_samples(u, d1);
}

// M_{|x|}: weight phi = r, phi' = 1.
inline real virial_action_morawetz_flow(const RadialField& u) {
    std::vector<real> d1(u.grid().n(), 1.0);
    return virial_action_samples(u, d1);
}

struct RecordOptions {
    std::vector<real> ball_radii{1.0, 2.0, 5.0, 10.0};
    const CutoffProfile* virial_weight = nullptr; // default |x|^2
    real nl_amplitude = 1.0;                      // 0 switches the nonlinearity off
    real nl_moll_radius = 0.0; // mollification radius of the evolution weight
};

// Assemble every recorded functional of u against the potential V.
inline FunctionalRecord record(const RadialField& u, const Potential& V,
                               const ModelParams& params, real t,
                               const RecordOptions& opt = {}) {
    const auto& g = u.grid();
    const std::size_t n = g.n();
    const auto& r = g.nodes();
    const auto& w = g.weights();
    const real alpha = params.alpha, b = params.b;
    const real kg = static_cast<real>(params.kappa) * opt.nl_amplitude;
    const real cnl = (3.0 * alpha + 2.0 * b) / (2.0 * (alpha + 2.0));

    const auto Vs = V.sample(g);
    const auto dVs = V.sample_deriv(g);
    const auto du = radial_derivative(u);

    FunctionalRecord rec;
    rec.t = t;
    rec.grad_sq = gradient_norm_sq(u);
    rec.pot_nl = pot_nl_integral(u, alpha, b);

    real m = 0.0, pv = 0.0, var = 0.0, rdv = 0.0, l4 = 0.0, mora_nl = 0.0;
    real sup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const real a2 = std::norm(u[j]);
        m += w[j] * a2;
        pv += w[j] * Vs[j] * a2;
        var += w[j] * r[j] * r[j] * a2;
        rdv += w[j] * r[j] * dVs[j] * a2;
        l4 += w[j] * a2 * a2;
        mora_nl += w[j] * (opt.nl_amplitude * std::pow(std::abs(u[j]), alpha + 2.0) / r[j] -
                           dVs[j] * a2);
        sup = std::max(sup, r[j] * std::abs(u[j]));
    }
    rec.mass = m;
    rec.pot_V = pv;
    rec.variance = var;
    rec.l4_norm4 = l4;
    rec.rad_sup = sup;
    rec.lambda_sq = rec.grad_sq + pv;
    // The energy uses the weight the integrator actually applies, so that the
    // recorded drift measures pure splitting error; H, K and pot_nl keep the
    // exact |x|^{-b} quadrature.
    const real rho = opt.nl_moll_radius;
    const real pot_evol =
        rho > 0.0 ? pot_nl_integral_mollified(u, alpha, b, rho) : rec.pot_nl;
    rec.energy = 0.5 * rec.grad_sq + 0.5 * pv + kg * pot_evol / (alpha + 2.0);
    rec.H = rec.grad_sq - cnl * rec.pot_nl;
    rec.K = rec.grad_sq - 0.5 * rdv + kg * cnl * rec.pot_nl;
    rec.mora_classical = mora_nl;

    rec.ball_mass.resize(opt.ball_radii.size(), 0.0);
    rec.ball_pot_nl.resize(opt.ball_radii.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const real a2 = std::norm(u[j]);
        const real pnl = w[j] * std::pow(r[j], -b) * std::pow(std::abs(u[j]), alpha + 2.0);
        for (std::size_t i = 0; i < opt.ball_radii.size(); ++i) {
            if (r[j] <= opt.ball_radii[i]) {
                rec.ball_mass[i] += w[j] * a2;
                rec.ball_pot_nl[i] += pnl;
            }
        }
    }

    // Two L^l probes inside the admissible window (3a/(2-b), 6), used as
    // scattering proxies; fall back to fixed exponents outside that regime.
    real la = 2.0 + alpha, lb = 4.0;
    const real lo_l = 3.0 * alpha / (2.0 - b);
    if (lo_l < 6.0) {
        la = lo_l + (6.0 - lo_l) / 3.0;
        lb = lo_l + 2.0 * (6.0 - lo_l) / 3.0;
    }
    auto lp = [&](real p) {
        real s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += w[j] * std::pow(std::abs(u[j]), p);
        return std::pow(s, 1.0 / p);
    };
    rec.lp_norm_a = lp(la);
    rec.lp_norm_b = lp(lb);

    // Virial action and the identity right-hand side for the active weight,
    // assembled with the same nonlinearity weight the integrator applies.
    if (opt.virial_weight) {
        const auto& phi = *opt.virial_weight;
        rec.virial_action = virial_action(u, phi);
        real rhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const real a2 = std::norm(u[j]);
            const real du2 = std::norm(du[j]);
            const real up = std::pow(std::abs(u[j]), alpha + 2.0);
            const real wnl = evolution_weight(r[j], b, rho);
            const real dwnl = evolution_weight_deriv(r[j], b, rho);
            rhs += w[j] * (-phi.bilaplacian[j] * a2 + 4.0 * phi.d2[j] * du2 -
                           2.0 * phi.d1[j] * dVs[j] * a2 +
                           kg * (2.0 * alpha / (alpha + 2.0) * phi.laplacian[j] * wnl -
                                 4.0 / (alpha + 2.0) * phi.d1[j] * dwnl) *
                               up);
        }
        rec.virial_rhs = rhs;
    } else {
        rec.virial_action = virial_action_variance_flow(u);
        if (rho > 0.0 && kg != 0.0) {
            real rdw = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                rdw += w[j] * r[j] * evolution_weight_deriv(r[j], b, rho) *
                       std::pow(std::abs(u[j]), alpha + 2.0);
            rec.virial_rhs = 8.0 * (rec.grad_sq - 0.5 * rdv) +
                             kg * (12.0 * alpha * pot_evol - 8.0 * rdw) / (alpha + 2.0);
        } else {
            rec.virial_rhs = 8.0 * rec.K;
        }
    }
    return rec;
}

struct CoercivityResult {
    bool lhs_ok = false;
    real delta_est = 0.0;
};

// Coercivity probe: H(chi_R u) >= delta * int |x|^{-b} |chi_R u|^{alpha+2}.
// Returns the largest admissible delta (possibly negative). The ground state
// and potential fix the context in which positivity is guaranteed (data below
// the threshold, V >= 0); the functional itself only sees the cut field.
inline CoercivityResult coercivity_check(const RadialField& u, const GroundState& gs,
                                         const Potential& V, const ModelParams& params, real R) {
    if (!u.grid().same_as(gs.profile.grid()))
        throw std::invalid_argument("coercivity_check: grid mismatch");
    (void)V;
    const auto chi = build_cutoff(CutoffKind::chi_R, R, u.grid_ptr());
    const auto cu = apply_cutoff(chi, u);
    const real grad = gradient_norm_sq(cu);
    const real pot = pot_nl_integral(cu, params.alpha, params.b);
    const real cnl = (3.0 * params.alpha + 2.0 * params.b) / (2.0 * (params.alpha + 2.0));
    const real H = grad - cnl * pot;
    CoercivityResult res;
    if (pot <= 0.0) {
        res.delta_est = infinity;
        res.lhs_ok = H >= 0.0;
        return res;
    }
    res.delta_est = H / pot;
    res.lhs_ok = res.delta_est > 0.0;
    return res;
}

} // namespace inls
