// Hypothesis evaluation for the global/blow-up dichotomy and the defocusing
// scattering statement, plus the prediction-versus-simulation sweep.
//
// Decision table (focusing, intercritical, V >= 0 certified):
//   cond_ener and cond_grad_glob      -> global_scattering when the scattering
//                                        side conditions hold (x.grad V <= 0,
//                                        x.grad V in L^{3/2}, and alpha below
//                                        3-2b or V identically zero),
//                                        otherwise global_bounded
//   cond_ener and cond_grad_blow      -> blowup_or_grow
//   anything else                     -> out_of_theorem_scope
// Defocusing with certified potential -> defocusing_scattering.
// At V = 0 the norm equivalence behind the alpha < 3-2b restriction is exact,
// and scattering below the threshold holds on the whole intercritical range,
// so the V = 0 case is treated as scattering-eligible throughout.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "inls/evolution.hpp"
#include "inls/exponents.hpp"
#include "inls/functionals.hpp"
#include "inls/ground_state.hpp"
#include "inls/potential.hpp"

namespace inls {

enum class Prediction {
    global_scattering,
    global_bounded,
    blowup_or_grow,
    defocusing_scattering,
    out_of_theorem_scope
};

inline const char* to_string(Prediction p) {
    switch (p) {
        case Prediction::global_scattering: return "global_scattering";
        case Prediction::global_bounded: return "global_bounded";
        case Prediction::blowup_or_grow: return "blowup_or_grow";
        case Prediction::defocusing_scattering: return "defocusing_scattering";
        case Prediction::out_of_theorem_scope: return "out_of_theorem_scope";
    }
    return "?";
}

struct OutcomeReport {
    // computed products
    real mass = 0.0;
    real energy = 0.0;             // E(u0), potential included
    real grad_prod = 0.0;          // ||grad u0|| ||u0||^{sigma_c}
    real lambda_prod = 0.0;        // ||Lambda u0|| ||u0||^{sigma_c}
    real energy_prod = 0.0;        // E(u0) M(u0)^{sigma_c}
    real threshold_grad = 0.0;     // from the ground state
    real threshold_energy = 0.0;
    // hypothesis table
    bool cond_ener = false;          // E M^s below the Q threshold
    bool cond_grad_glob = false;     // Lambda-product below threshold
    bool cond_grad_glob_refi = false;// grad-product below threshold
    bool cond_grad_blow = false;     // Lambda-product above threshold
    bool alpha_intercritical = false;
    bool alpha_scattering_range = false; // alpha < 3 - 2b (strict range)
    PotentialCertificate potential_cert;
    bool potential_scattering_ok = false; // x.grad V <= 0 and x.grad V in L^{3/2}
    bool potential_blowup_ok = false;     // 2V + x.grad V >= 0 and x.grad V in L^{3/2}
    Prediction prediction = Prediction::out_of_theorem_scope;
};

inline OutcomeReport evaluate(const RadialField& u0, const Potential& V,
                              const ModelParams& params, const GroundState& gs) {
    params.validate();
    if (!u0.grid().same_as(gs.profile.grid()))
        throw std::invalid_argument("evaluate: grid mismatch between u0 and ground state");
    if (std::abs(gs.alpha - params.alpha) > 1e-12 || std::abs(gs.b - params.b) > 1e-12)
        throw std::invalid_argument("evaluate: ground state solved for different (alpha, b)");
    const real alpha = params.alpha, b = params.b;

    OutcomeReport rep;
    rep.alpha_intercritical = intercritical(alpha, b);
    const real sc = sigma_c(alpha, b); // throws out_of_range_error when not intercritical

    const auto rec = record(u0, V, params, 0.0, {});
    rep.mass = rec.mass;
    rep.energy = rec.energy;
    const real msc = std::pow(rec.mass, sc / 2.0);
    rep.grad_prod = std::sqrt(std::max(rec.grad_sq, 0.0)) * msc;
    rep.lambda_prod = std::sqrt(std::max(rec.lambda_sq, 0.0)) * msc;
    rep.energy_prod = rec.energy * std::pow(rec.mass, sc);
    rep.threshold_grad = gs.threshold_grad;
    rep.threshold_energy = gs.threshold_energy;

    rep.cond_ener = rep.energy_prod < gs.threshold_energy;
    rep.cond_grad_glob = rep.lambda_prod < gs.threshold_grad;
    rep.cond_grad_glob_refi = rep.grad_prod < gs.threshold_grad;
    rep.cond_grad_blow = rep.lambda_prod > gs.threshold_grad;
    rep.alpha_scattering_range = alpha < 3.0 - 2.0 * b;

    rep.potential_cert = certify(V, u0.grid());
    const auto& c = rep.potential_cert;
    rep.potential_scattering_ok = c.radial_deriv_nonpos && c.rV_in_L32;
    rep.potential_blowup_ok = c.virial_sign && c.rV_in_L32;

    const bool scattering_alpha_ok = rep.alpha_scattering_range || V.is_zero();
    if (!params.focusing()) {
        const bool thm_ok = c.kato_below_4pi && rep.potential_scattering_ok && scattering_alpha_ok;
        rep.prediction =
            thm_ok ? Prediction::defocusing_scattering : Prediction::out_of_theorem_scope;
        return rep;
    }
    if (!c.nonnegative || !rep.cond_ener) {
        rep.prediction = Prediction::out_of_theorem_scope;
        return rep;
    }
    if (rep.cond_grad_glob) {
        rep.prediction = (rep.potential_scattering_ok && scattering_alpha_ok)
                             ? Prediction::global_scattering
                             : Prediction::global_bounded;
    } else if (rep.cond_grad_blow) {
        rep.prediction = Prediction::blowup_or_grow;
    } else {
        rep.prediction = Prediction::out_of_theorem_scope;
    }
    return rep;
}

struct SweepRow {
    real c;
    Prediction prediction;
    std::vector<Event> events;
    std::string simulated; // terse label of the terminal/diagnostic outcome
    bool consistent;
};

inline bool prediction_matches_events(Prediction p, const TimeSeries& ts) {
    const bool blew = ts.has(EventKind::blowup_detected);
    const bool decayed = ts.has(EventKind::decay_detected);
    switch (p) {
        case Prediction::global_scattering:
        case Prediction::defocusing_scattering:
            return !blew && decayed;
        case Prediction::global_bounded:
            return !blew;
        case Prediction::blowup_or_grow:
            return blew;
        case Prediction::out_of_theorem_scope:
            return true; // no claim made
    }
    return false;
}

// Runs u0 = c Q across the given multipliers and compares the classifier
// verdicts with the simulated events.
inline std::vector<SweepRow> dichotomy_sweep(const std::vector<real>& c_values,
                                             const GroundState& gs, const Potential& V,
                                             const ModelParams& params,
                                             const SimulationConfig& sim_template) {
    std::vector<SweepRow> rows;
    for (real c : c_values) {
        RadialField u0 = gs.profile.scaled(c);
        auto rep = evaluate(u0, V, params, gs);
        SimulationConfig cfg = sim_template;
        cfg.params = params;
        cfg.initial.kind = "ground_state_multiple";
        cfg.initial.c = c;
        auto ts = run(cfg);
        SweepRow row{c, rep.prediction, ts.events, "", false};
        if (ts.has(EventKind::blowup_detected))
            row.simulated = "blowup_detected";
        else if (ts.has(EventKind::decay_detected))
            row.simulated = "decay_detected";
        else
            row.simulated = "completed";
        row.consistent = prediction_matches_events(rep.prediction, ts);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace inls
