// Strang-splitting time integration with conservation monitoring and
// event detection (blow-up, sustained nonlinear decay, boundary reflection).
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inls/dst.hpp"
#include "inls/functionals.hpp"
#include "inls/ground_state.hpp"
#include "inls/potential.hpp"

namespace inls {

struct InitialData {
    std::string kind = "gaussian"; // gaussian | ground_state_multiple | zero
    real amplitude = 1.0;          // gaussian prefactor
    real width = 1.0;              // gaussian width
    real chirp = 0.0;              // quadratic phase e^{i chirp r^2}
    real c = 1.0;                  // multiple of Q for ground_state_multiple
};

struct DetectionConfig {
    real grad_blowup_factor = 50.0;
    real dt_floor = 1e-8;
    real decay_factor = 0.1;
    real decay_window = 1.0;
};

struct SimulationConfig {
    ModelParams params;
    std::string potential_name = "zero";
    real potential_amplitude = 1.0;
    real r_max = 20.0;
    std::size_t n = 2048;
    real dt = 1e-3;
    real t_end = 10.0;
    std::size_t record_stride = 10;
    std::size_t snapshot_stride = 200;
    real nl_amplitude = 1.0;
    InitialData initial;
    DetectionConfig detection;
    std::vector<real> ball_radii{1.0, 2.0, 5.0, 10.0};
    real virial_R = 0.0; // 0: plain |x|^2 virial weight; >0: phi_R weight

    void validate() const {
        params.validate();
        if (!(dt > 0.0)) throw std::invalid_argument("SimulationConfig: dt must be positive");
        if (!(t_end > 0.0)) throw std::invalid_argument("SimulationConfig: t_end must be positive");
        if (record_stride < 1 || snapshot_stride < 1)
            throw std::invalid_argument("SimulationConfig: strides must be >= 1");
        if (!(detection.grad_blowup_factor > 0.0) || !(detection.dt_floor > 0.0) ||
            !(detection.decay_factor > 0.0) || !(detection.decay_window > 0.0))
            throw std::invalid_argument("SimulationConfig: detection thresholds must be positive");
        if (!(r_max > 0.0) || n < 8) throw std::invalid_argument("SimulationConfig: bad grid");
        if (!(nl_amplitude >= 0.0))
            throw std::invalid_argument("SimulationConfig: nl_amplitude must be >= 0");
    }
};

enum class EventKind { blowup_detected, decay_detected, boundary_reflection, completed };

inline const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::blowup_detected: return "blowup_detected";
        case EventKind::decay_detected: return "decay_detected";
        case EventKind::boundary_reflection: return "boundary_reflection";
        case EventKind::completed: return "completed";
    }
    return "?";
}

struct Event {
    real t;
    EventKind kind;
    std::string detail;
};

struct TimeSeries {
    std::vector<FunctionalRecord> records;
    std::vector<std::pair<real, RadialField>> snapshots;
    std::vector<Event> events;
    std::vector<real> ball_radii; // column layout of the ball columns

    bool has(EventKind k) const {
        for (const auto& e : events)
            if (e.kind == k) return true;
        return false;
    }
    std::optional<real> time_of(EventKind k) const {
        for (const auto& e : events)
            if (e.kind == k) return e.t;
        return std::nullopt;
    }
};

// Mollification radius of the evolution weight, in grid cells.
inline constexpr real nl_moll_cells = 4.0;

// Split-step integrator bound to one grid/potential/model instance.
// The phase half-step multiplies by exp(-i tau (V + kappa g w(r) |u|^alpha))
// with the grid-mollified weight w(r) ~ r^{-b}, and is exact because it
// leaves |u| pointwise invariant; the kinetic step is exact in sine space.
// Mass is conserved to roundoff by both.
class Evolver {
  public:
    Evolver(std::shared_ptr<const RadialGrid> grid, const Potential& V, const ModelParams& params,
            real nl_amplitude = 1.0)
        : kin_(grid), Vs_(V.sample(*grid)), rb_(grid->n()), alpha_(params.alpha),
          kg_(static_cast<real>(params.kappa) * nl_amplitude),
          moll_radius_(params.b > 0.0 ? nl_moll_cells * grid->dr() : 0.0) {
        for (std::size_t j = 0; j < grid->n(); ++j)
            rb_[j] = evolution_weight(grid->node(j), params.b, moll_radius_);
    }

    real moll_radius() const { return moll_radius_; }

    void phase(RadialField& u, real tau) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            const real amp = std::abs(u[j]);
            const real w = Vs_[j] + kg_ * rb_[j] * std::pow(amp, alpha_);
            const real ph = -tau * w;
            u[j] *= cplx{std::cos(ph), std::sin(ph)};
        }
    }

    void step(RadialField& u, real dt) {
        phase(u, 0.5 * dt);
        kin_.apply(u, dt);
        phase(u, 0.5 * dt);
    }

  private:
    KineticPropagator kin_;
    std::vector<real> Vs_;
    std::vector<real> rb_;
    real alpha_;
    real kg_;
    real moll_radius_;
};

// Single Strang step as a standalone operation.
inline RadialField step(const RadialField& u, const Potential& V, const ModelParams& params,
                        real dt, real nl_amplitude = 1.0) {
    RadialField out = u;
    Evolver ev(u.grid_ptr(), V, params, nl_amplitude);
    ev.step(out, dt);
    if (!out.finite()) throw numeric_error("step: field left the finite range");
    return out;
}

inline RadialField make_initial(const InitialData& init, const ModelParams& params,
                                std::shared_ptr<const RadialGrid> grid) {
    if (init.kind == "zero") return RadialField(grid);
    if (init.kind == "gaussian") {
        const real A = init.amplitude, w = init.width, ch = init.chirp;
        return RadialField::sample(grid, [A, w, ch](real r) {
            const real ph = ch * r * r;
            return A * std::exp(-r * r / (2.0 * w * w)) * cplx{std::cos(ph), std::sin(ph)};
        });
    }
    if (init.kind == "ground_state_multiple") {
        auto gs = solve_ground_state(params, grid);
        RadialField u0 = gs.profile;
        u0 *= init.c;
        return u0;
    }
    throw std::invalid_argument("make_initial: unknown initial data kind '" + init.kind + "'");
}

inline TimeSeries run(const SimulationConfig& config) {
    config.validate();
    auto grid = build_grid(config.r_max, config.n);
    const Potential V = builtin(config.potential_name, config.potential_amplitude);
    RadialField u = make_initial(config.initial, config.params, grid);

    Evolver ev(grid, V, config.params, config.nl_amplitude);

    RecordOptions ropt;
    ropt.ball_radii = config.ball_radii;
    ropt.ball_radii.push_back(0.9 * config.r_max); // reflection shell, last column
    ropt.nl_amplitude = config.nl_amplitude;
    ropt.nl_moll_radius = ev.moll_radius();
    std::optional<CutoffProfile> phiR;
    if (config.virial_R > 0.0) {
        phiR = build_cutoff(CutoffKind::phi_R, config.virial_R, grid);
        ropt.virial_weight = &*phiR;
    }

    TimeSeries ts;
    ts.ball_radii = ropt.ball_radii;
    auto rec0 = record(u, V, config.params, 0.0, ropt);
    const real grad0 = std::sqrt(std::max(rec0.grad_sq, 0.0));
    const real pot0 = rec0.pot_nl;
    const real mass0 = rec0.mass;
    ts.records.push_back(rec0);
    ts.snapshots.emplace_back(0.0, u);

    real t = 0.0;
    real dt = config.dt;
    real prev_mass = mass0;
    bool blew_up = false;
    bool decay_flagged = false, reflect_flagged = false;
    real below_since = -1.0;
    std::size_t step_index = 0;
    const real t_eps = 1e-12 * config.t_end;

    while (t < config.t_end - t_eps) {
        const real dt_eff = std::min(dt, config.t_end - t);
        ev.step(u, dt_eff);
        t += dt_eff;
        ++step_index;

        if (!u.finite()) {
            ts.events.push_back({t, EventKind::blowup_detected, "non-finite field"});
            blew_up = true;
            break;
        }
        const real m = mass(u);
        if (std::abs(m - prev_mass) > 1e-10 * mass0 && mass0 > 0.0) {
            dt *= 0.5;
            if (dt < config.detection.dt_floor) {
                ts.events.push_back({t, EventKind::blowup_detected, "dt underflow"});
                blew_up = true;
                break;
            }
        }
        prev_mass = m;

        const bool at_end = t >= config.t_end - t_eps;
        if (step_index % config.record_stride == 0 || at_end) {
            auto rec = record(u, V, config.params, t, ropt);
            ts.records.push_back(rec);

            if (grad0 > 0.0 &&
                std::sqrt(rec.grad_sq) > config.detection.grad_blowup_factor * grad0) {
                ts.events.push_back({t, EventKind::blowup_detected, "gradient growth"});
                blew_up = true;
                break;
            }
            if (pot0 > 0.0 && !decay_flagged) {
                if (rec.pot_nl < config.detection.decay_factor * pot0) {
                    if (below_since < 0.0) below_since = t;
                    if (t - below_since >= config.detection.decay_window) {
                        ts.events.push_back({t, EventKind::decay_detected, ""});
                        decay_flagged = true;
                    }
                } else {
                    below_since = -1.0;
                }
            }
            if (!reflect_flagged && mass0 > 0.0) {
                const real outside = rec.mass - rec.ball_mass.back();
                if (outside > 0.01 * rec.mass) {
                    ts.events.push_back({t, EventKind::boundary_reflection, ""});
                    reflect_flagged = true;
                }
            }
        }
        if (step_index % config.snapshot_stride == 0 || at_end) ts.snapshots.emplace_back(t, u);
    }

    if (!blew_up) ts.events.push_back({t, EventKind::completed, ""});
    return ts;
}

} // namespace inls
