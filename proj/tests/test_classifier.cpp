#include <catch2/catch_amalgamated.hpp>

#include "inls/classifier.hpp"

using namespace inls;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Setup {
    ModelParams params{2.0, 0.5, -1};
    std::shared_ptr<const RadialGrid> grid = build_grid(20.0, 1024);
    GroundState gs = solve_ground_state(params, grid);
    Potential V0 = builtin("zero");
};

Setup& setup() {
    static Setup s;
    return s;
}

} // namespace

TEST_CASE("sub-threshold multiple predicts scattering") {
    auto& s = setup();
    auto rep = evaluate(s.gs.profile.scaled(0.9), s.V0, s.params, s.gs);
    CHECK(rep.cond_ener);
    CHECK(rep.cond_grad_glob);
    CHECK(rep.cond_grad_glob_refi);
    CHECK_FALSE(rep.cond_grad_blow);
    CHECK(rep.prediction == Prediction::global_scattering);

    const real sc = sigma_c(s.params.alpha, s.params.b);
    CHECK_THAT(rep.grad_prod, WithinRel(std::pow(0.9, 1.0 + sc) * s.gs.threshold_grad, 1e-12));
}

TEST_CASE("super-threshold multiple predicts blow-up or growth") {
    auto& s = setup();
    auto rep = evaluate(s.gs.profile.scaled(1.1), s.V0, s.params, s.gs);
    CHECK(rep.cond_ener); // E0(cQ) M^sigma dips below the threshold for c slightly above 1
    CHECK(rep.cond_grad_blow);
    CHECK(rep.prediction == Prediction::blowup_or_grow);

    // Pohozaev-expanded energy: E0(cQ) = (c^2/2 - 2 c^{a+2}/(3a+2b)) ||grad Q||^2
    const real alpha = s.params.alpha, b = s.params.b;
    const real c = 1.1;
    const real e0 =
        (c * c / 2.0 - 2.0 * std::pow(c, alpha + 2.0) / (3.0 * alpha + 2.0 * b)) * s.gs.grad_sq;
    const real sc = sigma_c(alpha, b);
    const real expected = e0 * std::pow(c * c * s.gs.mass, sc);
    CHECK_THAT(rep.energy_prod, WithinRel(expected, 1e-4));
}

TEST_CASE("scaling covariance of the threshold products") {
    auto& s = setup();
    const real sc = sigma_c(s.params.alpha, s.params.b);
    auto base = evaluate(s.gs.profile, s.V0, s.params, s.gs);
    for (real c : {0.5, 0.8, 1.25, 2.0}) {
        auto rep = evaluate(s.gs.profile.scaled(c), s.V0, s.params, s.gs);
        CHECK_THAT(rep.grad_prod, WithinRel(std::pow(c, 1.0 + sc) * base.grad_prod, 1e-12));
        CHECK_THAT(rep.lambda_prod, WithinRel(std::pow(c, 1.0 + sc) * base.lambda_prod, 1e-12));
        CHECK_THAT(rep.mass, WithinRel(c * c * base.mass, 1e-12));
    }
}

TEST_CASE("threshold crossing sits at c = 1 for V = 0") {
    auto& s = setup();
    real lo = 0.5, hi = 2.0;
    for (int i = 0; i < 40; ++i) {
        const real mid = 0.5 * (lo + hi);
        auto rep = evaluate(s.gs.profile.scaled(mid), s.V0, s.params, s.gs);
        (rep.cond_grad_glob ? lo : hi) = mid;
    }
    CHECK_THAT(0.5 * (lo + hi), WithinAbs(1.0, 1e-6));
}

TEST_CASE("defocusing prediction for arbitrary radial data") {
    auto& s = setup();
    ModelParams defoc{2.0, 0.5, +1};
    auto gs_defoc = s.gs; // thresholds come from the focusing Q regardless
    auto u = RadialField::sample(s.grid, [](real r) { return 2.0 * std::exp(-r * r / 3.0); });
    auto rep = evaluate(u, s.V0, defoc, gs_defoc);
    CHECK(rep.prediction == Prediction::defocusing_scattering);
}

TEST_CASE("nonnegative potential strengthens the Lambda norm") {
    auto& s = setup();
    auto V = builtin("gaussian", 0.5);
    for (real c : {0.5, 0.9, 1.3}) {
        auto rep = evaluate(s.gs.profile.scaled(c), V, s.params, s.gs);
        CHECK(rep.lambda_prod >= rep.grad_prod);
        if (rep.cond_grad_glob) CHECK(rep.cond_grad_glob_refi); // (1.10) implies (1.15)
    }
}

TEST_CASE("above the energy threshold the classifier abstains") {
    auto& s = setup();
    // Along the Q-ray the energy product is maximized at c = 1, so scaling Q
    // cannot exceed it; a wide low-amplitude gaussian carries large mass and
    // positive energy and lands above the threshold.
    auto wide = RadialField::sample(s.grid,
                                    [](real r) { return 0.5 * std::exp(-r * r / 32.0); });
    auto rep = evaluate(wide, s.V0, s.params, s.gs);
    CHECK_FALSE(rep.cond_ener);
    CHECK(rep.prediction == Prediction::out_of_theorem_scope);
}

TEST_CASE("mismatched ground state is rejected") {
    auto& s = setup();
    ModelParams other{2.5, 0.5, -1};
    CHECK_THROWS_AS(evaluate(s.gs.profile, s.V0, other, s.gs), std::invalid_argument);
    auto g2 = build_grid(20.0, 512);
    auto u2 = RadialField(g2);
    CHECK_THROWS_AS(evaluate(u2, s.V0, s.params, s.gs), std::invalid_argument);
}

TEST_CASE("dichotomy sweep on a coarse grid") {
    // quick qualitative version of the acceptance sweep
    ModelParams p{2.0, 0.5, -1};
    SimulationConfig sim;
    sim.params = p;
    sim.n = 1024;
    sim.r_max = 10.0;
    sim.dt = 1e-3;
    sim.t_end = 12.0;
    sim.record_stride = 20;
    sim.detection.decay_window = 0.5;
    sim.detection.grad_blowup_factor = 20.0; // below the n=1024 saturation scale
    auto grid = build_grid(sim.r_max, sim.n);
    auto gs = solve_ground_state(p, grid);
    auto rows = dichotomy_sweep({0.8, 1.2}, gs, builtin("zero"), p, sim);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].prediction == Prediction::global_scattering);
    CHECK(rows[1].prediction == Prediction::blowup_or_grow);
    CHECK(rows[1].simulated == "blowup_detected");
    CHECK(rows[1].consistent);
}
