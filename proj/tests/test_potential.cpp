#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "inls/potential.hpp"
#include "oracles.hpp"

using namespace inls;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("builtin potentials") {
    auto z = builtin("zero");
    CHECK(z.eval(3.0) == 0.0);
    CHECK(z.deriv(3.0) == 0.0);
    CHECK(builtin("gaussian", 1.0).eval(0.0) == 1.0);
    CHECK(builtin("well", 2.0).eval(0.0) == -2.0);
    CHECK_THAT(builtin("bump_shell", 1.0).eval(2.0), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(builtin("coulomb", 1.0), std::invalid_argument);
}

TEST_CASE("derivative fields are consistent with eval") {
    auto g = build_grid(10.0, 2048);
    for (const char* name : {"gaussian", "well", "bump_shell"}) {
        auto V = builtin(name, 1.3);
        const real h = 1e-5;
        for (real r : {0.5, 1.0, 2.0, 3.5}) {
            const real fd = (V.eval(r + h) - V.eval(r - h)) / (2.0 * h);
            const real dv = V.deriv(r);
            CHECK(std::abs(fd - dv) <= 1e-3 * std::max(1.0, std::abs(dv)));
        }
    }
    (void)g;
}

TEST_CASE("kato norm analytic cases") {
    auto g = build_grid(10.0, 8192);

    Potential zero = builtin("zero");
    CHECK(kato_norm(zero, *g) == 0.0);

    Potential ind{"indicator", [](real r) { return r <= 1.0 ? 1.0 : 0.0; },
                  [](real) { return 0.0; }};
    CHECK_THAT(kato_norm(ind, *g), WithinRel(2.0 * pi, 1e-3));

    Potential gauss = builtin("gaussian", 1.0);
    CHECK_THAT(kato_norm(gauss, *g), WithinRel(2.0 * pi, 1e-3));
}

TEST_CASE("kato norm agrees with the brute-force 2D quadrature") {
    auto g = build_grid(10.0, 8192);
    Potential ind{"indicator", [](real r) { return r <= 1.0 ? 1.0 : 0.0; },
                  [](real) { return 0.0; }};
    const real radial = kato_norm(ind, *g);
    const real brute =
        oracle::kato_2d([](real s) { return s <= 1.0 ? 1.0 : 0.0; }, 1.5, {0.0, 0.3, 0.7, 1.0, 1.5});
    CHECK_THAT(radial, WithinRel(brute, 1e-3));
}

TEST_CASE("kato norm homogeneity and monotonicity") {
    auto g = build_grid(10.0, 1024);
    std::mt19937 rng(7);
    std::uniform_real_distribution<real> unif(0.2, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const real w = unif(rng), c = unif(rng);
        Potential V{"t", [w](real r) { return std::exp(-r * r / w) - 0.3; },
                    [w](real r) { return -2.0 * r / w * std::exp(-r * r / w); }};
        Potential cV{"ct", [w, c](real r) { return c * (std::exp(-r * r / w) - 0.3); },
                     [w, c](real r) { return -2.0 * c * r / w * std::exp(-r * r / w); }};
        CHECK_THAT(kato_norm(cV, *g), WithinRel(c * kato_norm(V, *g), 1e-10));

        Potential bigger{"b", [w](real r) { return std::exp(-r * r / w) + 0.4; },
                         [](real) { return 0.0; }};
        CHECK(kato_norm(V, *g) <= kato_norm(bigger, *g) * (1.0 + 1e-12));
    }
}

TEST_CASE("certification flags") {
    auto g = build_grid(15.0, 2048);

    auto zero_cert = certify(builtin("zero"), *g);
    CHECK(zero_cert.kato_norm_abs == 0.0);
    CHECK(zero_cert.nonnegative);
    CHECK(zero_cert.radial_deriv_nonpos);
    CHECK(zero_cert.virial_sign);
    CHECK(zero_cert.kato_below_4pi);

    auto gauss_cert = certify(builtin("gaussian", 1.0), *g);
    CHECK(gauss_cert.nonnegative);
    CHECK(gauss_cert.radial_deriv_nonpos);   // x.grad V = -2 r^2 e^{-r^2} <= 0
    CHECK_FALSE(gauss_cert.virial_sign);     // 2V + x.grad V < 0 at r = 2
    {
        const real r = 2.0;
        const real val = 2.0 * std::exp(-r * r) * (1.0 - r * r);
        CHECK(val < 0.0);
    }
    CHECK(gauss_cert.kato_norm_neg == 0.0);  // consistency: V >= 0

    auto small_well = certify(builtin("well", 0.1), *g);
    CHECK_FALSE(small_well.nonnegative);
    CHECK_THAT(small_well.kato_norm_neg, WithinRel(0.2 * pi, 1e-3));
    CHECK(small_well.kato_below_4pi);

    // shallow attractive indicator well: scaled Kato norm, still below 4 pi
    auto g8 = build_grid(10.0, 8192);
    Potential shallow{"shallow", [](real r) { return r <= 1.0 ? -0.1 : 0.0; },
                      [](real) { return 0.0; }};
    auto sc = certify(shallow, *g8);
    CHECK_THAT(sc.kato_norm_neg, WithinRel(0.2 * pi, 1e-3));
    CHECK(sc.kato_below_4pi);
    CHECK_FALSE(sc.nonnegative);

    auto deep_well = certify(builtin("well", 5.0), *g);
    CHECK_THAT(deep_well.kato_norm_neg, WithinRel(10.0 * pi, 1e-3));
    CHECK_FALSE(deep_well.kato_below_4pi);   // 10 pi > 4 pi
}
