// Radial potentials and their certification against the Kato-class and
// sign/monotonicity hypotheses of the dynamics theorems.
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "inls/grid.hpp"

namespace inls {

struct Potential {
    std::string label;
    std::function<real(real)> eval;  // V(r)
    std::function<real(real)> deriv; // dV/dr

    std::vector<real> sample(const RadialGrid& grid) const {
        std::vector<real> v(grid.n());
        for (std::size_t j = 0; j < grid.n(); ++j) v[j] = eval(grid.node(j));
        return v;
    }

    std::vector<real> sample_deriv(const RadialGrid& grid) const {
        std::vector<real> v(grid.n());
        for (std::size_t j = 0; j < grid.n(); ++j) v[j] = deriv(grid.node(j));
        return v;
    }

    bool is_zero() const { return label == "zero"; }
};

// Named closed-form potentials with exact derivatives.
inline Potential builtin(const std::string& name, real c = 1.0) {
    if (!std::isfinite(c)) throw std::invalid_argument("builtin: amplitude must be finite");
    if (name == "zero")
        return {"zero", [](real) { return 0.0; }, [](real) { return 0.0; }};
    if (name == "gaussian")
        return {"gaussian", [c](real r) { return c * std::exp(-r * r); },
                [c](real r) { return -2.0 * c * r * std::exp(-r * r); }};
    if (name == "well")
        return {"well", [c](real r) { return -c * std::exp(-r * r); },
                [c](real r) { return 2.0 * c * r * std::exp(-r * r); }};
    if (name == "bump_shell")
        return {"bump_shell", [c](real r) { return c * std::exp(-(r - 2.0) * (r - 2.0)); },
                [c](real r) { return -2.0 * c * (r - 2.0) * std::exp(-(r - 2.0) * (r - 2.0)); }};
    throw std::invalid_argument("builtin: unknown potential '" + name + "'");
}

// Kato norm sup_x int |V(y)|/|x-y| dy of a radial potential. For |x| = rho,
// Newton's theorem reduces the integral to
//   4*pi [ (1/rho) int_0^rho |V(s)| s^2 ds + int_rho^rmax |V(s)| s ds ],
// with the rho -> 0 limit 4*pi int |V(s)| s ds. The sup is scanned over
// rho in {0} u nodes via prefix sums.
inline real kato_norm_samples(std::span<const real> V, const RadialGrid& grid) {
    const std::size_t n = grid.n();
    if (V.size() != n) throw std::invalid_argument("kato_norm: length mismatch");
    const auto& r = grid.nodes();
    const real dr = grid.dr();
    std::vector<real> inner(n + 1, 0.0);  // int_0^{r_i} |V| s^2 ds
    std::vector<real> outer(n + 1, 0.0);  // int_{r_i}^{rmax} |V| s ds
    for (std::size_t j = 0; j < n; ++j)
        inner[j + 1] = inner[j] + std::abs(V[j]) * r[j] * r[j] * dr;
    for (std::size_t j = n; j-- > 0;)
        outer[j] = outer[j + 1] + std::abs(V[j]) * r[j] * dr;
    real best = outer[0]; // rho = 0
    for (std::size_t i = 0; i < n; ++i) {
        const real val = inner[i + 1] / r[i] + outer[i + 1];
        best = std::max(best, val);
    }
    return 4.0 * pi * best;
}

inline real kato_norm(const Potential& V, const RadialGrid& grid) {
    const auto samples = V.sample(grid);
    return kato_norm_samples(samples, grid);
}

struct PotentialCertificate {
    real kato_norm_neg = 0.0; // ||V_-||_K
    real kato_norm_abs = 0.0; // ||V||_K
    real l32_norm = 0.0;      // ||V||_{L^{3/2}}
    real l32_norm_rV = 0.0;   // ||x.grad V||_{L^{3/2}}
    bool nonnegative = false;       // V >= 0
    bool radial_deriv_nonpos = false; // x.grad V <= 0
    bool virial_sign = false;        // 2V + x.grad V >= 0
    bool rV_in_L32 = false;          // x.grad V in L^{3/2}
    bool kato_below_4pi = false;     // ||V_-||_K < 4*pi
    bool truncation_ok = false;      // |V(r_max)| negligible
};

inline constexpr real sign_tol = 1e-10;

inline PotentialCertificate certify(const Potential& V, const RadialGrid& grid) {
    const std::size_t n = grid.n();
    const auto& r = grid.nodes();
    const auto Vs = V.sample(grid);
    const auto dVs = V.sample_deriv(grid);

    PotentialCertificate cert;
    std::vector<real> Vneg(n), absV32(n), rdV32(n);
    bool nonneg = true, rdv_nonpos = true, virial = true;
    for (std::size_t j = 0; j < n; ++j) {
        const real rdv = r[j] * dVs[j];
        Vneg[j] = std::min(Vs[j], 0.0);
        absV32[j] = std::pow(std::abs(Vs[j]), 1.5);
        rdV32[j] = std::pow(std::abs(rdv), 1.5);
        nonneg = nonneg && Vs[j] >= -sign_tol;
        rdv_nonpos = rdv_nonpos && rdv <= sign_tol;
        virial = virial && 2.0 * Vs[j] + rdv >= -sign_tol;
    }
    cert.kato_norm_abs = kato_norm_samples(Vs, grid);
    cert.kato_norm_neg = kato_norm_samples(Vneg, grid);
    cert.l32_norm = std::pow(grid.integrate(absV32), 2.0 / 3.0);
    cert.l32_norm_rV = std::pow(grid.integrate(rdV32), 2.0 / 3.0);
    cert.nonnegative = nonneg;
    cert.radial_deriv_nonpos = rdv_nonpos;
    cert.virial_sign = virial;
    cert.rV_in_L32 = std::isfinite(cert.l32_norm_rV);
    cert.kato_below_4pi = cert.kato_norm_neg < 4.0 * pi;
    cert.truncation_ok = std::abs(V.eval(grid.r_max())) < 1e-12;
    return cert;
}

} // namespace inls
