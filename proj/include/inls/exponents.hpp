// Critical-exponent and Strichartz-admissible-pair arithmetic (N = 3).
#pragma once

#include <cmath>
#include <limits>

#include "inls/common.hpp"

namespace inls {

// 1/q with the convention 1/inf = 0.
inline real inv(real q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

// gamma_c = 3/2 - (2-b)/alpha, the scaling-critical Sobolev index.
inline real gamma_c(real alpha, real b) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gamma_c: alpha must be positive");
    return 1.5 - (2.0 - b) / alpha;
}

// sigma_c = (4-2b-alpha)/(3 alpha - 4 + 2b), valid in the intercritical range.
inline real sigma_c(real alpha, real b) {
    const real den = 3.0 * alpha - 4.0 + 2.0 * b;
    if (!(den > 0.0))
        throw out_of_range_error("sigma_c: requires 3*alpha - 4 + 2b > 0");
    return (4.0 - 2.0 * b - alpha) / den;
}

// Intercritical window (4-2b)/3 < alpha < 4-2b.
inline bool intercritical(real alpha, real b) {
    return alpha > (4.0 - 2.0 * b) / 3.0 && alpha < 4.0 - 2.0 * b;
}

struct RangeExponents {
    real two_star;       // (4-2b)/(N-2) = 4-2b
    real two_lower_star; // (4-2b)/N = (4-2b)/3
    bool b_in_range;     // whether 0 <= b < 1
};

inline RangeExponents range_exponents(real b) {
    return {4.0 - 2.0 * b, (4.0 - 2.0 * b) / 3.0, b >= 0.0 && b < 1.0};
}

enum class PairClass { S0, S_gamma_c, S_minus_gamma_c };

// Open-endpoint margin for the a^+ / a^- style strict ranges.
inline constexpr real pair_margin = 1e-9;

// Schroedinger / Sobolev-critical admissibility of an exponent pair.
//   S0:             2/q + 3/r = 3/2,  q,r in [2,inf], (q,r) != (2,inf)
//   S_gamma_c:      2/q + 3/r = (2-b)/alpha,      3a/(2-b) < r < 6
//   S_minus_gamma_c: 2/q + 3/r = 3 - (2-b)/alpha, 3a/(2-b) < r < 6
inline bool is_admissible(real q, real r, PairClass klass, real alpha = 0.0, real b = 0.0,
                          real tol = 1e-12) {
    if (!(q >= 1.0) || !(r >= 1.0)) return false;
    const real scale = inv(q) * 2.0 + inv(r) * 3.0;
    switch (klass) {
        case PairClass::S0:
            if (q < 2.0 || r < 2.0) return false;
            if (q == 2.0 && std::isinf(r)) return false;
            return std::abs(scale - 1.5) <= tol;
        case PairClass::S_gamma_c: {
            const real lo = 3.0 * alpha / (2.0 - b);
            if (!(r > lo + pair_margin && r < 6.0 - pair_margin)) return false;
            return std::abs(scale - (2.0 - b) / alpha) <= tol;
        }
        case PairClass::S_minus_gamma_c: {
            const real lo = 3.0 * alpha / (2.0 - b);
            if (!(r > lo + pair_margin && r < 6.0 - pair_margin)) return false;
            return std::abs(scale - (3.0 - (2.0 - b) / alpha)) <= tol;
        }
    }
    return false;
}

// The four exponents displayed in the remark on nonlinear-estimate pairs,
// parameterized by a small theta > 0, together with membership verdicts.
struct RemarkPairs {
    real q, r, k, m;
    bool qr_in_S0;            // (q,r) in S0
    bool kr_in_S_gamma_c;     // (k,r) in S_gamma_c
    bool mr_in_S_minus;       // (m,r) in S_minus_gamma_c
    bool r_in_23;             // whether r lands in [2,3)
};

inline RemarkPairs remark_pairs(real theta, real alpha, real b) {
    const real s = alpha + 2.0 - theta;
    const real dq = alpha * (3.0 * alpha + 2.0 * b) - theta * (3.0 * alpha - 4.0 + 2.0 * b);
    const real dr = alpha * (3.0 - b) - theta * (2.0 - b);
    const real dk = 4.0 - 2.0 * b - alpha;
    const real dm = alpha * (3.0 * (alpha - theta) + 1.0 + 2.0 * b) - (4.0 - 2.0 * b) * (1.0 - theta);
    if (dq <= 0.0 || dr <= 0.0 || dk <= 0.0 || dm <= 0.0)
        throw out_of_range_error("remark_pairs: degenerate denominator");
    RemarkPairs p;
    p.q = 4.0 * alpha * s / dq;
    p.r = 3.0 * alpha * s / dr;
    p.k = 2.0 * alpha * s / dk;
    p.m = 2.0 * alpha * s / dm;
    p.qr_in_S0 = is_admissible(p.q, p.r, PairClass::S0, alpha, b, 1e-10);
    p.kr_in_S_gamma_c = is_admissible(p.k, p.r, PairClass::S_gamma_c, alpha, b, 1e-10);
    p.mr_in_S_minus = is_admissible(p.m, p.r, PairClass::S_minus_gamma_c, alpha, b, 1e-10);
    p.r_in_23 = p.r >= 2.0 && p.r < 3.0;
    return p;
}

} // namespace inls
