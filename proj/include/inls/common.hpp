// Shared aliases, constants and error types.
#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace inls {

using real = double;
using cplx = std::complex<double>;

inline constexpr real pi = 3.14159265358979323846264338327950288;
inline constexpr real infinity = std::numeric_limits<real>::infinity();

// Thrown when a solver fails to converge (shooting bracket lost, etc.).
struct no_convergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when parameters fall outside the validity range of a formula.
struct out_of_range_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when a computation produced non-finite values.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model parameters of one equation instance:
//   i u_t + Lap u - V u = kappa |x|^{-b} |u|^alpha u  on R^3, radial.
// kappa = +1 defocusing, -1 focusing.
struct ModelParams {
    real alpha = 2.0;
    real b = 0.0;
    int kappa = -1;

    void validate() const {
        if (!(alpha > 0.0))
            throw std::invalid_argument("ModelParams: alpha must be positive");
        if (!(b >= 0.0 && b < 1.0))
            throw std::invalid_argument("ModelParams: b must lie in [0,1)");
        if (kappa != 1 && kappa != -1)
            throw std::invalid_argument("ModelParams: kappa must be +1 or -1");
    }

    bool focusing() const { return kappa == -1; }
};

} // namespace inls
