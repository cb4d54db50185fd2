// Exact free propagator e^{i t Lap} on radial Dirichlet data via DST-I of v = r*u.
#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "inls/grid.hpp"

namespace inls {

namespace detail {
// FFTW plan creation is not thread safe; executions on distinct plans are.
inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace detail

// Batched DST-I (FFTW RODFT00) over the real and imaginary parts of v,
// interleaved with stride 2. Applying the transform twice multiplies by
// 2(n+1), which the inverse path folds into the spectral coefficients.
class SineTransform {
  public:
    explicit SineTransform(std::size_t n) : n_(n), buf_(2 * n) {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        int sz = static_cast<int>(n);
        fftw_r2r_kind kind = FFTW_RODFT00;
        plan_ = fftw_plan_many_r2r(1, &sz, 2, buf_.data(), nullptr, 2, 1, buf_.data(), nullptr, 2,
                                   1, &kind, FFTW_ESTIMATE);
        if (!plan_) throw numeric_error("SineTransform: planning failed");
    }

    ~SineTransform() {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(plan_);
    }

    SineTransform(const SineTransform&) = delete;
    SineTransform& operator=(const SineTransform&) = delete;

    std::size_t n() const { return n_; }

    // In-place unnormalized DST-I of the interleaved complex buffer.
    // Serialized internally so a cached transform can be shared.
    void execute(std::vector<cplx>& v) {
        std::lock_guard<std::mutex> lock(exec_mutex_);
        auto* raw = reinterpret_cast<real*>(v.data());
        std::copy(raw, raw + 2 * n_, buf_.data());
        fftw_execute(plan_);
        std::copy(buf_.data(), buf_.data() + 2 * n_, raw);
    }

  private:
    std::size_t n_;
    std::vector<real> buf_;
    fftw_plan plan_;
    std::mutex exec_mutex_;
};

namespace detail {
// Transforms depend only on n; cache them for the free-function entry points.
inline std::shared_ptr<SineTransform> shared_dst(std::size_t n) {
    static std::mutex m;
    static std::map<std::size_t, std::weak_ptr<SineTransform>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto& slot = cache[n];
    if (auto p = slot.lock()) return p;
    auto p = std::make_shared<SineTransform>(n);
    slot = p;
    return p;
}
} // namespace detail

// int |grad u|^2 dx evaluated in sine space: with v = r*u = sum c_k sin(k pi r / r_max),
//   int |grad u|^2 dx = 4 pi int_0^rmax |v'|^2 dr = 4 pi (r_max/2) sum lambda_k |c_k|^2.
// Exactly invariant under kinetic_propagate, and spectrally accurate for the
// smooth decaying profiles this code evolves.
inline real gradient_norm_sq(const RadialField& u) {
    if (!u.finite()) throw std::invalid_argument("gradient_norm_sq: non-finite field");
    const auto& g = u.grid();
    const std::size_t n = g.n();
    const auto& r = g.nodes();
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = r[j] * u[j];
    detail::shared_dst(n)->execute(v);
    const real k1 = pi / g.r_max();
    real s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const real kk = k1 * static_cast<real>(k + 1);
        s += kk * kk * std::norm(v[k]);
    }
    const real np1 = static_cast<real>(n + 1);
    return 4.0 * pi * (g.r_max() / 2.0) * s / (np1 * np1);
}

// One-grid propagator: v-hat_k evolves by exp(-i dt lambda_k) with the exact
// continuum eigenvalues lambda_k = (k pi / r_max)^2. The sub-step is unitary,
// so the discrete L^2 norm of v (and hence the quadrature mass) is conserved
// to roundoff, and steps compose exactly.
class KineticPropagator {
  public:
    explicit KineticPropagator(std::shared_ptr<const RadialGrid> grid)
        : grid_(std::move(grid)), dst_(grid_->n()), lambda_(grid_->n()), work_(grid_->n()) {
        const real k1 = pi / grid_->r_max();
        for (std::size_t k = 0; k < grid_->n(); ++k) {
            const real kk = k1 * static_cast<real>(k + 1);
            lambda_[k] = kk * kk;
        }
    }

    const RadialGrid& grid() const { return *grid_; }

    void apply(RadialField& u, real dt) {
        if (!std::isfinite(dt)) throw std::invalid_argument("KineticPropagator: dt not finite");
        if (dt == 0.0) return;
        const std::size_t n = grid_->n();
        const auto& r = grid_->nodes();
        for (std::size_t j = 0; j < n; ++j) work_[j] = r[j] * u[j];
        dst_.execute(work_);
        const real scale = 1.0 / (2.0 * static_cast<real>(n + 1));
        for (std::size_t k = 0; k < n; ++k) {
            const real phase = -dt * lambda_[k];
            work_[k] *= scale * cplx{std::cos(phase), std::sin(phase)};
        }
        dst_.execute(work_);
        for (std::size_t j = 0; j < n; ++j) u[j] = work_[j] / r[j];
    }

  private:
    std::shared_ptr<const RadialGrid> grid_;
    SineTransform dst_;
    std::vector<real> lambda_;
    std::vector<cplx> work_;
};

// Convenience single-shot form.
inline RadialField kinetic_propagate(const RadialField& u, real dt) {
    RadialField out = u;
    KineticPropagator prop(u.grid_ptr());
    prop.apply(out, dt);
    return out;
}

} // namespace inls
