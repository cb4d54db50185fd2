// Radial grid on (0, r_max) with volume quadrature for 3D radial integrals,
// complex radial fields, and difference operators on the v = r*u representation.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "inls/common.hpp"

namespace inls {

// Uniform interior nodes r_j = j*dr, j = 1..n, dr = r_max/(n+1).
// The endpoints r = 0 and r = r_max are Dirichlet points of the v = r*u
// representation and carry no quadrature weight; the weights realize
// int f dx = 4*pi * int f(r) r^2 dr for decaying radial integrands.
class RadialGrid {
  public:
    RadialGrid(real r_max, std::size_t n) : r_max_(r_max), n_(n) {
        if (!(r_max > 0.0)) throw std::invalid_argument("RadialGrid: r_max must be positive");
        if (n < 8) throw std::invalid_argument("RadialGrid: n must be at least 8");
        dr_ = r_max / static_cast<real>(n + 1);
        nodes_.resize(n);
        weights_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            nodes_[j] = static_cast<real>(j + 1) * dr_;
            weights_[j] = 4.0 * pi * nodes_[j] * nodes_[j] * dr_;
        }
    }

    real r_max() const { return r_max_; }
    std::size_t n() const { return n_; }
    real dr() const { return dr_; }
    const std::vector<real>& nodes() const { return nodes_; }
    const std::vector<real>& weights() const { return weights_; }
    real node(std::size_t j) const { return nodes_[j]; }

    bool same_as(const RadialGrid& other) const {
        return n_ == other.n_ && r_max_ == other.r_max_;
    }

    // Quadrature of a real integrand sampled at the nodes.
    real integrate(std::span<const real> f) const {
        if (f.size() != n_) throw std::invalid_argument("integrate: length mismatch");
        real s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            if (!std::isfinite(f[j])) throw std::invalid_argument("integrate: non-finite sample");
            s += weights_[j] * f[j];
        }
        return s;
    }

  private:
    real r_max_;
    std::size_t n_;
    real dr_;
    std::vector<real> nodes_;
    std::vector<real> weights_;
};

inline std::shared_ptr<const RadialGrid> build_grid(real r_max, std::size_t n) {
    return std::make_shared<const RadialGrid>(r_max, n);
}

// Complex radial profile sampled at the grid nodes.
class RadialField {
  public:
    explicit RadialField(std::shared_ptr<const RadialGrid> grid)
        : grid_(std::move(grid)), values_(grid_->n(), cplx{0.0, 0.0}) {}

    RadialField(std::shared_ptr<const RadialGrid> grid, std::vector<cplx> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_->n())
            throw std::invalid_argument("RadialField: length mismatch with grid");
    }

    template <class F>
    static RadialField sample(std::shared_ptr<const RadialGrid> grid, F&& f) {
        std::vector<cplx> vals(grid->n());
        for (std::size_t j = 0; j < grid->n(); ++j) vals[j] = f(grid->node(j));
        return RadialField(std::move(grid), std::move(vals));
    }

    const RadialGrid& grid() const { return *grid_; }
    std::shared_ptr<const RadialGrid> grid_ptr() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    cplx operator[](std::size_t j) const { return values_[j]; }
    cplx& operator[](std::size_t j) { return values_[j]; }

    bool finite() const {
        return std::all_of(values_.begin(), values_.end(), [](cplx z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    RadialField& operator*=(real c) {
        for (auto& z : values_) z *= c;
        return *this;
    }

    RadialField scaled(real c) const {
        RadialField out = *this;
        out *= c;
        return out;
    }

  private:
    std::shared_ptr<const RadialGrid> grid_;
    std::vector<cplx> values_;
};

// L^2 mass int |u|^2 dx.
inline real mass(const RadialField& u) {
    const auto& g = u.grid();
    const auto& w = g.weights();
    real s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += w[j] * std::norm(u[j]);
    return s;
}

// d/dr u at the nodes, via centered differences of v = r*u with the
// Dirichlet values v(0) = v(r_max) = 0 supplying the end stencils.
inline std::vector<cplx> radial_derivative(const RadialField& u) {
    const auto& g = u.grid();
    const std::size_t n = g.n();
    const real dr = g.dr();
    const auto& r = g.nodes();
    std::vector<cplx> du(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx vm = (j == 0) ? cplx{0.0, 0.0} : r[j - 1] * u[j - 1];
        const cplx vp = (j + 1 == n) ? cplx{0.0, 0.0} : r[j + 1] * u[j + 1];
        const cplx dv = (vp - vm) / (2.0 * dr);
        du[j] = (dv - u[j]) / r[j];
    }
    return du;
}

} // namespace inls
