#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "convnls/errors.hpp"

namespace convnls {

/// Periodic box [-L/2, L/2)^dim sampled on N points per axis.
///
/// The frequency lattice per axis is xi_k = 2*pi*k/L with
/// k in {-N/2, ..., N/2-1}, stored in FFT order (0..N/2-1, -N/2..-1).
/// Frequencies are physical wavenumbers, not integer indices, so symbols
/// involving |xi|^(-2*beta) are resolution independent.
class GridSpec {
public:
    GridSpec() = default;

    int dim() const { return dim_; }
    int points_per_axis() const { return n_; }
    double box_length() const { return box_; }

    /// Total number of lattice points N^dim.
    std::size_t size() const { return size_; }
    /// Cell volume h = (L/N)^dim.
    double cell_volume() const { return cell_volume_; }
    /// Box volume L^dim.
    double box_volume() const { return box_volume_; }
    /// Grid spacing L/N along each axis.
    double spacing() const { return box_ / n_; }

    /// Physical coordinate of index j along one axis: -L/2 + j*L/N.
    double coord(int j) const { return -0.5 * box_ + j * spacing(); }

    /// Per-axis frequency table in FFT storage order (memoized).
    const std::vector<double>& xi_axis() const { return *xi_axis_; }
    /// Per-axis squared frequencies, same order (memoized).
    const std::vector<double>& xi2_axis() const { return *xi2_axis_; }

    /// Largest |xi| along a single axis: pi*N/L (the Nyquist mode).
    double max_axis_frequency() const { return M_PI * n_ / box_; }

    bool operator==(const GridSpec& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && box_ == o.box_;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    friend GridSpec make_grid(int dim, int points_per_axis, double box_length);

private:
    int dim_ = 0;
    int n_ = 0;
    double box_ = 0.0;
    std::size_t size_ = 0;
    double cell_volume_ = 0.0;
    double box_volume_ = 0.0;
    std::shared_ptr<const std::vector<double>> xi_axis_;
    std::shared_ptr<const std::vector<double>> xi2_axis_;
};

/// Builds a grid; N must be a power of two, dim in 1..4, L > 0.
GridSpec make_grid(int dim, int points_per_axis, double box_length);

/// Row-major mode iteration with incrementally accumulated |xi|^2.
/// Calls f(flat_index, xi2) for every lattice point.
template <class F>
void for_each_mode(const GridSpec& g, F&& f) {
    const int dim = g.dim();
    const int n = g.points_per_axis();
    const std::vector<double>& q = g.xi2_axis();
    if (dim == 1) {
        for (int j = 0; j < n; ++j) f(static_cast<std::size_t>(j), q[j]);
        return;
    }
    std::array<int, 4> idx{};
    std::array<double, 5> partial{};
    for (int d = 0; d < dim; ++d) partial[d + 1] = partial[d] + q[0];
    const std::size_t total = g.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        f(flat, partial[dim]);
        int d = dim - 1;
        while (d >= 0 && ++idx[d] == n) { idx[d] = 0; --d; }
        if (d < 0) break;
        for (int e = d; e < dim; ++e) partial[e + 1] = partial[e] + q[idx[e]];
    }
}

/// As for_each_mode, but provides the frequency vector components instead.
template <class F>
void for_each_mode_vec(const GridSpec& g, F&& f) {
    const int dim = g.dim();
    const int n = g.points_per_axis();
    const std::vector<double>& xi = g.xi_axis();
    std::array<int, 4> idx{};
    std::array<double, 4> v{};
    for (int d = 0; d < dim; ++d) v[d] = xi[0];
    const std::size_t total = g.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        f(flat, v);
        int d = dim - 1;
        while (d >= 0 && ++idx[d] == n) { idx[d] = 0; v[d] = xi[0]; --d; }
        if (d < 0) break;
        v[d] = xi[idx[d]];
    }
}

} // namespace convnls
