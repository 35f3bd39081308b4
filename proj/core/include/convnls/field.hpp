#pragma once

#include <complex>
#include <vector>

#include "convnls/grid.hpp"

namespace convnls {

using cplx = std::complex<double>;

/// Complex-valued state in physical space, row-major over the grid.
struct Field {
    GridSpec grid;
    std::vector<cplx> values;

    Field() = default;
    Field(GridSpec g, std::vector<cplx> v);

    /// Constructs without the finiteness scan (used by internal ops whose
    /// inputs were already validated; evolve re-checks at monitor cadence).
    static Field unchecked(GridSpec g, std::vector<cplx> v);

    static Field zero(const GridSpec& g);

    /// Throws NonFinite if any entry is NaN or infinite.
    void check_finite() const;
    bool is_finite() const;
};

/// Fourier-side state, coefficients in FFT storage order over the lattice.
struct Spectrum {
    GridSpec grid;
    std::vector<cplx> coeffs;

    Spectrum() = default;
    Spectrum(GridSpec g, std::vector<cplx> c);
    static Spectrum zero(const GridSpec& g);

    /// Mean of the physical-space field (the xi = 0 coefficient).
    cplx mean() const { return coeffs.empty() ? cplx{} : coeffs[0]; }
};

/// Samples f(x) on the grid, x the physical coordinate vector.
template <class F>
Field sample_field(const GridSpec& g, F&& f) {
    std::vector<cplx> v(g.size());
    const int dim = g.dim();
    const int n = g.points_per_axis();
    std::array<int, 4> idx{};
    std::array<double, 4> x{};
    for (int d = 0; d < dim; ++d) x[d] = g.coord(0);
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        v[flat] = f(x);
        int d = dim - 1;
        while (d >= 0 && ++idx[d] == n) { idx[d] = 0; x[d] = g.coord(0); --d; }
        if (d < 0) break;
        x[d] = g.coord(idx[d]);
    }
    return Field(g, std::move(v));
}

} // namespace convnls
