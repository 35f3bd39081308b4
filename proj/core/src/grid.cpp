#include "convnls/grid.hpp"

#include <cmath>

namespace convnls {

namespace {
bool power_of_two(int n) { return n > 1 && (n & (n - 1)) == 0; }
}

GridSpec make_grid(int dim, int points_per_axis, double box_length) {
    if (dim < 1 || dim > 4)
        throw InvalidGrid("grid dimension must be in 1..4, got " + std::to_string(dim));
    if (!power_of_two(points_per_axis))
        throw InvalidGrid("points per axis must be a power of two, got " +
                          std::to_string(points_per_axis));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw InvalidGrid("box length must be positive and finite");

    GridSpec g;
    g.dim_ = dim;
    g.n_ = points_per_axis;
    g.box_ = box_length;
    g.size_ = 1;
    for (int d = 0; d < dim; ++d) g.size_ *= static_cast<std::size_t>(points_per_axis);
    const double h = box_length / points_per_axis;
    g.cell_volume_ = std::pow(h, dim);
    g.box_volume_ = std::pow(box_length, dim);

    auto xi = std::make_shared<std::vector<double>>(points_per_axis);
    auto xi2 = std::make_shared<std::vector<double>>(points_per_axis);
    const double dxi = 2.0 * M_PI / box_length;
    for (int j = 0; j < points_per_axis; ++j) {
        const int k = j < points_per_axis / 2 ? j : j - points_per_axis;
        (*xi)[j] = dxi * k;
        (*xi2)[j] = (*xi)[j] * (*xi)[j];
    }
    g.xi_axis_ = std::move(xi);
    g.xi2_axis_ = std::move(xi2);
    return g;
}

} // namespace convnls
