#include "convnls/params.hpp"

#include <cmath>
#include <string>

namespace convnls {

void PhysicsParams::validate(int dim) const {
    // inclusive upper edge: the n = 1 reference experiments run at beta = 1/2
    if (!(beta > 0.0) || !(beta <= 0.5 * dim))
        throw BadParams("beta must lie in (0, n/2]; got beta=" + std::to_string(beta) +
                        " for n=" + std::to_string(dim));
    if (sigma != 1 && sigma != -1)
        throw BadParams("sigma must be +1 or -1");
    if (!std::isfinite(eps) || !std::isfinite(omega))
        throw BadParams("eps and omega must be finite");
    if (!(mean_tol > 0.0)) throw BadParams("mean tolerance must be positive");
}

double beta_star(const PhysicsParams& p) {
    if (!(p.eps > 0.0)) throw BadParams("beta_star requires eps > 0");
    if (!(p.beta > 0.0)) throw BadParams("beta_star requires beta > 0");
    return -std::pow(p.eps * std::pow(p.beta, -p.beta), 1.0 / (p.beta + 1.0)) *
           (1.0 + p.beta);
}

namespace {
std::atomic<std::uint64_t> g_mean_projections{0};
}

std::uint64_t mean_projection_count() { return g_mean_projections.load(); }
void reset_mean_projection_count() { g_mean_projections.store(0); }
void note_mean_projection() { g_mean_projections.fetch_add(1); }

} // namespace convnls
