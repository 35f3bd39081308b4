#pragma once

#include <atomic>
#include <cstdint>

#include "convnls/errors.hpp"

namespace convnls {

/// Handling of the xi = 0 mode for singular symbols |xi|^(2s), s < 0.
/// The continuum spaces require |xi|^(-beta) u_hat in L^2; on the torus this
/// is approximated by enforcing zero mean.
enum class ZeroModePolicy {
    ZeroOut,          ///< project the mean out, count nontrivial projections
    RejectNonzeroMean ///< error when |mean(u)| exceeds the tolerance
};

struct PhysicsParams {
    double beta = 0.5;
    double eps = 1.0;
    int sigma = +1;  ///< +1 focusing, -1 defocusing
    double omega = 1.0;
    ZeroModePolicy zero_mode_policy = ZeroModePolicy::ZeroOut;
    double mean_tol = 1e-10;

    /// Validates beta in (0, n/2), sigma in {-1, +1}.
    void validate(int dim) const;
};

/// Lower admissibility threshold for omega:
/// beta_star = -(eps * beta^-beta)^(1/(beta+1)) * (1+beta),
/// the negative of min_{r>0} (r^2 + eps r^(-2 beta)).
double beta_star(const PhysicsParams& p);

/// Count of mean projections that actually removed a nontrivial mean
/// (|mean| > mean_tol) under the ZeroOut policy. Process-wide.
std::uint64_t mean_projection_count();
void reset_mean_projection_count();
void note_mean_projection();

} // namespace convnls
