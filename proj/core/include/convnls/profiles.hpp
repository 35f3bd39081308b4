#pragma once

#include <optional>
#include <string>

#include "convnls/ground_state.hpp"

namespace convnls {

/// Reference norms of a cached profile.
struct ProfileNorms {
    double mass = 0.0;      ///< ||.||_L2^2
    double gradsq = 0.0;    ///< ||grad .||^2
    double l4_4 = 0.0;      ///< ||.||_L4^4
    double energy0 = 0.0;   ///< 1/2 gradsq - 1/4 l4_4 (focusing)
    double lbetasq = 0.0;   ///< ||L_{beta/2} .||^2 (beta-dependent entries)
    double xbeta_dot_sq = 0.0;
    double energy = 0.0;    ///< full energy at eps = 1, sigma = +1
};

/// Computes and caches the reference profiles (psi, W, Q*) and their norms in
/// a JSON constants store keyed by parameters + grid. The store path comes
/// from CONVNLS_CONSTANTS_STORE or defaults to "convnls_constants.json" in
/// the working directory.
class ProfileProvider {
public:
    explicit ProfileProvider(std::optional<std::string> path = std::nullopt);

    const std::string& store_path() const { return path_; }

    /// Ground state of -Lap psi + psi = psi^(p+1) in dimension n; the n = 4
    /// p = 2 case is energy-critical and unsupported here (use w_norms).
    ProfileNorms psi_norms(int n, int p = 2);

    /// Norms of W(x) = (1 + |x|^2/8)^{-1} in R^4 by adaptive radial
    /// quadrature; mass is infinite and reported as NaN.
    ProfileNorms w_norms();

    /// Ground state Q* of L_beta phi - Lap phi = phi^(p+1); zero-mean.
    /// Asserts 4 E(Q*) = ||Q*||_Xdot^2 to 1e-6 before the entry is trusted.
    ProfileNorms qstar_norms(double beta, int n, int p = 2);

    /// Freshly computed (or closed-form) profile fields for run setup.
    Field psi_profile(int n, int p = 2);
    Field qstar_profile(double beta, int n, int p = 2);

    /// Default solve grids used for the cached profiles.
    static GridSpec psi_grid(int n);
    static GridSpec qstar_grid(int n);

private:
    std::string path_;
};

} // namespace convnls
