#pragma once

#include <functional>
#include <optional>

#include "convnls/field.hpp"
#include "convnls/params.hpp"
#include "convnls/transform.hpp"

namespace convnls {

/// Radial Fourier multiplier. The evaluator maps |xi| to a real value and is
/// only consulted at nonzero lattice points; the xi = 0 value is stored
/// separately (policy-resolved for singular symbols).
struct MultiplierSymbol {
    std::function<double(double)> radial;
    double zero_mode_value = 0.0;
    bool singular_at_zero = false;

    double at(double abs_xi) const {
        return abs_xi == 0.0 ? zero_mode_value : radial(abs_xi);
    }
};

/// Dispersion relation m(xi) = |xi|^2 + eps |xi|^(-2 beta).
/// Under ZeroOut the xi = 0 value is 0, so the propagator leaves the mean
/// invariant.
MultiplierSymbol dispersion_symbol(const PhysicsParams& p);

/// Convolution-kernel symbol
///   K_hat(xi) = |xi|^(2 beta) / (eps + omega |xi|^(2 beta) + |xi|^(2(1+beta)))
/// with K_hat(0) = 0 exactly (zero-mean kernel).
/// Requires eps > 0 with omega > beta_star, or eps = 0 with omega > 0.
MultiplierSymbol kernel_symbol(const PhysicsParams& p);

/// Applies D^{2s}, the multiplier |xi|^(2s). Negative s is the smoothing
/// family: s = -beta gives L_beta, s = -beta/2 gives L_{beta/2}.
/// For s < 0 the zero mode is resolved by the policy: ZeroOut projects the
/// mean out; RejectNonzeroMean throws NonzeroMean when |mean(u)| > mean_tol.
Field lbeta_apply(const Field& u, double s, const PhysicsParams& p);
Spectrum lbeta_apply(const Spectrum& s_in, double s, const PhysicsParams& p);

/// Pointwise spectral multiplication by sym, or by e^{i t sym(xi)} when
/// phase_time is given (then every coefficient modulus is preserved).
Field apply_multiplier(const Field& u, const MultiplierSymbol& sym,
                       std::optional<double> phase_time = std::nullopt,
                       const PhysicsParams* policy = nullptr);
Spectrum apply_multiplier(const Spectrum& s, const MultiplierSymbol& sym,
                          std::optional<double> phase_time = std::nullopt,
                          const PhysicsParams* policy = nullptr);

/// Cutoff chi: 1 on [-1,1], 0 outside (-2,2), fixed smooth monotone ramp
/// exp(1 - 1/(1 - (|s|-1)^2)) in between (bit-stable for tests).
double chi_cutoff(double s);
/// rho(s) = chi(s) - chi(2s); supp rho = {1/2 <= |s| <= 2}.
double rho_bump(double s);

/// Dyadic Littlewood-Paley projection P_lambda: multiplies the spectrum by
/// rho(|xi|/lambda). lambda must be an exact power of two (element of 2^Z).
Field dyadic_projection(const Field& u, double lambda);
Spectrum dyadic_projection(const Spectrum& s, double lambda);

/// True iff lambda = 2^j for some integer j (exact dyadic).
bool is_dyadic(double lambda);

} // namespace convnls
