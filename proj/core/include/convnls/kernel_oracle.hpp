#pragma once

#include <complex>
#include <vector>

#include "convnls/params.hpp"

namespace convnls {

struct OracleResult {
    double value = 0.0;
    double quad_error = 0.0;                 ///< quadrature error estimate
    std::vector<std::complex<double>> poles; ///< first-quadrant denominator zeros
};

/// One-dimensional kernel oracle: evaluates
///
///   L_beta K_beta(x) = int_0^inf cos(x*xi) / (eps + omega*xi^(2b) + xi^(2b+2)) dxi
///
/// by rotating the contour to the positive imaginary axis. The rotation
/// yields the exponentially damped branch integral
///
///   int_0^inf sin(b*pi) A(y) e^{-x y} / (eps^2 + A^2 + 2 eps A cos(b*pi)) dy,
///   A(y) = (omega - y^2) y^(2b),
///
/// plus 2*pi*Re[i e^{i x z0} / d'(z0)] for every zero z0 of
/// d(z) = eps + omega z^(2b) + z^(2b+2) in the open first quadrant (simple
/// poles crossed by the rotation; located by Newton from a sector grid).
/// The denominator above is |eps + A e^{i b pi}|^2, strictly positive for
/// 0 < b < 1.
///
/// Requires n = 1 context, 0 < beta <= 1/2, eps > 0, omega > 0. The value is
/// normalized so that x^(2b+1) * value -> sin(b*pi)*Gamma(2b+1)*omega/eps^2.
OracleResult residue_kernel_oracle(double x, const PhysicsParams& p);

/// Zeros of eps + omega z^(2 beta) + z^(2 beta + 2) in the open first
/// quadrant (principal branch). All zeros satisfy |z| <= max(1, sqrt(eps+omega)).
std::vector<std::complex<double>> denominator_poles(const PhysicsParams& p);

} // namespace convnls
