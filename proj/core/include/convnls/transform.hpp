#pragma once

#include "convnls/field.hpp"

namespace convnls {

/// Forward DFT. Coefficients are true Fourier coefficients with respect to
/// e^{i xi.x} on the box [-L/2, L/2)^n:
///
///   u_hat(k) = N^{-n} * sum_x u(x) e^{-i xi_k . x}
///
/// The forward transform carries the 1/N^n normalization; the inverse sums
/// the series with no prefactor, so inverse(transform(u)) == u and the
/// Plancherel identity reads h * sum_x |u|^2 = L^n * sum_k |u_hat|^2.
Spectrum transform(const Field& u);

/// Inverse DFT, u(x) = sum_k u_hat(k) e^{i xi_k . x}.
Field inverse(const Spectrum& s);

} // namespace convnls
