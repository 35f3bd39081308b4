#pragma once

#include <map>
#include <optional>
#include <string>

#include "convnls/field.hpp"
#include "convnls/profiles.hpp"
#include "convnls/propagator.hpp"

namespace convnls {

enum class ThresholdCase {
    Defocusing,
    N1,
    N2Mass,
    N3Pair,
    N4Critical,
    ZeroMassPair,
    Interpolated
};

std::string to_string(ThresholdCase c);

/// Outcome of a global-boundedness criterion. satisfied is true iff every
/// margin is strictly positive.
struct ThresholdReport {
    ThresholdCase case_id = ThresholdCase::Defocusing;
    bool satisfied = false;
    std::map<std::string, double> margins;         ///< rhs - lhs per inequality
    std::map<std::string, double> constants_used;
};

/// Sharp Gagliardo-Nirenberg constant
///   rho0 = (2(p+2)/(np)) (2(p+2)/(np) - 1)^(np/4 - 1) ||psi||_L2^{-p}.
double rho0(int n, double p, double psi_l2_norm);

struct ZeroMassConstants {
    double c_beta_n_p = 0.0;   ///< closed form, < 1 off the critical endpoint
    double rho_star_inv = 0.0; ///< C_{beta,n,p} ||Q*||_Xdot^p
};

ZeroMassConstants zero_mass_constants(double beta, int n, double p,
                                      const ProfileNorms& qstar);

struct BegoutTrap {
    double a = 0.0;
    double b = 0.0;
    double q = 0.0;
    double theta = 0.0;  ///< (b q)^(-1/(q-1))
};

BegoutTrap begout_trap(double a, double b, double q);

struct TrapCheck {
    bool trapped = false;
    std::optional<std::size_t> first_violation;
};

/// True iff G(0) < theta, a < (1 - 1/q) theta, and every sample < theta.
TrapCheck assert_trapped(const BegoutTrap& trap, const std::vector<double>& series);

/// Evaluates the global-boundedness criterion for the given case.
/// Requires eps > 0 (the potential term is uncontrolled otherwise).
ThresholdReport check_global(ThresholdCase case_id, const Field& u0,
                             const PhysicsParams& p, ProfileProvider& profiles);

/// Case picked from (sigma, dim): Defocusing, or N1/N2Mass/N3Pair/N4Critical.
ThresholdReport check_global(const Field& u0, const PhysicsParams& p,
                             ProfileProvider& profiles);

/// Interpolated criterion with parameters kappa, m (Bégout primitives
/// G(0) < theta and s < (1-1/q) theta; k = n + 4 kappa, q = k/2).
/// Requires 0 <= m/2 <= 1 - kappa - n/4 and k > 2.
ThresholdReport check_interpolated(const Field& u0, const PhysicsParams& p,
                                   double kappa, double m_exp,
                                   ProfileProvider& profiles);

/// Evolves u0 and asserts the case's trapped invariant at every sample,
/// recording the margin trajectory in the threshold_margin column. Throws
/// TrapViolation (with timestamp) if a satisfied hypothesis is violated;
/// when report.satisfied is false the run proceeds for falsification
/// experiments and violations are only recorded.
DiagnosticSeries monitor_run(const Field& u0, const PhysicsParams& p,
                             const EvolveConfig& cfg, const ThresholdReport& report,
                             ProfileProvider& profiles);

/// 4-D lattice Riemann sums of |grad W|^2 and W^4 (analytic integrands
/// sampled on the N^4 lattice of box length L), evaluated exactly via radial
/// shell aggregation. Used to cross-check the radial-quadrature constants.
struct WGridSums {
    double gradsq = 0.0;
    double l4_4 = 0.0;
};
WGridSums w_grid_sums(int points_per_axis, double box_length);

} // namespace convnls
