#pragma once

#include <optional>
#include <vector>

#include "convnls/field.hpp"
#include "convnls/functionals.hpp"
#include "convnls/params.hpp"

namespace convnls {

enum class SolveTarget {
    Standing,  ///< omega*phi - Lap phi + eps*L_beta phi = phi^3
    ZeroMass   ///< L_beta phi - Lap phi = phi^(p+1)
};

struct GroundState {
    Field profile;          ///< real-valued converged profile
    PhysicsParams params;
    SolveTarget target = SolveTarget::Standing;
    double p_exponent = 2.0;
    double residual = 0.0;  ///< spectral residual of the (mean-projected) equation
    NormReport norms;
    int iterations = 0;
    double nehari = 0.0;            ///< <M phi, phi> - ||phi||_{p+2}^{p+2}
    double stabilizer_defect = 0.0; ///< |S - 1| at convergence
    double mean_abs = 0.0;          ///< |integral of phi| / volume
};

struct SolveOptions {
    SolveTarget target = SolveTarget::Standing;
    double p_exponent = 2.0;     ///< nonlinearity |phi|^p phi; only used for ZeroMass
    double tol = 1e-12;
    int max_iter = 400;
    std::optional<Field> seed;   ///< default: phi0 (mean-projected when singular)
};

/// Petviashvili iteration phi <- S^gamma M^{-1}(|phi|^p phi) with the
/// stabilizing factor S = <M phi, phi>/<|phi|^p phi, phi> and gamma = (p+2)/(p+1).
/// The spectral coefficients are the primary iteration state. Under the
/// ZeroOut policy with a singular M the solved equation is the mean-projected
/// one and every iterate has exactly zero mean.
GroundState petviashvili_solve(const PhysicsParams& p, const GridSpec& grid,
                               const SolveOptions& opts);
GroundState petviashvili_solve(const PhysicsParams& p, const GridSpec& grid,
                               SolveTarget target, double tol, int max_iter,
                               std::optional<Field> seed = std::nullopt);

enum class ProfileKind { Phi0, PsiNLS, WCritical };

/// Closed-form profiles: Phi0 = sqrt(2 omega) sech(sqrt(omega) x) (n = 1);
/// WCritical = (1 + |x|^2/8)^{-1} (n = 4). PsiNLS with n >= 2 is computed by
/// petviashvili_solve with eps = 0 (through the profile provider).
Field classical_profiles(ProfileKind kind, double omega, const GridSpec& grid,
                         int p_exponent = 2);

struct SweepEntry {
    double eps = 0.0;
    bool converged = false;
    std::string error;              ///< set when the solve failed
    double m_eps = 0.0;             ///< I_eps(phi) / ||phi||_L4^2
    double h1_distance_to_phi0 = 0.0;
    double lbeta_term = 0.0;        ///< eps * ||L_{beta/2} phi||^2
    GroundState state;
};

struct SweepRecord {
    std::vector<SweepEntry> entries;
    bool all_converged() const;
    /// m_eps nonincreasing along the (decreasing) eps list, with slack.
    bool m_monotone(double slack = 1e-10) const;
};

/// Solves the standing problem along a decreasing eps list at fixed omega and
/// records m_eps, the H1 distance to phi0 (between mean-zero representatives,
/// after peak centering and sign alignment) and eps*||L_{beta/2} phi||^2.
/// Solver failures are recorded per entry; the sweep continues.
SweepRecord epsilon_sweep(double omega, double beta, const GridSpec& grid,
                          const std::vector<double>& eps_list,
                          double tol = 1e-11, int max_iter = 600, int jobs = 1);

struct TailFit {
    double exponent = 0.0;   ///< algebraic decay rate (positive)
    double intercept = 0.0;
    double residual = 0.0;   ///< RMS residual in log-log space
};

/// Least-squares slope of log|phi| vs log r over r in [window_min, window_max].
/// Requires the window inside (0, L/2) and the profile decayed below 1e-3 of
/// its peak at window_min. Throws WindowTooNoisy when the fit residual
/// exceeds max_residual (periodization contamination).
TailFit tail_decay_fit(const Field& profile, double window_min, double window_max,
                       double max_residual = 0.5);

/// H1 distance between mean-zero representatives after peak centering and
/// sign alignment (the alignment used by epsilon_sweep).
double h1_distance_to_phi0(const Field& phi, double omega);

} // namespace convnls
