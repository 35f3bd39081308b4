#pragma once

#include <memory>
#include <vector>

#include "convnls/diagnostics.hpp"
#include "convnls/field.hpp"
#include "convnls/functionals.hpp"
#include "convnls/params.hpp"

namespace convnls {

struct EvolveConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int monitor_every = 100;
    bool dealias = true;          ///< 2/3-rule truncation of the cubic term
    double drift_abort = 1e-6;    ///< relative mass-drift abort threshold
    bool nonlinear = true;        ///< disable to reduce evolve to the linear flow

    void validate() const;
};

struct EvolveResult {
    Field final;
    DiagnosticSeries series;
};

/// Exact flow of the linear equation: spectrum multiplied by e^{-i t m(xi)}.
/// The mean mode evolves with phase e^{-i t zero_mode_value} (0 under ZeroOut).
Field linear_propagate(const Field& u, double t, const PhysicsParams& p);

/// One Strang step: half nonlinear, full linear, half nonlinear.
/// The nonlinear substep is exact: u <- u * exp(i sigma |u|^2 dt).
Field strang_step(const Field& u, double dt, const PhysicsParams& p,
                  bool dealias = false);

/// Split-step integration with conservation monitoring. Aborts with
/// ResolutionLoss when the relative mass drift exceeds cfg.drift_abort and
/// with NonFinite on overflow; both carry the partial series.
EvolveResult evolve(const Field& u0, const PhysicsParams& p, const EvolveConfig& cfg);

/// Errors carrying the partial diagnostic series collected before the abort.
class ResolutionLoss : public Error {
public:
    ResolutionLoss(const std::string& what, DiagnosticSeries s, double t)
        : Error(what), series(std::move(s)), time(t) {}
    DiagnosticSeries series;
    double time;
};
class NonFiniteAbort : public NonFinite {
public:
    NonFiniteAbort(const std::string& what, DiagnosticSeries s, double t)
        : NonFinite(what), series(std::move(s)), time(t) {}
    DiagnosticSeries series;
    double time;
};

struct DecayProbeResult {
    double lambda = 0.0;
    std::vector<double> times;
    std::vector<double> sup_abs;   ///< sup_x |I_lambda(x, t)|
    double fitted_slope = 0.0;     ///< least squares of log sup_abs vs log t
    double fit_residual = 0.0;     ///< RMS residual of the fit
    bool outside_paper_hypothesis = false;  ///< set when beta >= 1
};

/// Frequency-localized dispersive-decay probe:
///   I_lambda(x, t) = int e^{i(x.xi + t m(xi))} rho(|xi|/lambda) dxi
/// evaluated by propagating the band-limited delta and maximizing over the
/// grid. Requires lambda >= 8, a grid resolving 2*lambda, and times inside
/// the box-exit bound 2*lambda*t < L/2.
DecayProbeResult decay_probe(double lambda, const PhysicsParams& p,
                             const GridSpec& grid, const std::vector<double>& times);

} // namespace convnls
