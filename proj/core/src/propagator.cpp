#include "convnls/propagator.hpp"

#include <cmath>
#include <iostream>

#include "convnls/multipliers.hpp"
#include "convnls/transform.hpp"

namespace convnls {

void EvolveConfig::validate() const {
    if (!(dt > 0.0)) throw BadParams("dt must be positive");
    if (!(t_end >= 0.0)) throw BadParams("t_end must be nonnegative");
    if (monitor_every < 1) throw BadParams("monitor_every must be >= 1");
    if (!(drift_abort > 0.0)) throw BadParams("drift_abort must be positive");
}

Field linear_propagate(const Field& u, double t, const PhysicsParams& p) {
    const MultiplierSymbol m = dispersion_symbol(p);
    return apply_multiplier(u, m, -t, &p);
}

namespace {

// Precomputed per-run tables for the split scheme.
struct StrangTables {
    std::vector<cplx> lin;       // e^{-i dt m(xi)}
    std::vector<unsigned char> keep;  // 2/3-rule mask (1 = keep)
};

StrangTables make_tables(const GridSpec& g, double dt, const PhysicsParams& p,
                         bool dealias) {
    StrangTables t;
    const MultiplierSymbol m = dispersion_symbol(p);
    t.lin.resize(g.size());
    for_each_mode(g, [&](std::size_t i, double xi2) {
        const double v = xi2 == 0.0 ? m.zero_mode_value : m.radial(std::sqrt(xi2));
        t.lin[i] = std::polar(1.0, -dt * v);
    });
    if (dealias) {
        t.keep.assign(g.size(), 1);
        const int n = g.points_per_axis();
        const int kmax = n / 3;
        std::array<int, 4> idx{};
        for (std::size_t flat = 0; flat < g.size(); ++flat) {
            for (int d = 0; d < g.dim(); ++d) {
                const int k = idx[d] < n / 2 ? idx[d] : idx[d] - n;
                if (std::abs(k) > kmax) { t.keep[flat] = 0; break; }
            }
            int d = g.dim() - 1;
            while (d >= 0 && ++idx[d] == n) { idx[d] = 0; --d; }
            if (d < 0) break;
        }
    }
    return t;
}

void nonlinear_phase(std::vector<cplx>& v, double coeff) {
    for (cplx& z : v) z *= std::polar(1.0, coeff * std::norm(z));
}

// One Strang step with the dealias mask folded into the spectral pass; the
// trailing substep's aliasing is removed at the next step's transform (and
// by a final projection after the last step).
void step_inplace(Field& u, const StrangTables& t, double dt, const PhysicsParams& p) {
    nonlinear_phase(u.values, 0.5 * dt * p.sigma);
    Spectrum s = transform(u);
    if (!t.keep.empty()) {
        for (std::size_t i = 0; i < s.coeffs.size(); ++i)
            s.coeffs[i] = t.keep[i] ? s.coeffs[i] * t.lin[i] : cplx{0.0, 0.0};
    } else {
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= t.lin[i];
    }
    u = inverse(s);
    nonlinear_phase(u.values, 0.5 * dt * p.sigma);
}

void final_dealias(Field& u, const StrangTables& t) {
    if (t.keep.empty()) return;
    Spectrum s = transform(u);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
        if (!t.keep[i]) s.coeffs[i] = 0.0;
    u = inverse(s);
}

void linear_only_step(Field& u, const StrangTables& t) {
    Spectrum s = transform(u);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= t.lin[i];
    u = inverse(s);
}

DiagnosticSample sample_state(const Field& u, const PhysicsParams& p, double t) {
    DiagnosticSample d;
    d.t = t;
    d.mass = mass(u);
    d.momentum = momentum(u);
    const EnergyReport e = energy(u, p);
    d.energy = e.total;
    d.energy0 = e.energy0;
    const NormReport n = xbeta_norms(u, p);
    d.xbeta = n.xbeta;
    d.xbeta_dot = n.xbeta_dot;
    return d;
}

void warn_phase_wrap(const GridSpec& g, double dt, const PhysicsParams& p) {
    const double ximax2 = g.dim() * g.max_axis_frequency() * g.max_axis_frequency();
    const double ximin = 2.0 * M_PI / g.box_length();
    double mmax = ximax2;
    if (p.eps != 0.0)
        mmax += std::abs(p.eps) * std::pow(ximin, -2.0 * p.beta);
    if (dt * mmax >= 2.0 * M_PI * 1e3)
        std::cerr << "convnls: warning: dt*max|m| = " << dt * mmax
                  << " exceeds the phase-wrap sanity bound\n";
}

} // namespace

Field strang_step(const Field& u, double dt, const PhysicsParams& p, bool dealias) {
    if (!(dt > 0.0)) throw BadParams("strang_step: dt must be positive");
    p.validate(u.grid.dim());
    StrangTables t = make_tables(u.grid, dt, p, dealias);
    Field out = u;
    step_inplace(out, t, dt, p);
    final_dealias(out, t);
    return out;
}

EvolveResult evolve(const Field& u0, const PhysicsParams& p, const EvolveConfig& cfg) {
    cfg.validate();
    p.validate(u0.grid.dim());
    u0.check_finite();
    if (p.eps < 0.0)
        std::cerr << "convnls: note: eps < 0 run (flow still unitary); "
                     "global-boundedness thresholds do not apply\n";
    warn_phase_wrap(u0.grid, cfg.dt, p);

    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    if (std::abs(nsteps * cfg.dt - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end))
        std::cerr << "convnls: note: t_end is not an integer number of steps; "
                     "integrating to " << nsteps * cfg.dt << "\n";

    StrangTables tables = make_tables(u0.grid, cfg.dt, p, cfg.dealias && cfg.nonlinear);

    DiagnosticSeries series;
    series.dim = u0.grid.dim();
    Field u = u0;
    DiagnosticSample s0 = sample_state(u, p, 0.0);
    const double mass0 = s0.mass;
    series.samples.push_back(s0);

    for (long k = 1; k <= nsteps; ++k) {
        if (cfg.nonlinear)
            step_inplace(u, tables, cfg.dt, p);
        else
            linear_only_step(u, tables);
        if (cfg.nonlinear && k == nsteps) final_dealias(u, tables);
        if (k % cfg.monitor_every == 0 || k == nsteps) {
            const double t = k * cfg.dt;
            if (!u.is_finite())
                throw NonFiniteAbort("non-finite state at t = " + std::to_string(t),
                                    series, t);
            DiagnosticSample s = sample_state(u, p, t);
            series.samples.push_back(s);
            if (mass0 > 0.0 && std::abs(s.mass - mass0) / mass0 > cfg.drift_abort)
                throw ResolutionLoss("relative mass drift " +
                                         std::to_string(std::abs(s.mass - mass0) / mass0) +
                                         " exceeds abort threshold at t = " +
                                         std::to_string(t),
                                     series, t);
        }
    }
    return EvolveResult{std::move(u), std::move(series)};
}

DecayProbeResult decay_probe(double lambda, const PhysicsParams& p,
                             const GridSpec& grid, const std::vector<double>& times) {
    if (!is_dyadic(lambda)) throw BadParams("decay_probe: lambda must be dyadic");
    if (lambda < 8.0) throw BadParams("decay_probe: lambda must be >= 8");
    if (times.size() < 2) throw BadParams("decay_probe: need at least two times");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw BadParams("decay_probe: times must be positive");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw BadParams("decay_probe: times must be strictly increasing");
    }
    if (grid.max_axis_frequency() < 2.0 * lambda)
        throw BadParams("decay_probe: grid does not resolve 2*lambda");
    const double tmax = times.back();
    if (2.0 * lambda * tmax >= 0.5 * grid.box_length())
        throw BoxExit("decay_probe: group speed bound 2*lambda*t < L/2 violated");

    DecayProbeResult r;
    r.lambda = lambda;
    r.times = times;
    r.outside_paper_hypothesis = !(p.beta < 1.0);

    // band-limited delta: coefficients rho(|xi|/lambda) * (2 pi / L)^n, the
    // Riemann weight that makes the synthesized field approximate the
    // continuum integral.
    const double w = std::pow(2.0 * M_PI / grid.box_length(), grid.dim());
    Spectrum band = Spectrum::zero(grid);
    for_each_mode(grid, [&](std::size_t i, double xi2) {
        band.coeffs[i] = w * rho_bump(std::sqrt(xi2) / lambda);
    });

    const MultiplierSymbol m = dispersion_symbol(p);
    std::vector<double> phase(grid.size());
    for_each_mode(grid, [&](std::size_t i, double xi2) {
        phase[i] = xi2 == 0.0 ? m.zero_mode_value : m.radial(std::sqrt(xi2));
    });

    Spectrum work = band;
    for (double t : times) {
        for (std::size_t i = 0; i < band.coeffs.size(); ++i)
            work.coeffs[i] = band.coeffs[i] * std::polar(1.0, t * phase[i]);
        const Field u = inverse(work);
        double sup = 0.0;
        for (const cplx& z : u.values) sup = std::max(sup, std::abs(z));
        if (!(sup > 0.0)) throw Error("decay_probe: vanishing probe amplitude");
        r.sup_abs.push_back(sup);
    }

    // least squares slope of log sup vs log t
    const std::size_t n = times.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(times[i]);
        const double y = std::log(r.sup_abs[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    r.fitted_slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - r.fitted_slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::log(r.sup_abs[i]) -
                         (intercept + r.fitted_slope * std::log(times[i]));
        rss += e * e;
    }
    r.fit_residual = std::sqrt(rss / n);
    return r;
}

} // namespace convnls
