#include "convnls/ground_state.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <cstdio>
#include <limits>

#include "convnls/multipliers.hpp"
#include "convnls/transform.hpp"

namespace convnls {

namespace {

// Compensated accumulator: the solver's stabilizing factor is a ratio of
// O(N)-term reductions whose plain-summation noise otherwise sets the
// residual floor well above 1e-12 on 3-D grids.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double get() const { return s; }
};

// Fourier symbol of the positive operator M for the two targets; infinity
// marks the killed zero mode (singular symbol under ZeroOut).
std::vector<double> operator_symbol(const PhysicsParams& p, const GridSpec& g,
                                    SolveTarget target) {
    std::vector<double> m(g.size());
    const double tb = -2.0 * p.beta;
    const bool standing = target == SolveTarget::Standing;
    const double eps = standing ? p.eps : 1.0;
    const double omega = standing ? p.omega : 0.0;
    for_each_mode(g, [&](std::size_t i, double xi2) {
        if (xi2 == 0.0) {
            m[i] = eps != 0.0 ? std::numeric_limits<double>::infinity() : omega;
            return;
        }
        m[i] = omega + xi2 + (eps != 0.0 ? eps * std::pow(std::sqrt(xi2), tb) : 0.0);
    });
    return m;
}

Field default_seed(const PhysicsParams& p, const GridSpec& g, SolveTarget target) {
    const double omega = target == SolveTarget::Standing && p.omega > 0.0 ? p.omega : 1.0;
    if (g.dim() == 1) return classical_profiles(ProfileKind::Phi0, omega, g);
    // radial gaussian, amplitude tuned per dimension for the cubic problems
    const double amp = g.dim() == 2 ? 2.0 : (g.dim() == 3 ? 4.3 : 1.0);
    return sample_field(g, [&](const std::array<double, 4>& x) {
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) r2 += x[d] * x[d];
        return cplx{amp * std::exp(-r2 / 1.2), 0.0};
    });
}

double phys_inner_power(const Field& u, double p_exp) {
    // h * sum |u|^(p+2): the pairing <|u|^p u, u> for real u
    KahanSum acc;
    if (p_exp == 2.0) {
        for (const cplx& z : u.values) {
            const double v = z.real() * z.real();
            acc.add(v * v);
        }
    } else {
        for (const cplx& z : u.values) acc.add(std::pow(std::abs(z.real()), p_exp + 2.0));
    }
    return acc.get() * u.grid.cell_volume();
}

} // namespace

GroundState petviashvili_solve(const PhysicsParams& p, const GridSpec& grid,
                               const SolveOptions& opts) {
    p.validate(grid.dim());
    if (!(opts.tol > 0.0)) throw BadParams("solver tolerance must be positive");
    if (opts.max_iter < 1) throw BadParams("max_iter must be >= 1");
    if (opts.target == SolveTarget::Standing) {
        if (p.eps < 0.0) throw BadParams("standing-wave solve requires eps >= 0");
        if (p.eps > 0.0 && !(p.omega > beta_star(p)))
            throw BadParams("standing-wave solve requires omega > beta_star");
        if (p.eps == 0.0 && !(p.omega > 0.0))
            throw BadParams("eps = 0 standing-wave solve requires omega > 0");
    }
    const double p_exp = opts.target == SolveTarget::ZeroMass ? opts.p_exponent : 2.0;
    if (!(p_exp > 0.0)) throw BadParams("nonlinearity exponent must be positive");
    const double gamma = (p_exp + 2.0) / (p_exp + 1.0);

    const std::vector<double> msym = operator_symbol(p, grid, opts.target);
    const bool project = !std::isfinite(msym[0]);

    Field seed = opts.seed ? *opts.seed : default_seed(p, grid, opts.target);
    if (seed.grid != grid) throw InconsistentState("seed grid mismatch");
    // solver works on real profiles
    for (cplx& z : seed.values) z = cplx{z.real(), 0.0};
    Spectrum state = transform(seed);
    if (project) state.coeffs[0] = 0.0;

    const double vol = grid.box_volume();
    double residual = std::numeric_limits<double>::infinity();
    double stab_defect = std::numeric_limits<double>::infinity();
    int iters = 0;
    Field phi = Field::zero(grid);

    for (int it = 1; it <= opts.max_iter; ++it) {
        iters = it;
        phi = inverse(state);
        for (cplx& z : phi.values) z = cplx{z.real(), 0.0};

        // w = |phi|^p phi
        Field w = phi;
        if (p_exp == 2.0) {
            for (cplx& z : w.values) {
                const double v = z.real();
                z = cplx{v * v * v, 0.0};
            }
        } else {
            for (cplx& z : w.values) {
                const double v = z.real();
                z = cplx{std::pow(std::abs(v), p_exp) * v, 0.0};
            }
        }
        Spectrum what = transform(w);
        if (project) what.coeffs[0] = 0.0;

        KahanSum num_k, res2_k, nrm2_k;
        for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
            const double m = msym[i];
            const double c2 = std::norm(state.coeffs[i]);
            nrm2_k.add(c2);
            if (!std::isfinite(m)) continue;  // killed zero mode
            num_k.add(m * c2);
            res2_k.add(std::norm(m * state.coeffs[i] - what.coeffs[i]));
        }
        const double num = num_k.get() * vol;   // <M phi, phi>
        const double res2 = res2_k.get() * vol; // ||M phi - P w||^2
        const double nrm2 = nrm2_k.get() * vol; // ||phi||^2
        if (!(nrm2 > 0.0)) throw NoConvergence("iterate collapsed to zero");
        const double den = phys_inner_power(phi, p_exp);
        const double S = num / den;
        stab_defect = std::abs(S - 1.0);
        residual = std::sqrt(res2 / nrm2);
        if (residual < opts.tol) break;
        if (!std::isfinite(residual) || !std::isfinite(S))
            throw NoConvergence("Petviashvili iteration diverged");

        const double sg = std::pow(S, gamma);
        for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
            const double m = msym[i];
            state.coeffs[i] = std::isfinite(m) ? sg * what.coeffs[i] / m : cplx{0.0, 0.0};
        }
    }
    if (!(residual < opts.tol)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "Petviashvili did not reach tol = %.3e in %d iterations "
                      "(residual %.3e)",
                      opts.tol, opts.max_iter, residual);
        throw NoConvergence(msg);
    }

    GroundState gs;
    gs.profile = phi;
    gs.params = p;
    gs.target = opts.target;
    gs.p_exponent = p_exp;
    gs.residual = residual;
    gs.iterations = iters;
    gs.stabilizer_defect = stab_defect;
    gs.norms = xbeta_norms(gs.profile, p);
    gs.mean_abs = std::abs(transform(gs.profile).mean());

    // Nehari defect of the solved equation
    const Spectrum sp = transform(gs.profile);
    double q = 0.0;
    for_each_mode(grid, [&](std::size_t i, double) {
        if (std::isfinite(msym[i])) q += msym[i] * std::norm(sp.coeffs[i]);
    });
    q *= vol;
    gs.nehari = q - phys_inner_power(gs.profile, p_exp);
    return gs;
}

GroundState petviashvili_solve(const PhysicsParams& p, const GridSpec& grid,
                               SolveTarget target, double tol, int max_iter,
                               std::optional<Field> seed) {
    SolveOptions o;
    o.target = target;
    o.tol = tol;
    o.max_iter = max_iter;
    o.seed = std::move(seed);
    return petviashvili_solve(p, grid, o);
}

Field classical_profiles(ProfileKind kind, double omega, const GridSpec& grid,
                         int p_exponent) {
    switch (kind) {
        case ProfileKind::Phi0: {
            if (grid.dim() != 1)
                throw BadParams("Phi0 is the one-dimensional profile");
            if (!(omega > 0.0)) throw BadParams("Phi0 requires omega > 0");
            const double a = std::sqrt(2.0 * omega);
            const double s = std::sqrt(omega);
            return sample_field(grid, [&](const std::array<double, 4>& x) {
                return cplx{a / std::cosh(s * x[0]), 0.0};
            });
        }
        case ProfileKind::WCritical: {
            if (grid.dim() != 4)
                throw BadParams("W is the four-dimensional critical profile");
            return sample_field(grid, [&](const std::array<double, 4>& x) {
                double r2 = 0.0;
                for (int d = 0; d < 4; ++d) r2 += x[d] * x[d];
                return cplx{1.0 / (1.0 + r2 / 8.0), 0.0};
            });
        }
        case ProfileKind::PsiNLS: {
            if (grid.dim() == 1) {
                // closed form for -psi'' + psi = psi^(p+1)
                const double pe = p_exponent;
                const double amp = std::pow(0.5 * (pe + 2.0), 1.0 / pe);
                return sample_field(grid, [&](const std::array<double, 4>& x) {
                    return cplx{amp * std::pow(1.0 / std::cosh(0.5 * pe * x[0]), 2.0 / pe), 0.0};
                });
            }
            PhysicsParams q;
            q.beta = 0.25 * grid.dim();  // any valid beta: eps = 0 ignores it
            q.eps = 0.0;
            q.omega = 1.0;
            q.sigma = +1;
            SolveOptions o;
            o.target = SolveTarget::Standing;
            o.tol = 1e-12;
            o.max_iter = 500;
            return petviashvili_solve(q, grid, o).profile;
        }
    }
    throw BadParams("unknown profile kind");
}

bool SweepRecord::all_converged() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const SweepEntry& e) { return e.converged; });
}

bool SweepRecord::m_monotone(double slack) const {
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (!entries[i].converged || !entries[i - 1].converged) continue;
        if (entries[i].m_eps > entries[i - 1].m_eps + slack) return false;
    }
    return true;
}

double h1_distance_to_phi0(const Field& phi, double omega) {
    const GridSpec& g = phi.grid;
    if (g.dim() != 1) throw BadParams("h1_distance_to_phi0 is one-dimensional");
    // peak centering: argmax of |phi|, quadratic sub-grid refinement
    std::size_t imax = 0;
    double vmax = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        const double a = std::abs(phi.values[i].real());
        if (a > vmax) { vmax = a; imax = i; }
    }
    if (!(vmax > 0.0)) throw ZeroField("cannot center a zero profile");
    const double sign = phi.values[imax].real() >= 0.0 ? 1.0 : -1.0;
    const std::size_t n = g.size();
    const double ym = std::abs(phi.values[(imax + n - 1) % n].real());
    const double yp = std::abs(phi.values[(imax + 1) % n].real());
    double frac = 0.0;
    const double curv = ym - 2.0 * vmax + yp;
    if (curv < 0.0) frac = 0.5 * (ym - yp) / curv;
    const double shift = g.coord(static_cast<int>(imax)) + frac * g.spacing();

    // spectral translation to put the peak at the origin, sign aligned
    Spectrum s = transform(phi);
    const std::vector<double>& xi = g.xi_axis();
    for (std::size_t i = 0; i < n; ++i)
        s.coeffs[i] *= sign * std::polar(1.0, xi[i] * shift);

    // mean-zero representatives on both sides (torus mean-mode artifact)
    const Field ref = classical_profiles(ProfileKind::Phi0, omega, g);
    Spectrum sr = transform(ref);
    s.coeffs[0] = 0.0;
    sr.coeffs[0] = 0.0;
    double acc = 0.0;
    for_each_mode(g, [&](std::size_t i, double xi2) {
        acc += (1.0 + xi2) * std::norm(s.coeffs[i] - sr.coeffs[i]);
    });
    return std::sqrt(g.box_volume() * acc);
}

SweepRecord epsilon_sweep(double omega, double beta, const GridSpec& grid,
                          const std::vector<double>& eps_list, double tol,
                          int max_iter, int jobs) {
    if (eps_list.empty()) throw BadParams("empty eps list");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw BadParams("eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw BadParams("eps list must be strictly decreasing");
    }
    if (jobs < 1) throw BadParams("jobs must be >= 1");

    SweepRecord rec;
    rec.entries.resize(eps_list.size());
    auto solve_entry = [&](std::size_t idx) {
        const double eps = eps_list[idx];
        PhysicsParams p;
        p.beta = beta;
        p.eps = eps;
        p.omega = omega;
        p.sigma = +1;
        SweepEntry e;
        e.eps = eps;
        try {
            if (!(omega > beta_star(p)))
                throw BadParams("sweep entry violates omega > beta_star");
            SolveOptions o;
            o.target = SolveTarget::Standing;
            o.tol = tol;
            o.max_iter = max_iter;
            GroundState gs = petviashvili_solve(p, grid, o);
            const ActionReport a = action_functionals(gs.profile, p);
            e.converged = true;
            e.m_eps = a.m_quotient;
            e.h1_distance_to_phi0 = h1_distance_to_phi0(gs.profile, omega);
            // eps * ||L_{beta/2} phi||^2 is twice the energy's potential term
            e.lbeta_term = 2.0 * energy(gs.profile, p).potential;
            e.state = std::move(gs);
        } catch (const Error& err) {
            e.converged = false;
            e.error = err.what();
        }
        rec.entries[idx] = std::move(e);
    };

    if (jobs == 1) {
        for (std::size_t i = 0; i < eps_list.size(); ++i) solve_entry(i);
        return rec;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(jobs, eps_list.size());
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < eps_list.size();
                 i = next.fetch_add(1))
                solve_entry(i);
        });
    for (std::thread& th : pool) th.join();
    return rec;
}

TailFit tail_decay_fit(const Field& profile, double window_min, double window_max,
                       double max_residual) {
    const GridSpec& g = profile.grid;
    if (!(window_min > 0.0) || !(window_max > window_min) ||
        !(window_max < 0.5 * g.box_length()))
        throw BadParams("tail window must satisfy 0 < rmin < rmax < L/2");

    double peak = 0.0;
    for (const cplx& z : profile.values) peak = std::max(peak, std::abs(z));
    if (!(peak > 0.0)) throw ZeroField("tail fit of a zero profile");

    // gather (r, |phi|) over grid points with r in the window
    std::vector<double> lx, ly;
    const int dim = g.dim();
    const int n = g.points_per_axis();
    std::array<int, 4> idx{};
    std::array<double, 4> x{};
    for (int d = 0; d < dim; ++d) x[d] = g.coord(0);
    double at_rmin = 0.0;
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
        const double r = std::sqrt(r2);
        if (r >= window_min && r <= window_max) {
            const double a = std::abs(profile.values[flat]);
            if (a > 0.0) {
                lx.push_back(std::log(r));
                ly.push_back(std::log(a));
            }
            if (r < window_min * 1.1) at_rmin = std::max(at_rmin, a);
        }
        int d = dim - 1;
        while (d >= 0 && ++idx[d] == n) { idx[d] = 0; x[d] = g.coord(0); --d; }
        if (d < 0) break;
        x[d] = g.coord(idx[d]);
    }
    if (lx.size() < 8) throw BadParams("tail window contains too few grid points");
    if (at_rmin > 1e-3 * peak)
        throw BadParams("profile has not decayed below 1e-3 of its peak at rmin");

    const std::size_t m = lx.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double inter = (sy - slope * sx) / m;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = ly[i] - (inter + slope * lx[i]);
        rss += e * e;
    }
    TailFit fit;
    fit.exponent = -slope;
    fit.intercept = inter;
    fit.residual = std::sqrt(rss / m);
    if (fit.residual > max_residual)
        throw WindowTooNoisy("tail fit residual " + std::to_string(fit.residual) +
                             " exceeds " + std::to_string(max_residual));
    return fit;
}

} // namespace convnls
