#include "convnls/functionals.hpp"

#include <cmath>
#include <limits>

#include "convnls/multipliers.hpp"
#include "convnls/transform.hpp"

namespace convnls {

double mass(const Field& u) {
    double s = 0.0;
    for (const cplx& z : u.values) s += std::norm(z);
    return u.grid.cell_volume() * s;
}

std::array<double, 4> momentum(const Field& u) {
    const Spectrum s = transform(u);
    const GridSpec& g = u.grid;
    // odd-derivative wavenumbers: the unpaired Nyquist mode contributes zero,
    // so real fields give an exactly vanishing momentum
    const int n = g.points_per_axis();
    std::vector<double> xi_odd = g.xi_axis();
    xi_odd[static_cast<std::size_t>(n) / 2] = 0.0;

    std::array<double, 4> p{};
    std::array<int, 4> idx{};
    const int dim = g.dim();
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        const double w = std::norm(s.coeffs[flat]);
        for (int d = 0; d < dim; ++d) p[d] += xi_odd[idx[d]] * w;
        int d = dim - 1;
        while (d >= 0 && ++idx[d] == n) { idx[d] = 0; --d; }
        if (d < 0) break;
    }
    const double vol = g.box_volume();
    for (double& v : p) v *= vol;
    return p;
}

namespace {

struct SpectralSums {
    double l2sq = 0.0;
    double gradsq = 0.0;
    double lbetasq = 0.0;  ///< ||D^-beta u||^2 over nonzero modes
};

SpectralSums spectral_sums(const Spectrum& s, double beta) {
    SpectralSums r;
    const double e = -2.0 * beta;
    for_each_mode(s.grid, [&](std::size_t i, double xi2) {
        const double w = std::norm(s.coeffs[i]);
        r.l2sq += w;
        r.gradsq += xi2 * w;
        if (xi2 > 0.0) r.lbetasq += std::pow(xi2, 0.5 * e) * w;
    });
    const double vol = s.grid.box_volume();
    r.l2sq *= vol;
    r.gradsq *= vol;
    r.lbetasq *= vol;
    return r;
}

void gate_mean(const Spectrum& s, const PhysicsParams& p) {
    const double mean = std::abs(s.mean());
    if (p.zero_mode_policy == ZeroModePolicy::RejectNonzeroMean) {
        if (mean > p.mean_tol)
            throw NonzeroMean("mean-sensitive functional on field with |mean| = " +
                              std::to_string(mean));
    } else if (mean > p.mean_tol) {
        note_mean_projection();
    }
}

} // namespace

ConservedTriple conserved(const Field& u, const PhysicsParams& p) {
    ConservedTriple t;
    t.mass = mass(u);
    t.momentum = momentum(u);
    t.energy = energy(u, p).total;
    return t;
}

EnergyReport energy(const Field& u, const PhysicsParams& p) {
    const Spectrum s = transform(u);
    if (p.eps != 0.0) gate_mean(s, p);
    const SpectralSums sums = spectral_sums(s, p.beta);
    double l4 = 0.0;
    for (const cplx& z : u.values) {
        const double a = std::norm(z);
        l4 += a * a;
    }
    l4 *= u.grid.cell_volume();

    EnergyReport r;
    r.kinetic = 0.5 * sums.gradsq;
    r.potential = 0.5 * p.eps * sums.lbetasq;
    r.quartic = 0.25 * l4;
    r.total = r.kinetic + r.potential - p.sigma * r.quartic;
    r.energy0 = r.kinetic - p.sigma * r.quartic;
    return r;
}

NormReport xbeta_norms(const Spectrum& s, const PhysicsParams& p) {
    gate_mean(s, p);
    const SpectralSums sums = spectral_sums(s, p.beta);
    NormReport r;
    r.l2 = std::sqrt(sums.l2sq);
    r.h1 = std::sqrt(sums.l2sq + sums.gradsq);
    r.xbeta_dot = std::sqrt(sums.gradsq + sums.lbetasq);
    r.xbeta = std::sqrt(sums.l2sq + sums.gradsq + sums.lbetasq);
    return r;
}

NormReport xbeta_norms(const Field& u, const PhysicsParams& p) {
    return xbeta_norms(transform(u), p);
}

double hs_beta_norm(const Field& u, const PhysicsParams& p, double s_exp) {
    const Spectrum s = transform(u);
    gate_mean(s, p);
    double acc = 0.0;
    const double b = p.beta;
    for_each_mode(s.grid, [&](std::size_t i, double xi2) {
        if (xi2 == 0.0) return;
        const double w = std::pow(xi2, -b) * std::pow(1.0 + xi2, s_exp + b);
        acc += w * std::norm(s.coeffs[i]);
    });
    return std::sqrt(s.grid.box_volume() * acc);
}

double lp_norm(const Field& u, double p_exp) {
    if (!(p_exp >= 1.0)) throw BadParams("lp_norm requires p >= 1");
    double acc = 0.0;
    for (const cplx& z : u.values) acc += std::pow(std::abs(z), p_exp);
    return std::pow(u.grid.cell_volume() * acc, 1.0 / p_exp);
}

ActionReport action_functionals(const Field& u, const PhysicsParams& p) {
    const Spectrum s = transform(u);
    if (p.eps != 0.0) gate_mean(s, p);
    const SpectralSums sums = spectral_sums(s, p.beta);
    double l4 = 0.0;
    for (const cplx& z : u.values) {
        const double a = std::norm(z);
        l4 += a * a;
    }
    l4 *= u.grid.cell_volume();

    ActionReport r;
    r.i_eps = p.eps * sums.lbetasq + sums.gradsq + p.omega * sums.l2sq;
    r.s_omega = 0.5 * r.i_eps - 0.25 * l4;
    r.nehari = r.i_eps - l4;
    r.m_quotient = l4 > 0.0 ? r.i_eps / std::sqrt(l4)
                            : std::numeric_limits<double>::quiet_NaN();
    return r;
}

double m_quotient(const Field& u, const PhysicsParams& p) {
    const ActionReport r = action_functionals(u, p);
    if (!std::isfinite(r.m_quotient))
        throw ZeroField("m_quotient undefined for the zero field");
    return r.m_quotient;
}

} // namespace convnls
