#include "convnls/multipliers.hpp"

#include <cmath>

namespace convnls {

MultiplierSymbol dispersion_symbol(const PhysicsParams& p) {
    MultiplierSymbol sym;
    const double eps = p.eps;
    const double mexp = -2.0 * p.beta;
    if (eps == 0.0) {
        sym.radial = [](double r) { return r * r; };
        sym.singular_at_zero = false;
    } else {
        sym.radial = [eps, mexp](double r) { return r * r + eps * std::pow(r, mexp); };
        sym.singular_at_zero = true;
    }
    sym.zero_mode_value = 0.0;
    return sym;
}

MultiplierSymbol kernel_symbol(const PhysicsParams& p) {
    if (p.eps > 0.0) {
        if (!(p.omega > beta_star(p)))
            throw BadParams("kernel_symbol: omega must exceed beta_star");
    } else if (p.eps == 0.0) {
        if (!(p.omega > 0.0))
            throw BadParams("kernel_symbol: eps = 0 requires omega > 0");
    } else {
        throw BadParams("kernel_symbol: eps < 0 risks a vanishing denominator");
    }
    MultiplierSymbol sym;
    const double eps = p.eps, om = p.omega, tb = 2.0 * p.beta;
    sym.radial = [eps, om, tb](double r) {
        const double a = std::pow(r, tb);
        return a / (eps + om * a + a * r * r);
    };
    sym.zero_mode_value = 0.0;  // K_hat(0) = int K dx = 0
    sym.singular_at_zero = false;
    return sym;
}

namespace {

// Shared zero-mode gate for singular multipliers.
void resolve_zero_mode(const Spectrum& s, const PhysicsParams* policy) {
    const double mean = std::abs(s.mean());
    const PhysicsParams def{};
    const PhysicsParams& p = policy ? *policy : def;
    if (p.zero_mode_policy == ZeroModePolicy::RejectNonzeroMean) {
        if (mean > p.mean_tol)
            throw NonzeroMean("singular multiplier on a field with |mean| = " +
                              std::to_string(mean));
    } else if (mean > p.mean_tol) {
        note_mean_projection();
    }
}

} // namespace

Spectrum lbeta_apply(const Spectrum& s_in, double s, const PhysicsParams& p) {
    Spectrum out = s_in;
    const double e = 2.0 * s;
    if (s < 0.0) {
        resolve_zero_mode(s_in, &p);
        out.coeffs[0] = 0.0;
    } else if (s > 0.0) {
        out.coeffs[0] = 0.0;  // |0|^(2s) = 0
    }
    for_each_mode(out.grid, [&](std::size_t i, double xi2) {
        if (xi2 > 0.0) out.coeffs[i] *= std::pow(std::sqrt(xi2), e);
    });
    return out;
}

Field lbeta_apply(const Field& u, double s, const PhysicsParams& p) {
    return inverse(lbeta_apply(transform(u), s, p));
}

Spectrum apply_multiplier(const Spectrum& s, const MultiplierSymbol& sym,
                          std::optional<double> phase_time,
                          const PhysicsParams* policy) {
    if (sym.singular_at_zero) resolve_zero_mode(s, policy);
    Spectrum out = s;
    if (phase_time) {
        const double t = *phase_time;
        for_each_mode(out.grid, [&](std::size_t i, double xi2) {
            const double v = xi2 == 0.0 ? sym.zero_mode_value : sym.radial(std::sqrt(xi2));
            out.coeffs[i] *= std::polar(1.0, t * v);
        });
    } else {
        for_each_mode(out.grid, [&](std::size_t i, double xi2) {
            const double v = xi2 == 0.0 ? sym.zero_mode_value : sym.radial(std::sqrt(xi2));
            out.coeffs[i] *= v;
        });
    }
    return out;
}

Field apply_multiplier(const Field& u, const MultiplierSymbol& sym,
                       std::optional<double> phase_time,
                       const PhysicsParams* policy) {
    return inverse(apply_multiplier(transform(u), sym, phase_time, policy));
}

double chi_cutoff(double s) {
    const double a = std::abs(s);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double t = a - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double rho_bump(double s) { return chi_cutoff(s) - chi_cutoff(2.0 * s); }

bool is_dyadic(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) return false;
    int e = 0;
    return std::frexp(lambda, &e) == 0.5;
}

Spectrum dyadic_projection(const Spectrum& s, double lambda) {
    if (!is_dyadic(lambda))
        throw BadParams("dyadic_projection: lambda must be a power of two");
    Spectrum out = s;
    for_each_mode(out.grid, [&](std::size_t i, double xi2) {
        out.coeffs[i] *= rho_bump(std::sqrt(xi2) / lambda);
    });
    return out;
}

Field dyadic_projection(const Field& u, double lambda) {
    return inverse(dyadic_projection(transform(u), lambda));
}

} // namespace convnls
