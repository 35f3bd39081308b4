#include "convnls/kernel_oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

namespace convnls {

namespace {

void gsl_quiet_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

struct Integrand {
    double x, eps, omega, twob, sinb, cosb;
    mutable double min_denominator = std::numeric_limits<double>::infinity();

    double operator()(double y) const {
        const double a = (omega - y * y) * std::pow(y, twob);
        const double den = eps * eps + a * a + 2.0 * eps * a * cosb;
        min_denominator = std::min(min_denominator, den);
        return sinb * a * std::exp(-x * y) / den;
    }
};

double call_integrand(double y, void* params) {
    return (*static_cast<const Integrand*>(params))(y);
}

using Cplx = std::complex<double>;

Cplx denom(const Cplx& z, double eps, double omega, double twob) {
    return eps + omega * std::pow(z, twob) + std::pow(z, twob + 2.0);
}

Cplx denom_prime(const Cplx& z, double omega, double twob) {
    return twob * omega * std::pow(z, twob - 1.0) +
           (twob + 2.0) * std::pow(z, twob + 1.0);
}

} // namespace

std::vector<Cplx> denominator_poles(const PhysicsParams& p) {
    const double twob = 2.0 * p.beta;
    const double rmax = std::max(1.0, std::sqrt(p.eps + p.omega)) * 1.25;
    std::vector<Cplx> roots;
    for (int ir = 1; ir <= 24; ++ir) {
        for (int it = 1; it <= 20; ++it) {
            const double r = rmax * ir / 24.0;
            const double th = (M_PI / 2.0) * it / 21.0;
            Cplx z = std::polar(r, th);
            bool ok = true;
            for (int k = 0; k < 80; ++k) {
                const Cplx d = denom(z, p.eps, p.omega, twob);
                const Cplx dp = denom_prime(z, p.omega, twob);
                if (std::abs(dp) == 0.0) { ok = false; break; }
                const Cplx step = d / dp;
                z -= step;
                if (z.real() <= 0.0 || z.imag() <= 0.0 || std::abs(z) > 4.0 * rmax) {
                    ok = false;
                    break;
                }
                if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
            }
            if (!ok) continue;
            if (std::abs(denom(z, p.eps, p.omega, twob)) > 1e-10) continue;
            if (z.real() < 1e-8 || z.imag() < 1e-8) continue;
            const bool dup = std::any_of(roots.begin(), roots.end(), [&](const Cplx& w) {
                return std::abs(w - z) < 1e-7;
            });
            if (!dup) roots.push_back(z);
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const Cplx& a, const Cplx& b) { return a.real() < b.real(); });
    return roots;
}

OracleResult residue_kernel_oracle(double x, const PhysicsParams& p) {
    gsl_quiet_once();
    if (!(x > 0.0)) throw BadParams("oracle requires x > 0");
    if (!(p.beta > 0.0) || !(p.beta <= 0.5))
        throw BadParams("oracle restricted to 0 < beta <= 1/2");
    if (!(p.eps > 0.0)) throw BadParams("oracle requires eps > 0");
    if (!(p.omega > 0.0)) throw BadParams("oracle requires omega > 0");

    Integrand f;
    f.x = x;
    f.eps = p.eps;
    f.omega = p.omega;
    f.twob = 2.0 * p.beta;
    f.sinb = std::sin(p.beta * M_PI);
    f.cosb = std::cos(p.beta * M_PI);

    gsl_function gf;
    gf.function = &call_integrand;
    gf.params = &f;

    constexpr std::size_t kLimit = 4096;
    std::unique_ptr<gsl_integration_workspace,
                    decltype(&gsl_integration_workspace_free)>
        ws(gsl_integration_workspace_alloc(kLimit), &gsl_integration_workspace_free);

    // split at the sign change of A and at the decay scale, then the tail
    double total = 0.0, toterr = 0.0;
    const double splits[] = {0.0, std::min(1.0 / x, std::sqrt(p.omega)),
                             std::sqrt(p.omega), 2.0 * std::sqrt(p.omega) + 10.0 / x};
    for (int seg = 0; seg + 1 < 4; ++seg) {
        if (!(splits[seg + 1] > splits[seg])) continue;
        double v = 0.0, err = 0.0;
        const int rc = gsl_integration_qags(&gf, splits[seg], splits[seg + 1], 0.0,
                                            1e-12, kLimit, ws.get(), &v, &err);
        if (rc != 0 && rc != GSL_EROUND)
            throw Error("oracle quadrature failed on a finite segment");
        total += v;
        toterr += err;
    }
    {
        double v = 0.0, err = 0.0;
        const int rc = gsl_integration_qagiu(&gf, splits[3], 0.0, 1e-12, kLimit,
                                             ws.get(), &v, &err);
        if (rc != 0 && rc != GSL_EROUND)
            throw Error("oracle quadrature failed on the tail segment");
        total += v;
        toterr += err;
    }
    if (f.min_denominator < 1e-8)
        throw DenominatorVanishes("oracle integrand denominator dipped to " +
                                  std::to_string(f.min_denominator));

    OracleResult r;
    r.poles = denominator_poles(p);
    double pole_sum = 0.0;
    for (const Cplx& z0 : r.poles) {
        if (z0.imag() < 1e-6 || z0.real() < 1e-6)
            throw DenominatorVanishes("denominator zero too close to the contour");
        const Cplx res = std::exp(Cplx(0.0, x) * z0) / denom_prime(z0, p.omega, f.twob);
        pole_sum += (2.0 * M_PI * Cplx(0.0, 1.0) * res).real();
    }
    r.value = total + pole_sum;
    r.quad_error = toterr;
    if (r.quad_error > 1e-8)
        throw Error("oracle quadrature error estimate above 1e-8");
    return r;
}

} // namespace convnls
