#include <doctest.h>

#include <cmath>

#include "convnls/kernel_oracle.hpp"
#include "convnls/multipliers.hpp"
#include "convnls/transform.hpp"

using namespace convnls;

// Reference values computed independently with 30-digit arithmetic
// (direct oscillatory quadrature of the half-line cosine transform).
namespace {
struct Ref {
    double x, value;
};
const Ref kRefQuarter[] = {
    {1.0, 0.424184982897833},
    {2.0, 0.1657239748844824},
    {5.0, 0.03000217950550697},
    {40.0, 0.0019385406072593332},
};
const Ref kRefHalf[] = {
    {1.0, 0.53111741012859256},
    {2.0, 0.23640480408447075},
    {5.0, 0.032409258332704266},
};
} // namespace

TEST_CASE("oracle matches the independent quadrature references") {
    PhysicsParams p;
    p.eps = 1.0;
    p.omega = 1.0;

    p.beta = 0.25;
    for (const Ref& r : kRefQuarter) {
        OracleResult o = residue_kernel_oracle(r.x, p);
        CHECK(std::abs(o.value - r.value) < 5e-8);
        CHECK(o.quad_error < 1e-8);
    }

    p.beta = 0.5;
    for (const Ref& r : kRefHalf) {
        OracleResult o = residue_kernel_oracle(r.x, p);
        CHECK(std::abs(o.value - r.value) < 5e-8);
    }
}

TEST_CASE("denominator poles in the first quadrant") {
    PhysicsParams p;
    p.eps = 1.0;
    p.omega = 1.0;

    p.beta = 0.25;
    auto poles = denominator_poles(p);
    REQUIRE(poles.size() == 1);
    CHECK(std::abs(poles[0] - std::complex<double>(0.21507985450097337,
                                                   1.3071412786820455)) < 1e-8);

    p.beta = 0.5;
    poles = denominator_poles(p);
    REQUIRE(poles.size() == 1);
    CHECK(std::abs(poles[0] - std::complex<double>(0.34116390191400966,
                                                   1.1615413999972519)) < 1e-8);
}

TEST_CASE("branch integrand is positive below sqrt(omega) for beta = 1/4") {
    // double-entry evaluation of the rotated integrand: numerator
    // sin(b pi) A(y), denominator |eps + A e^{i b pi}|^2, A = (om - y^2) y^{2b}
    const double beta = 0.25, eps = 1.0, om = 1.0;
    const double sb = std::sin(beta * M_PI), cb = std::cos(beta * M_PI);
    for (double y = 1e-4; y < 1.0; y += 1e-3) {
        const double A = (om - y * y) * std::pow(y, 2.0 * beta);
        const double den = eps * eps + A * A + 2.0 * eps * A * cb;
        CHECK(den > 0.0);
        CHECK(sb * A / den > 0.0);
    }
}

TEST_CASE("large-x asymptotics approach the stated limit slowly") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 1.0;
    p.omega = 1.0;
    const double limit = std::sin(p.beta * M_PI) * std::tgamma(2.0 * p.beta + 1.0) *
                         p.omega / (p.eps * p.eps);
    const double pow_exp = 2.0 * p.beta + 1.0;

    // x = 40 sits far outside the asymptotic regime (about -22 percent)
    OracleResult o40 = residue_kernel_oracle(40.0, p);
    const double dev40 = std::pow(40.0, pow_exp) * o40.value / limit - 1.0;
    CHECK(dev40 < -0.18);
    CHECK(dev40 > -0.26);

    // the limit itself is right: by x ~ 1e4 the deviation is below 2 percent
    OracleResult far = residue_kernel_oracle(10240.0, p);
    CHECK(std::abs(std::pow(10240.0, pow_exp) * far.value / limit - 1.0) < 0.02);
}

TEST_CASE("oracle agrees with the FFT kernel evaluation") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 1.0;
    p.omega = 1.0;
    GridSpec g = make_grid(1, 1 << 21, 16384.0);
    Spectrum s = Spectrum::zero(g);
    const double invL = 1.0 / g.box_length();
    for_each_mode(g, [&](std::size_t i, double xi2) {
        const double r = std::sqrt(xi2);
        const double lk = xi2 == 0.0
                              ? 1.0 / p.eps
                              : 1.0 / (p.eps + p.omega * std::pow(r, 2.0 * p.beta) +
                                       std::pow(r, 2.0 * p.beta + 2.0));
        s.coeffs[i] = invL * lk;
    });
    Field f = inverse(s);
    for (double x : {1.0, 2.0, 5.0}) {
        const double pos = (x + 0.5 * g.box_length()) / g.spacing();
        const std::size_t j = static_cast<std::size_t>(std::llround(pos));
        const double fft_val = M_PI * f.values[j].real();
        OracleResult o = residue_kernel_oracle(x, p);
        CHECK(std::abs(fft_val - o.value) < 3e-6);  // coarser grid than acceptance
    }
}

TEST_CASE("oracle parameter gates") {
    PhysicsParams p;
    p.beta = 0.75;
    p.eps = 1.0;
    p.omega = 1.0;
    CHECK_THROWS_AS(residue_kernel_oracle(1.0, p), BadParams);
    p.beta = 0.25;
    CHECK_THROWS_AS(residue_kernel_oracle(-1.0, p), BadParams);
    p.eps = 0.0;
    CHECK_THROWS_AS(residue_kernel_oracle(1.0, p), BadParams);
}
