#include <doctest.h>

#include <random>

#include "convnls/propagator.hpp"
#include "convnls/transform.hpp"
#include "test_util.hpp"

using namespace convnls;
using namespace convnls::testutil;

namespace {

Field soliton(const GridSpec& g) {
    return sample_field(g, [](const std::array<double, 4>& x) {
        return cplx{std::sqrt(2.0) / std::cosh(x[0]), 0.0};
    });
}

Field conj_field(const Field& u) {
    Field v = u;
    for (cplx& z : v.values) z = std::conj(z);
    return v;
}

double l2_diff(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
    return std::sqrt(a.grid.cell_volume() * s);
}

} // namespace

TEST_CASE("linear propagator basics") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 1.0;
    GridSpec g = make_grid(1, 64, 2.0 * M_PI);
    std::mt19937_64 rng(21);
    Field u = random_field(g, rng);

    CHECK(linf_diff(linear_propagate(u, 0.0, p), u) < 1e-13);

    // flow of the equation: e^{ikx} -> e^{-i t m(k)} e^{ikx}
    Field pw = sample_field(g, [](const std::array<double, 4>& x) {
        return std::polar(1.0, 2.0 * x[0]);
    });
    const double t = 0.31;
    const MultiplierSymbol m = dispersion_symbol(p);
    Field v = linear_propagate(pw, t, p);
    const cplx expect = std::polar(1.0, -t * m.at(2.0));
    for (std::size_t i = 0; i < v.values.size(); ++i)
        CHECK(std::abs(v.values[i] - expect * pw.values[i]) < 1e-12);

    // mean mode is left invariant under ZeroOut
    Field c = sample_field(g, [](const std::array<double, 4>&) { return cplx{0.7, 0.1}; });
    CHECK(linf_diff(linear_propagate(c, 2.0, p), c) < 1e-13);
}

TEST_CASE("mass conservation under repeated composition") {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 1.0;
    GridSpec g = make_grid(1, 256, 30.0);
    std::mt19937_64 rng(22);
    Field u = random_field(g, rng);
    const double m0 = mass(u);
    for (int k = 0; k < 10000; ++k) u = linear_propagate(u, 0.1, p);
    CHECK(std::abs(mass(u) - m0) / m0 < 1e-10);
}

TEST_CASE("strang step basics") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 0.5;
    p.sigma = +1;
    GridSpec g = make_grid(1, 256, 40.0);

    Field z = Field::zero(g);
    CHECK(linf_diff(strang_step(z, 1e-2, p), z) == 0.0);
    CHECK_THROWS_AS(strang_step(z, -1.0, p), BadParams);
}

TEST_CASE("time-reversal symmetry of the splitting") {
    // conj . Phi_dt . conj is the exact inverse of Phi_dt
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 1.0;
    p.sigma = +1;
    GridSpec g = make_grid(1, 256, 40.0);
    std::mt19937_64 rng(23);
    Field u = random_field(g, rng);
    for (cplx& z : u.values) z *= 0.2;  // smooth modest data
    Field fwd = u;
    for (int k = 0; k < 20; ++k) fwd = strang_step(fwd, 1e-2, p);
    Field back = conj_field(fwd);
    for (int k = 0; k < 20; ++k) back = strang_step(back, 1e-2, p);
    back = conj_field(back);
    CHECK(l2_diff(back, u) < 1e-10);
}

TEST_CASE("one-step local error is third order") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 0.0;
    p.omega = 1.0;
    p.sigma = +1;
    GridSpec g = make_grid(1, 1024, 60.0);
    Field s = soliton(g);
    auto local_err = [&](double dt) {
        Field one = strang_step(s, dt, p);
        Field exact = s;
        for (cplx& z : exact.values) z *= std::polar(1.0, dt);
        return l2_diff(one, exact);
    };
    const double e1 = local_err(2e-2);
    const double e2 = local_err(1e-2);
    const double ratio = e1 / e2;
    CHECK(ratio > 6.0);
    CHECK(ratio < 10.0);
}

TEST_CASE("evolve conserves mass and momentum on smooth data") {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 0.5;
    p.sigma = +1;
    GridSpec g = make_grid(1, 512, 40.0);
    // travelling smooth packet so the momentum is nontrivial
    Field u0 = sample_field(g, [](const std::array<double, 4>& x) {
        return std::polar(std::exp(-x[0] * x[0] / 2.0), 2.0 * x[0]);
    });
    EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.monitor_every = 200;
    EvolveResult r = evolve(u0, p, cfg);
    const DiagnosticSample& first = r.series.samples.front();
    const DiagnosticSample& last = r.series.samples.back();
    CHECK(std::abs(last.mass - first.mass) / first.mass < 1e-10);
    CHECK(std::abs(last.momentum[0] - first.momentum[0]) /
              std::abs(first.momentum[0]) < 1e-8);
}

TEST_CASE("energy drift is second order in dt") {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 0.5;
    p.sigma = +1;
    GridSpec g = make_grid(1, 1024, 40.0);
    Field u0 = sample_field(g, [](const std::array<double, 4>& x) {
        return cplx{std::exp(-x[0] * x[0] / 2.0), 0.0};
    });
    auto drift = [&](double dt) {
        EvolveConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 1.0;
        cfg.monitor_every = 1000000;  // endpoints only
        EvolveResult r = evolve(u0, p, cfg);
        return std::abs(r.series.samples.back().energy - r.series.samples.front().energy);
    };
    const double d1 = drift(2e-3);
    const double d2 = drift(1e-3);
    const double ratio = d1 / d2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("nonlinearity disabled reduces evolve to the linear flow") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 1.0;
    GridSpec g = make_grid(1, 256, 30.0);
    std::mt19937_64 rng(24);
    Field u0 = random_field(g, rng);
    EvolveConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 1.0;
    cfg.nonlinear = false;
    EvolveResult r = evolve(u0, p, cfg);
    Field lin = linear_propagate(u0, 1.0, p);
    CHECK(l2_diff(r.final, lin) < 1e-11);
}

TEST_CASE("soliton transparency at eps = 0") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 0.0;
    p.omega = 1.0;
    p.sigma = +1;
    GridSpec g = make_grid(1, 2048, 60.0);
    Field u0 = soliton(g);
    EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.monitor_every = 500;
    EvolveResult r = evolve(u0, p, cfg);
    Field exact = u0;
    for (cplx& z : exact.values) z *= std::polar(1.0, 1.0);
    CHECK(l2_diff(r.final, exact) < 1e-4);
}

TEST_CASE("defocusing runs stay below the energy bound") {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 1.0;
    p.sigma = -1;
    GridSpec g = make_grid(1, 512, 40.0);
    Field u0 = sample_field(g, [](const std::array<double, 4>& x) {
        return cplx{1.3 * std::exp(-x[0] * x[0] / 2.0), 0.0};
    });
    EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    cfg.monitor_every = 100;
    EvolveResult r = evolve(u0, p, cfg);
    const double bound = 2.0 * r.series.samples.front().energy;
    for (const DiagnosticSample& s : r.series.samples)
        CHECK(s.xbeta_dot * s.xbeta_dot <= bound * (1.0 + 1e-10));
}

TEST_CASE("under-resolved focusing run aborts loudly") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 0.5;
    p.sigma = +1;
    GridSpec g = make_grid(1, 128, 30.0);
    Field u0 = sample_field(g, [](const std::array<double, 4>& x) {
        return cplx{6.0 * std::exp(-x[0] * x[0] / 2.0), 0.0};
    });
    EvolveConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 2.0;
    cfg.monitor_every = 10;
    cfg.drift_abort = 1e-8;
    bool aborted = false;
    try {
        evolve(u0, p, cfg);
    } catch (const ResolutionLoss&) {
        aborted = true;
    } catch (const NonFinite&) {
        aborted = true;
    }
    CHECK(aborted);
}

TEST_CASE("decay probe guards") {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 1.0;
    GridSpec g = make_grid(1, 1024, 100.0);
    std::vector<double> times = {0.05, 0.1, 0.2};
    CHECK_THROWS_AS(decay_probe(4.0, p, g, times), BadParams);   // lambda < 8
    CHECK_THROWS_AS(decay_probe(12.0, p, g, times), BadParams);  // not dyadic
    CHECK_THROWS_AS(decay_probe(16.0, p, g, {0.2, 0.1}), BadParams);
    GridSpec coarse = make_grid(1, 64, 100.0);
    CHECK_THROWS_AS(decay_probe(16.0, p, coarse, times), BadParams);
    CHECK_THROWS_AS(decay_probe(16.0, p, g, {0.05, 5.0}), BoxExit);
}

TEST_CASE("decay probe slope in one dimension") {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 1.0;
    GridSpec g = make_grid(1, 8192, 200.0);
    std::vector<double> times;
    for (int i = 0; i < 10; ++i)
        times.push_back(0.05 * std::pow(0.4 / 0.05, i / 9.0));
    DecayProbeResult r = decay_probe(16.0, p, g, times);
    CHECK(std::abs(r.fitted_slope + 0.5) < 0.1);
    CHECK_FALSE(r.outside_paper_hypothesis);
    for (double s : r.sup_abs) CHECK(s > 0.0);
}

TEST_CASE("probe at small t has a bounded band-limited peak") {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 1.0;
    GridSpec g = make_grid(1, 4096, 100.0);
    DecayProbeResult r = decay_probe(16.0, p, g, {1e-6, 2e-6});
    // t -> 0+: no singularity, the sup approaches the band mass
    CHECK(std::isfinite(r.sup_abs[0]));
    CHECK(std::abs(r.sup_abs[0] - r.sup_abs[1]) / r.sup_abs[0] < 1e-4);
}

TEST_CASE("mass survives a hundred thousand steps") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 0.5;
    p.sigma = +1;
    GridSpec g = make_grid(1, 256, 30.0);
    Field u0 = sample_field(g, [](const std::array<double, 4>& x) {
        return cplx{std::exp(-x[0] * x[0]), 0.0};
    });
    EvolveConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 10.0;  // 1e5 steps
    cfg.monitor_every = 100000;
    EvolveResult r = evolve(u0, p, cfg);
    const double m0 = r.series.samples.front().mass;
    CHECK(std::abs(r.series.samples.back().mass - m0) / m0 < 1e-10);
}

TEST_CASE("negative eps runs are permitted and unitary") {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = -0.5;
    p.sigma = +1;
    GridSpec g = make_grid(1, 256, 30.0);
    Field u0 = sample_field(g, [](const std::array<double, 4>& x) {
        return cplx{0.8 * std::exp(-x[0] * x[0]), 0.0};
    });
    EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.monitor_every = 100;
    EvolveResult r = evolve(u0, p, cfg);
    const double m0 = r.series.samples.front().mass;
    CHECK(std::abs(r.series.samples.back().mass - m0) / m0 < 1e-10);
}

TEST_CASE("evolve config validation") {
    EvolveConfig cfg;
    cfg.dt = -1.0;
    CHECK_THROWS_AS(cfg.validate(), BadParams);
    cfg.dt = 1e-3;
    cfg.monitor_every = 0;
    CHECK_THROWS_AS(cfg.validate(), BadParams);
}
