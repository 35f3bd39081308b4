#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "convnls/diagnostics.hpp"
#include "convnls/ground_state.hpp"
#include "convnls/kernel_oracle.hpp"
#include "convnls/monitor.hpp"
#include "convnls/multipliers.hpp"
#include "convnls/propagator.hpp"
#include "convnls/snapshot.hpp"
#include "convnls/transform.hpp"
#include "convnls/version.hpp"

namespace convnls::cli {

namespace {

using nlohmann::ordered_json;

// Resolved key=value pairs, embedded in every output for reproducibility.
struct ResolvedConfig {
    std::vector<std::pair<std::string, std::string>> kv;

    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, double v) { add(k, format_double(v)); }
    void add(const std::string& k, int v) { add(k, std::to_string(v)); }
    void add(const std::string& k, bool v) { add(k, v ? std::string("true") : std::string("false")); }

    std::vector<std::string> preamble() const {
        std::vector<std::string> lines;
        lines.push_back(std::string("version=") + kVersion);
        for (const auto& [k, v] : kv) lines.push_back(k + "=" + v);
        return lines;
    }
    ordered_json to_json() const {
        ordered_json j = ordered_json::object();
        for (const auto& [k, v] : kv) j[k] = v;
        return j;
    }
};

void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    os << j.dump(2) << "\n";
}

void write_sidecar(const std::string& snapshot_path, const ordered_json& body) {
    write_json(snapshot_path + ".json", body);
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

struct CommonGrid {
    int dim = 1;
    int n = 1024;
    double box = 60.0;
};

struct CommonPhysics {
    double beta = 0.5;
    double eps = 1.0;
    int sigma = +1;
    double omega = 1.0;
    std::string policy = "zeroout";
};

void add_grid_flags(CLI::App* app, CommonGrid& g) {
    app->add_option("--dim", g.dim, "spatial dimension (1..4)");
    app->add_option("--n", g.n, "grid points per axis (power of two)");
    app->add_option("--box", g.box, "box length L (box is [-L/2, L/2)^dim)");
}

void add_physics_flags(CLI::App* app, CommonPhysics& p) {
    app->add_option("--beta", p.beta, "singular-potential exponent, 0 < beta < dim/2");
    app->add_option("--eps", p.eps, "convolution coefficient");
    app->add_option("--sigma", p.sigma, "+1 focusing, -1 defocusing");
    app->add_option("--omega", p.omega, "standing-wave frequency");
    app->add_option("--zero-mode", p.policy,
                    "zero-mode policy: zeroout | reject");
}

PhysicsParams to_params(const CommonPhysics& c) {
    PhysicsParams p;
    p.beta = c.beta;
    p.eps = c.eps;
    p.sigma = c.sigma;
    p.omega = c.omega;
    if (c.policy == "zeroout")
        p.zero_mode_policy = ZeroModePolicy::ZeroOut;
    else if (c.policy == "reject")
        p.zero_mode_policy = ZeroModePolicy::RejectNonzeroMean;
    else
        throw BadParams("unknown zero-mode policy: " + c.policy);
    return p;
}

void record(ResolvedConfig& rc, const CommonGrid& g, const CommonPhysics& p) {
    rc.add("dim", g.dim);
    rc.add("n", g.n);
    rc.add("box", g.box);
    rc.add("beta", p.beta);
    rc.add("eps", p.eps);
    rc.add("sigma", p.sigma);
    rc.add("omega", p.omega);
    rc.add("zero_mode", p.policy);
}

Field make_init(const std::string& spec, const GridSpec& grid, const PhysicsParams& p,
                double amp, double width, double perturb, std::uint64_t seed) {
    Field u = Field::zero(grid);
    if (spec.rfind("snapshot:", 0) == 0) {
        u = read_snapshot(spec.substr(9));
        if (u.grid != grid)
            std::cerr << "convnls: note: snapshot grid overrides --dim/--n/--box\n";
    } else if (spec == "phi0") {
        u = classical_profiles(ProfileKind::Phi0, p.omega, grid);
    } else if (spec == "gauss") {
        u = sample_field(grid, [&](const std::array<double, 4>& x) {
            double r2 = 0.0;
            for (int d = 0; d < grid.dim(); ++d) r2 += x[d] * x[d];
            return cplx{amp * std::exp(-r2 / (2.0 * width * width)), 0.0};
        });
    } else {
        throw BadParams("unknown --init (use snapshot:PATH, phi0 or gauss)");
    }
    if (perturb != 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> dist(0.0, perturb);
        for (cplx& z : u.values) z += cplx{dist(rng), dist(rng)};
    }
    return u;
}

int classify_error(const std::exception& e) {
    if (dynamic_cast<const NonFinite*>(&e)) return 3;
    if (dynamic_cast<const ResolutionLoss*>(&e)) return 2;
    if (dynamic_cast<const NoConvergence*>(&e)) return 2;
    if (dynamic_cast<const BoxExit*>(&e)) return 2;
    if (dynamic_cast<const WindowTooNoisy*>(&e)) return 2;
    if (dynamic_cast<const DenominatorVanishes*>(&e)) return 2;
    return 1;
}

// ---------------------------------------------------------------- evolve ----
int cmd_evolve(CLI::App* app) {
    auto grid_opts = std::make_shared<CommonGrid>();
    auto phys = std::make_shared<CommonPhysics>();
    auto cfg = std::make_shared<EvolveConfig>();
    auto init = std::make_shared<std::string>("gauss");
    auto amp = std::make_shared<double>(1.0);
    auto width = std::make_shared<double>(1.0);
    auto perturb = std::make_shared<double>(0.0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out_series = std::make_shared<std::string>("series.csv");
    auto out_final = std::make_shared<std::string>("");

    add_grid_flags(app, *grid_opts);
    add_physics_flags(app, *phys);
    app->add_option("--dt", cfg->dt, "time step");
    app->add_option("--t-end", cfg->t_end, "final time");
    app->add_option("--monitor-every", cfg->monitor_every, "diagnostic cadence in steps");
    app->add_flag("--dealias,!--no-dealias", cfg->dealias, "2/3-rule dealiasing");
    app->add_option("--drift-abort", cfg->drift_abort, "relative mass-drift abort");
    app->add_flag("--nonlinear,!--linear-only", cfg->nonlinear, "cubic term on/off");
    app->add_option("--init", *init, "snapshot:PATH | phi0 | gauss");
    app->add_option("--amp", *amp, "gauss amplitude");
    app->add_option("--width", *width, "gauss width");
    app->add_option("--perturb", *perturb, "gaussian noise amplitude added to init");
    app->add_option("--seed", *seed, "rng seed for --perturb");
    app->add_option("--out-series", *out_series, "diagnostics CSV path");
    app->add_option("--out-final", *out_final, "final CNLS snapshot path");

    app->callback([=]() {
        PhysicsParams p = to_params(*phys);
        GridSpec grid = make_grid(grid_opts->dim, grid_opts->n, grid_opts->box);
        p.validate(grid.dim());
        Field u0 = make_init(*init, grid, p, *amp, *width, *perturb, *seed);
        ResolvedConfig rc;
        rc.add("command", std::string("evolve"));
        record(rc, *grid_opts, *phys);
        rc.add("dt", cfg->dt);
        rc.add("t_end", cfg->t_end);
        rc.add("monitor_every", cfg->monitor_every);
        rc.add("dealias", cfg->dealias);
        rc.add("drift_abort", cfg->drift_abort);
        rc.add("nonlinear", cfg->nonlinear);
        rc.add("init", *init);
        rc.add("amp", *amp);
        rc.add("width", *width);
        rc.add("perturb", *perturb);
        rc.add("seed", std::to_string(*seed));

        auto flush_series = [&](const DiagnosticSeries& s) {
            DiagnosticSeries out = s;
            out.preamble = rc.preamble();
            std::ofstream os(*out_series);
            if (!os) throw Error("cannot open " + *out_series);
            out.write_csv(os);
        };
        try {
            p.validate(u0.grid.dim());
            EvolveResult res = evolve(u0, p, *cfg);
            flush_series(res.series);
            if (!out_final->empty()) {
                write_snapshot(*out_final, res.final);
                ordered_json side;
                side["version"] = kVersion;
                side["config"] = rc.to_json();
                write_sidecar(*out_final, side);
            }
        } catch (const ResolutionLoss& e) {
            flush_series(e.series);
            throw;
        } catch (const NonFiniteAbort& e) {
            flush_series(e.series);
            throw;
        }
    });
    return 0;
}

// ----------------------------------------------------------- groundstate ----
int cmd_groundstate(CLI::App* app) {
    auto grid_opts = std::make_shared<CommonGrid>();
    grid_opts->n = 2048;
    auto phys = std::make_shared<CommonPhysics>();
    phys->eps = 0.0;
    auto target = std::make_shared<std::string>("standing");
    auto tol = std::make_shared<double>(1e-12);
    auto max_iter = std::make_shared<int>(400);
    auto p_exp = std::make_shared<double>(2.0);
    auto sweep = std::make_shared<std::string>("");
    auto jobs = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>("groundstate.cnls");

    add_grid_flags(app, *grid_opts);
    add_physics_flags(app, *phys);
    app->add_option("--target", *target, "standing | zeromass");
    app->add_option("--tol", *tol, "residual tolerance");
    app->add_option("--max-iter", *max_iter, "iteration cap");
    app->add_option("--p", *p_exp, "nonlinearity exponent (zeromass)");
    app->add_option("--sweep", *sweep, "eps=e1,e2,... decreasing sweep list");
    app->add_option("--jobs", *jobs, "parallel sweep entries (per-entry isolation)");
    app->add_option("--out", *out, "output path (snapshot, or CSV with --sweep)");

    app->callback([=]() {
        PhysicsParams p = to_params(*phys);
        GridSpec grid = make_grid(grid_opts->dim, grid_opts->n, grid_opts->box);
        p.validate(grid.dim());
        ResolvedConfig rc;
        rc.add("command", std::string("groundstate"));
        record(rc, *grid_opts, *phys);
        rc.add("target", *target);
        rc.add("tol", *tol);
        rc.add("max_iter", *max_iter);
        rc.add("p", *p_exp);

        if (!sweep->empty()) {
            if (sweep->rfind("eps=", 0) != 0)
                throw BadParams("--sweep expects eps=e1,e2,...");
            const std::vector<double> eps_list = parse_csv_doubles(sweep->substr(4));
            rc.add("sweep", sweep->substr(4));
            rc.add("jobs", *jobs);
            SweepRecord rec = epsilon_sweep(p.omega, p.beta, grid, eps_list,
                                            std::min(*tol, 1e-11), *max_iter, *jobs);
            std::ofstream os(*out);
            if (!os) throw Error("cannot open " + *out);
            for (const std::string& line : rc.preamble()) os << "# " << line << "\n";
            os << "eps,m_eps,h1_dist,lbeta_term\n";
            for (const SweepEntry& e : rec.entries) {
                if (!e.converged) {
                    os << format_double(e.eps) << ",nan,nan,nan\n";
                    continue;
                }
                os << format_double(e.eps) << ',' << format_double(e.m_eps) << ','
                   << format_double(e.h1_distance_to_phi0) << ','
                   << format_double(e.lbeta_term) << "\n";
            }
            if (!rec.all_converged())
                throw NoConvergence("one or more sweep entries failed (flagged nan)");
            return;
        }

        SolveOptions o;
        o.target = *target == "zeromass" ? SolveTarget::ZeroMass : SolveTarget::Standing;
        if (*target != "zeromass" && *target != "standing")
            throw BadParams("unknown --target (use standing or zeromass)");
        o.p_exponent = *p_exp;
        o.tol = *tol;
        o.max_iter = *max_iter;
        GroundState gs = petviashvili_solve(p, grid, o);
        write_snapshot(*out, gs.profile);
        ordered_json side;
        side["version"] = kVersion;
        side["config"] = rc.to_json();
        side["beta"] = p.beta;
        side["eps"] = p.eps;
        side["sigma"] = p.sigma;
        side["omega"] = p.omega;
        side["residual"] = gs.residual;
        side["iterations"] = gs.iterations;
        side["norms"] = {{"l2", gs.norms.l2},
                         {"h1", gs.norms.h1},
                         {"xbeta", gs.norms.xbeta},
                         {"xbeta_dot", gs.norms.xbeta_dot}};
        side["nehari"] = gs.nehari;
        side["mean_abs"] = gs.mean_abs;
        side["stabilizer_defect"] = gs.stabilizer_defect;
        write_sidecar(*out, side);
    });
    return 0;
}

// ---------------------------------------------------------------- analyze ----
void cmd_analyze_decay(CLI::App* app) {
    auto grid_opts = std::make_shared<CommonGrid>();
    grid_opts->dim = 1;
    grid_opts->n = 8192;
    grid_opts->box = 200.0;
    auto phys = std::make_shared<CommonPhysics>();
    auto lambda = std::make_shared<double>(16.0);
    auto tmin = std::make_shared<double>(0.05);
    auto tmax = std::make_shared<double>(0.4);
    auto tcount = std::make_shared<int>(10);
    auto out = std::make_shared<std::string>("decay_probe.json");

    add_grid_flags(app, *grid_opts);
    add_physics_flags(app, *phys);
    app->add_option("--lambda", *lambda, "dyadic band center (>= 8)");
    app->add_option("--t-min", *tmin, "first probe time");
    app->add_option("--t-max", *tmax, "last probe time");
    app->add_option("--t-count", *tcount, "number of log-spaced times");
    app->add_option("--out", *out, "JSON report path");

    app->callback([=]() {
        PhysicsParams p = to_params(*phys);
        GridSpec grid = make_grid(grid_opts->dim, grid_opts->n, grid_opts->box);
        p.validate(grid.dim());
        if (*tcount < 2) throw BadParams("need at least two times");
        std::vector<double> times(*tcount);
        for (int i = 0; i < *tcount; ++i)
            times[i] = *tmin * std::pow(*tmax / *tmin,
                                        static_cast<double>(i) / (*tcount - 1));
        DecayProbeResult r = decay_probe(*lambda, p, grid, times);
        ResolvedConfig rc;
        rc.add("command", std::string("analyze decay-probe"));
        record(rc, *grid_opts, *phys);
        rc.add("lambda", *lambda);
        rc.add("t_min", *tmin);
        rc.add("t_max", *tmax);
        rc.add("t_count", *tcount);
        ordered_json j;
        j["version"] = kVersion;
        j["config"] = rc.to_json();
        j["lambda"] = r.lambda;
        j["times"] = r.times;
        j["sup_abs"] = r.sup_abs;
        j["fitted_slope"] = r.fitted_slope;
        j["fit_residual"] = r.fit_residual;
        j["outside_paper_hypothesis"] = r.outside_paper_hypothesis;
        write_json(*out, j);
        std::cout << "fitted_slope " << format_double(r.fitted_slope) << "\n";
    });
}

void cmd_analyze_tailfit(CLI::App* app) {
    auto snap = std::make_shared<std::string>("");
    auto window = std::make_shared<std::string>("10,100");
    auto max_res = std::make_shared<double>(0.5);
    auto out = std::make_shared<std::string>("tail_fit.json");
    app->add_option("--snapshot", *snap, "CNLS profile snapshot")->required();
    app->add_option("--window", *window, "rmin,rmax fit window");
    app->add_option("--max-residual", *max_res, "noise gate for the fit");
    app->add_option("--out", *out, "JSON report path");
    app->callback([=]() {
        const std::vector<double> w = parse_csv_doubles(*window);
        if (w.size() != 2) throw BadParams("--window expects rmin,rmax");
        Field u = read_snapshot(*snap);
        TailFit f = tail_decay_fit(u, w[0], w[1], *max_res);
        ResolvedConfig rc;
        rc.add("command", std::string("analyze tail-fit"));
        rc.add("snapshot", *snap);
        rc.add("window", *window);
        rc.add("max_residual", *max_res);
        ordered_json j;
        j["version"] = kVersion;
        j["config"] = rc.to_json();
        j["exponent"] = f.exponent;
        j["intercept"] = f.intercept;
        j["residual"] = f.residual;
        write_json(*out, j);
        std::cout << "exponent " << format_double(f.exponent) << "\n";
    });
}

void cmd_analyze_thresholds(CLI::App* app) {
    auto grid_opts = std::make_shared<CommonGrid>();
    auto phys = std::make_shared<CommonPhysics>();
    auto snap = std::make_shared<std::string>("");
    auto case_name = std::make_shared<std::string>("auto");
    auto kappa = std::make_shared<double>(0.0);
    auto m_exp = std::make_shared<double>(0.0);
    auto scale = std::make_shared<double>(1.0);
    auto init = std::make_shared<std::string>("");
    auto out = std::make_shared<std::string>("thresholds.json");

    add_grid_flags(app, *grid_opts);
    add_physics_flags(app, *phys);
    app->add_option("--snapshot", *snap, "u0 snapshot (overrides --init)");
    app->add_option("--init", *init, "psi | gauss initial data on the grid");
    app->add_option("--scale", *scale, "amplitude scaling of the initial data");
    app->add_option("--case", *case_name,
                    "auto|defocusing|n1|n2mass|n3pair|n4critical|zeromasspair|interpolated");
    app->add_option("--kappa", *kappa, "interpolated case parameter");
    app->add_option("--m", *m_exp, "interpolated case parameter");
    app->add_option("--out", *out, "JSON report path");

    app->callback([=]() {
        PhysicsParams p = to_params(*phys);
        ProfileProvider provider;
        Field u0 = Field::zero(make_grid(1, 2, 1.0));
        if (!snap->empty()) {
            u0 = read_snapshot(*snap);
        } else {
            GridSpec grid = make_grid(grid_opts->dim, grid_opts->n, grid_opts->box);
            if (*init == "psi") {
                u0 = provider.psi_profile(grid_opts->dim, 2);
            } else if (*init == "gauss" || init->empty()) {
                u0 = sample_field(grid, [&](const std::array<double, 4>& x) {
                    double r2 = 0.0;
                    for (int d = 0; d < grid.dim(); ++d) r2 += x[d] * x[d];
                    return cplx{std::exp(-r2 / 2.0), 0.0};
                });
            } else {
                throw BadParams("unknown --init for thresholds");
            }
        }
        p.validate(u0.grid.dim());
        for (cplx& z : u0.values) z *= *scale;

        ThresholdReport r;
        if (*case_name == "interpolated") {
            r = check_interpolated(u0, p, *kappa, *m_exp, provider);
        } else if (*case_name == "auto") {
            r = check_global(u0, p, provider);
        } else {
            ThresholdCase c;
            if (*case_name == "defocusing") c = ThresholdCase::Defocusing;
            else if (*case_name == "n1") c = ThresholdCase::N1;
            else if (*case_name == "n2mass") c = ThresholdCase::N2Mass;
            else if (*case_name == "n3pair") c = ThresholdCase::N3Pair;
            else if (*case_name == "n4critical") c = ThresholdCase::N4Critical;
            else if (*case_name == "zeromasspair") c = ThresholdCase::ZeroMassPair;
            else throw BadParams("unknown --case " + *case_name);
            r = check_global(c, u0, p, provider);
        }
        ResolvedConfig rc;
        rc.add("command", std::string("analyze thresholds"));
        record(rc, *grid_opts, *phys);
        rc.add("case", *case_name);
        rc.add("scale", *scale);
        rc.add("kappa", *kappa);
        rc.add("m", *m_exp);
        if (!snap->empty()) rc.add("snapshot", *snap);
        ordered_json j;
        j["version"] = kVersion;
        j["config"] = rc.to_json();
        j["case"] = to_string(r.case_id);
        j["satisfied"] = r.satisfied;
        j["margins"] = r.margins;
        j["constants"] = r.constants_used;
        write_json(*out, j);
        std::cout << "satisfied " << (r.satisfied ? "true" : "false") << "\n";
    });
}

void cmd_analyze_kernel(CLI::App* app) {
    auto phys = std::make_shared<CommonPhysics>();
    phys->beta = 0.25;
    auto xs = std::make_shared<std::string>("1,2,5");
    auto out = std::make_shared<std::string>("kernel_oracle.json");
    auto fft_n = std::make_shared<int>(0);
    auto fft_box = std::make_shared<double>(32768.0);
    add_physics_flags(app, *phys);
    app->add_option("--x", *xs, "comma-separated evaluation points");
    app->add_option("--fft-n", *fft_n, "grid size for the FFT cross-check (0 = off)");
    app->add_option("--fft-box", *fft_box, "box length for the FFT cross-check");
    app->add_option("--out", *out, "JSON report path");
    app->callback([=]() {
        PhysicsParams p = to_params(*phys);
        const std::vector<double> x = parse_csv_doubles(*xs);
        if (x.empty()) throw BadParams("--x must list at least one point");
        ordered_json j;
        ResolvedConfig rc;
        rc.add("command", std::string("analyze kernel-oracle"));
        rc.add("beta", p.beta);
        rc.add("eps", p.eps);
        rc.add("omega", p.omega);
        rc.add("x", *xs);
        rc.add("fft_n", *fft_n);
        rc.add("fft_box", *fft_box);
        j["version"] = kVersion;
        j["config"] = rc.to_json();
        j["x"] = x;
        std::vector<double> values, errors;
        std::vector<std::array<double, 2>> poles;
        for (double xi : x) {
            OracleResult r = residue_kernel_oracle(xi, p);
            values.push_back(r.value);
            errors.push_back(r.quad_error);
            if (poles.empty())
                for (const auto& z : r.poles) poles.push_back({z.real(), z.imag()});
        }
        j["oracle"] = values;
        j["quad_error"] = errors;
        j["poles"] = poles;
        if (*fft_n > 0) {
            // pi * grid kernel = the oracle's normalization of L_beta K_beta
            GridSpec grid = make_grid(1, *fft_n, *fft_box);
            Spectrum s = Spectrum::zero(grid);
            const double invL = 1.0 / grid.box_length();
            for_each_mode(grid, [&](std::size_t i, double xi2) {
                const double r = std::sqrt(xi2);
                const double lk =
                    xi2 == 0.0
                        ? 1.0 / p.eps
                        : 1.0 / (p.eps + p.omega * std::pow(r, 2.0 * p.beta) +
                                 std::pow(r, 2.0 * p.beta + 2.0));
                s.coeffs[i] = lk * invL;
            });
            const Field f = inverse(s);
            std::vector<double> fft_vals;
            for (double xi : x) {
                const double pos = (xi + 0.5 * grid.box_length()) / grid.spacing();
                const long idx = std::lround(pos);
                if (std::abs(pos - idx) > 1e-9)
                    throw BadParams("x = " + std::to_string(xi) +
                                    " is not on the FFT grid");
                fft_vals.push_back(M_PI * f.values[static_cast<std::size_t>(idx)].real());
            }
            j["fft"] = fft_vals;
        }
        write_json(*out, j);
        for (std::size_t i = 0; i < x.size(); ++i)
            std::cout << "x " << format_double(x[i]) << " oracle "
                      << format_double(values[i]) << "\n";
    });
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"convnls: pseudospectral toolkit for the cubic Schrodinger "
                 "equation with singular convolution potential"};
    app.set_config("--config", "",
                   "key=value config file with a [subcommand] section; flags override");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    CLI::App* evolve_cmd = app.add_subcommand("evolve", "split-step time integration");
    cmd_evolve(evolve_cmd);

    CLI::App* gs_cmd = app.add_subcommand("groundstate", "Petviashvili solitary-wave solves");
    cmd_groundstate(gs_cmd);

    CLI::App* an = app.add_subcommand("analyze", "decay, tails, thresholds, kernel oracle");
    an->require_subcommand(1);
    cmd_analyze_decay(an->add_subcommand("decay-probe", "dispersive decay slope"));
    cmd_analyze_tailfit(an->add_subcommand("tail-fit", "algebraic tail exponent"));
    cmd_analyze_thresholds(an->add_subcommand("thresholds", "global-boundedness margins"));
    cmd_analyze_kernel(an->add_subcommand("kernel-oracle", "residue quadrature vs FFT"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "convnls: error: " << e.what() << "\n";
        return classify_error(e);
    }
    return 0;
}

} // namespace convnls::cli
