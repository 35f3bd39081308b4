#include "convnls/profiles.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "convnls/transform.hpp"
#include "convnls/version.hpp"

namespace convnls {

namespace {

using nlohmann::json;

std::mutex g_store_mutex;

json load_store(const std::string& path) {
    std::ifstream is(path);
    if (!is) return json::object();
    json j;
    try {
        is >> j;
    } catch (...) {
        return json::object();
    }
    return j.is_object() ? j : json::object();
}

void save_store(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) return;  // cache is best-effort
    os << j.dump(2) << "\n";
}

json to_json(const ProfileNorms& n) {
    return json{{"mass", n.mass},         {"gradsq", n.gradsq},
                {"l4_4", n.l4_4},         {"energy0", n.energy0},
                {"lbetasq", n.lbetasq},   {"xbeta_dot_sq", n.xbeta_dot_sq},
                {"energy", n.energy},     {"version", kVersion}};
}

ProfileNorms from_json(const json& j) {
    ProfileNorms n;
    n.mass = j.at("mass").get<double>();
    n.gradsq = j.at("gradsq").get<double>();
    n.l4_4 = j.at("l4_4").get<double>();
    n.energy0 = j.at("energy0").get<double>();
    n.lbetasq = j.value("lbetasq", 0.0);
    n.xbeta_dot_sq = j.value("xbeta_dot_sq", 0.0);
    n.energy = j.value("energy", 0.0);
    return n;
}

std::string grid_tag(const GridSpec& g) {
    std::ostringstream os;
    os << "N=" << g.points_per_axis() << ",L=" << g.box_length();
    return os.str();
}

ProfileNorms norms_of(const Field& u, const PhysicsParams& p) {
    ProfileNorms n;
    const Spectrum s = transform(u);
    const double vol = u.grid.box_volume();
    double l2 = 0.0, gr = 0.0, lb = 0.0;
    const double e = -2.0 * p.beta;
    for_each_mode(u.grid, [&](std::size_t i, double xi2) {
        const double w = std::norm(s.coeffs[i]);
        l2 += w;
        gr += xi2 * w;
        if (xi2 > 0.0) lb += std::pow(xi2, 0.5 * e) * w;
    });
    n.mass = vol * l2;
    n.gradsq = vol * gr;
    n.lbetasq = vol * lb;
    n.xbeta_dot_sq = n.gradsq + n.lbetasq;
    double l4 = 0.0;
    for (const cplx& z : u.values) {
        const double a = std::norm(z);
        l4 += a * a;
    }
    n.l4_4 = l4 * u.grid.cell_volume();
    n.energy0 = 0.5 * n.gradsq - 0.25 * n.l4_4;
    n.energy = 0.5 * n.gradsq + 0.5 * n.lbetasq - 0.25 * n.l4_4;
    return n;
}

double radial_integral(double (*f)(double, void*), void* params) {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
    gsl_function gf{f, params};
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2048);
    double v = 0.0, err = 0.0;
    gsl_integration_qagiu(&gf, 0.0, 0.0, 1e-12, 2048, ws, &v, &err);
    gsl_integration_workspace_free(ws);
    return v;
}

double w_grad_integrand(double r, void*) {
    const double w2 = 1.0 + r * r / 8.0;
    const double g = r / (4.0 * w2 * w2);
    return r * r * r * g * g;
}

double w_quartic_integrand(double r, void*) {
    const double w = 1.0 / (1.0 + r * r / 8.0);
    return r * r * r * w * w * w * w;
}

} // namespace

ProfileProvider::ProfileProvider(std::optional<std::string> path) {
    if (path) {
        path_ = *path;
    } else if (const char* env = std::getenv("CONVNLS_CONSTANTS_STORE")) {
        path_ = env;
    } else {
        path_ = "convnls_constants.json";
    }
}

GridSpec ProfileProvider::psi_grid(int n) {
    switch (n) {
        case 1: return make_grid(1, 2048, 60.0);
        case 2: return make_grid(2, 256, 40.0);
        case 3: return make_grid(3, 64, 12.0);
        default: throw BadParams("psi profiles supported for n in 1..3");
    }
}

GridSpec ProfileProvider::qstar_grid(int n) {
    switch (n) {
        case 1: return make_grid(1, 8192, 800.0);
        case 2: return make_grid(2, 512, 200.0);
        default: throw BadParams("Q* grids provided for n in 1..2");
    }
}

Field ProfileProvider::psi_profile(int n, int p) {
    const GridSpec g = psi_grid(n);
    if (n == 1) return classical_profiles(ProfileKind::PsiNLS, 1.0, g, p);
    if (n == 3 && p != 2) throw BadParams("only p = 2 is wired for n = 3");
    if (p != 2) throw BadParams("psi profiles wired for p = 2 beyond n = 1");
    return classical_profiles(ProfileKind::PsiNLS, 1.0, g, p);
}

ProfileNorms ProfileProvider::psi_norms(int n, int p) {
    if (n == 4 && p == 2)
        throw BadParams("n = 4, p = 2 is energy-critical; use w_norms");
    std::scoped_lock lk(g_store_mutex);
    const GridSpec g = psi_grid(n);
    std::ostringstream key;
    key << "psi:n=" << n << ",p=" << p << "," << grid_tag(g);
    json store = load_store(path_);
    if (store.contains(key.str())) return from_json(store[key.str()]);

    Field psi = psi_profile(n, p);
    PhysicsParams pp;
    pp.beta = 0.25 * n;
    pp.eps = 0.0;
    pp.omega = 1.0;
    ProfileNorms norms = norms_of(psi, pp);
    norms.lbetasq = 0.0;  // beta-free entry
    norms.xbeta_dot_sq = norms.gradsq;
    norms.energy = norms.energy0;
    store[key.str()] = to_json(norms);
    save_store(path_, store);
    return norms;
}

ProfileNorms ProfileProvider::w_norms() {
    ProfileNorms n;
    const double s3 = 2.0 * M_PI * M_PI;  // |S^3|
    n.gradsq = s3 * radial_integral(&w_grad_integrand, nullptr);
    n.l4_4 = s3 * radial_integral(&w_quartic_integrand, nullptr);
    n.mass = std::numeric_limits<double>::quiet_NaN();  // W is not L2 in R^4
    n.energy0 = 0.5 * n.gradsq - 0.25 * n.l4_4;
    n.energy = n.energy0;
    n.xbeta_dot_sq = n.gradsq;
    return n;
}

Field ProfileProvider::qstar_profile(double beta, int n, int p) {
    const GridSpec g = qstar_grid(n);
    PhysicsParams pp;
    pp.beta = beta;
    pp.eps = 1.0;
    pp.omega = 0.0;
    SolveOptions o;
    o.target = SolveTarget::ZeroMass;
    o.p_exponent = p;
    o.tol = 1e-12;
    o.max_iter = 600;
    return petviashvili_solve(pp, g, o).profile;
}

ProfileNorms ProfileProvider::qstar_norms(double beta, int n, int p) {
    std::scoped_lock lk(g_store_mutex);
    const GridSpec g = qstar_grid(n);
    std::ostringstream key;
    key << "qstar:beta=" << beta << ",n=" << n << ",p=" << p << "," << grid_tag(g);
    json store = load_store(path_);
    ProfileNorms norms;
    if (store.contains(key.str())) {
        norms = from_json(store[key.str()]);
    } else {
        PhysicsParams pp;
        pp.beta = beta;
        pp.eps = 1.0;
        pp.omega = 0.0;
        Field q = qstar_profile(beta, n, p);
        norms = norms_of(q, pp);
        store[key.str()] = to_json(norms);
        save_store(path_, store);
    }
    // the proof identity used by the thresholds (p = 2 only)
    if (p == 2) {
        const double defect =
            std::abs(4.0 * norms.energy - norms.xbeta_dot_sq) / norms.xbeta_dot_sq;
        if (defect > 1e-6)
            throw InconsistentState("cached Q* violates 4E = ||.||_Xdot^2 (defect " +
                                    std::to_string(defect) + ")");
    }
    return norms;
}

} // namespace convnls
