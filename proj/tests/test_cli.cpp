#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "convnls/snapshot.hpp"

using namespace convnls;

namespace {

int run_cli(std::vector<std::string> args) {
    std::vector<char*> argv;
    args.insert(args.begin(), "convnls");
    for (std::string& a : args) argv.push_back(a.data());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("evolve writes a bounded defocusing series") {
    const std::string csv = "cli_defoc.csv";
    int rc = run_cli({"evolve", "--dim", "1", "--n", "512", "--box", "40",
                      "--beta", "0.5", "--eps", "1", "--sigma", "-1",
                      "--dt", "1e-3", "--t-end", "0.5", "--monitor-every", "100",
                      "--out-series", csv});
    CHECK(rc == 0);
    std::ifstream is(csv);
    REQUIRE(is.good());
    std::string line;
    std::vector<std::vector<double>> rows;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            CHECK(line == "t,mass,momentum_1,energy,energy0,xbeta,xbeta_dot,threshold_margin");
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    REQUIRE(header_seen);
    REQUIRE(rows.size() >= 2);
    const double e0 = rows.front()[3];
    for (const auto& r : rows) CHECK(r[6] * r[6] <= 2.0 * e0 * (1.0 + 1e-10));
    std::remove(csv.c_str());
}

TEST_CASE("evolve rejects beta outside the admissible range") {
    int rc = run_cli({"evolve", "--dim", "1", "--beta", "0.9", "--n", "128",
                      "--box", "20", "--dt", "1e-2", "--t-end", "0.01",
                      "--out-series", "cli_reject.csv"});
    CHECK(rc == 1);
}

TEST_CASE("groundstate solve produces sidecar and snapshot") {
    const std::string out = "cli_gs.cnls";
    int rc = run_cli({"groundstate", "--target", "standing", "--dim", "1",
                      "--n", "2048", "--box", "60", "--beta", "0.25",
                      "--eps", "0", "--omega", "1", "--tol", "1e-12",
                      "--out", out});
    CHECK(rc == 0);
    Field phi = read_snapshot(out);
    double peak = 0.0;
    for (const cplx& z : phi.values) peak = std::max(peak, std::abs(z));
    CHECK(peak == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    const std::string side = slurp(out + ".json");
    CHECK(side.find("\"residual\"") != std::string::npos);
    CHECK(side.find("convnls 1.0.0") != std::string::npos);
    std::remove(out.c_str());
    std::remove((out + ".json").c_str());
}

TEST_CASE("groundstate gates omega below beta_star") {
    int rc = run_cli({"groundstate", "--target", "standing", "--dim", "1",
                      "--n", "256", "--box", "40", "--beta", "0.5",
                      "--eps", "1", "--omega", "-5", "--out", "cli_gate.cnls"});
    CHECK(rc == 1);
}

TEST_CASE("sweep emits the four-column record") {
    const std::string out = "cli_sweep.csv";
    int rc = run_cli({"groundstate", "--dim", "1", "--n", "2048", "--box", "200",
                      "--beta", "0.5", "--omega", "1",
                      "--sweep", "eps=0.3,0.1", "--out", out});
    CHECK(rc == 0);
    std::ifstream is(out);
    std::string line;
    bool header = false;
    std::vector<double> ms;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            CHECK(line == "eps,m_eps,h1_dist,lbeta_term");
            header = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        ms.push_back(row[1]);
    }
    REQUIRE(ms.size() == 2);
    CHECK(ms[0] >= ms[1] - 1e-10);
    std::remove(out.c_str());
}

TEST_CASE("identical configs give byte-identical outputs") {
    auto run_once = [&](const std::string& path) {
        int rc = run_cli({"evolve", "--dim", "1", "--n", "256", "--box", "30",
                          "--beta", "0.25", "--eps", "0.5", "--sigma", "1",
                          "--dt", "1e-2", "--t-end", "0.2", "--init", "gauss",
                          "--perturb", "1e-3", "--seed", "77",
                          "--drift-abort", "1e-2", "--out-series", path});
        REQUIRE(rc == 0);
    };
    run_once("cli_det_a.csv");
    run_once("cli_det_b.csv");
    CHECK(slurp("cli_det_a.csv") == slurp("cli_det_b.csv"));
    std::remove("cli_det_a.csv");
    std::remove("cli_det_b.csv");
}

TEST_CASE("config file values are used and flags override them") {
    const std::string cfg = "cli_test_config.ini";
    {
        std::ofstream os(cfg);
        os << "[evolve]\ndim=1\nn=256\nbox=30\nbeta=0.25\neps=0.5\nsigma=1\n"
              "dt=1e-2\nt-end=0.1\nout-series=cli_cfg_a.csv\n";
    }
    CHECK(run_cli({"--config", cfg, "evolve"}) == 0);
    CHECK(slurp("cli_cfg_a.csv").find("beta=0.25") != std::string::npos);

    CHECK(run_cli({"--config", cfg, "evolve", "--beta", "0.3",
                   "--out-series", "cli_cfg_b.csv"}) == 0);
    CHECK(slurp("cli_cfg_b.csv").find("beta=0.29999999999999999") != std::string::npos);

    std::remove(cfg.c_str());
    std::remove("cli_cfg_a.csv");
    std::remove("cli_cfg_b.csv");
}

TEST_CASE("analyze kernel-oracle emits values") {
    const std::string out = "cli_oracle.json";
    int rc = run_cli({"analyze", "kernel-oracle", "--beta", "0.25", "--eps", "1",
                      "--omega", "1", "--x", "1,2", "--out", out});
    CHECK(rc == 0);
    const std::string j = slurp(out);
    CHECK(j.find("0.4241849") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("analyze tail-fit on a groundstate snapshot") {
    const std::string gs = "cli_tail_gs.cnls";
    REQUIRE(run_cli({"groundstate", "--dim", "1", "--n", "8192", "--box", "2000",
                     "--beta", "0.25", "--eps", "0.5", "--omega", "1",
                     "--tol", "1e-11", "--out", gs}) == 0);
    const std::string out = "cli_tail.json";
    int rc = run_cli({"analyze", "tail-fit", "--snapshot", gs,
                      "--window", "150,400", "--out", out});
    CHECK(rc == 0);
    CHECK(slurp(out).find("exponent") != std::string::npos);
    std::remove(gs.c_str());
    std::remove((gs + ".json").c_str());
    std::remove(out.c_str());
}

TEST_CASE("evolving a groundstate snapshot keeps its mass") {
    const std::string gs = "cli_chain_gs.cnls";
    REQUIRE(run_cli({"groundstate", "--dim", "1", "--n", "2048", "--box", "80",
                     "--beta", "0.5", "--eps", "0.1", "--omega", "1",
                     "--tol", "1e-11", "--out", gs}) == 0);
    const std::string csv = "cli_chain.csv";
    int rc = run_cli({"evolve", "--init", "snapshot:" + gs, "--beta", "0.5",
                      "--eps", "0.1", "--sigma", "1", "--dt", "1e-3",
                      "--t-end", "1", "--monitor-every", "250",
                      "--out-series", csv});
    CHECK(rc == 0);
    std::ifstream is(csv);
    std::string line;
    std::vector<double> masses;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) { header = true; continue; }
        masses.push_back(std::stod(line.substr(line.find(',') + 1)));
    }
    REQUIRE(masses.size() >= 2);
    CHECK(std::abs(masses.back() - masses.front()) / masses.front() < 1e-10);
    std::remove(gs.c_str());
    std::remove((gs + ".json").c_str());
    std::remove(csv.c_str());
}

TEST_CASE("analyze thresholds reports the n2 mass case") {
    const std::string out = "cli_thr.json";
    int rc = run_cli({"analyze", "thresholds", "--case", "n2mass", "--dim", "2",
                      "--beta", "0.5", "--eps", "1", "--sigma", "1",
                      "--init", "psi", "--scale", "0.9", "--out", out});
    CHECK(rc == 0);
    const std::string j = slurp(out);
    CHECK(j.find("\"satisfied\": true") != std::string::npos);
    CHECK(j.find("\"margins\"") != std::string::npos);

    rc = run_cli({"analyze", "thresholds", "--case", "n2mass", "--dim", "2",
                  "--beta", "0.5", "--eps", "1", "--sigma", "1",
                  "--init", "psi", "--scale", "1.1", "--out", out});
    CHECK(rc == 0);
    CHECK(slurp(out).find("\"satisfied\": false") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("analyze kernel-oracle cross-checks against the FFT") {
    const std::string out = "cli_oracle_fft.json";
    int rc = run_cli({"analyze", "kernel-oracle", "--beta", "0.25", "--eps", "1",
                      "--omega", "1", "--x", "1,2,5", "--fft-n", "1048576",
                      "--fft-box", "16384", "--out", out});
    CHECK(rc == 0);
    const std::string j = slurp(out);
    CHECK(j.find("\"fft\"") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("under-resolved run exits with the abort code") {
    int rc = run_cli({"evolve", "--dim", "1", "--n", "128", "--box", "30",
                      "--beta", "0.25", "--eps", "0.5", "--sigma", "1",
                      "--init", "gauss", "--amp", "6", "--dt", "2e-3",
                      "--t-end", "2", "--monitor-every", "10",
                      "--drift-abort", "1e-8", "--out-series", "cli_abort.csv"});
    CHECK((rc == 2 || rc == 3));  // ResolutionLoss or NonFinite
    // the partial series is still flushed
    CHECK(slurp("cli_abort.csv").find("t,mass") != std::string::npos);
    std::remove("cli_abort.csv");
}

TEST_CASE("unknown subcommand exits with a config error") {
    CHECK(run_cli({"frobnicate"}) == 1);
}
