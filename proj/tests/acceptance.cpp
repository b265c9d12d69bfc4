// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "d2d/channel.hpp"
#include "d2d/commands.hpp"
#include "d2d/config.hpp"

using namespace d2d;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, double seconds, const std::string& detail) {
    std::printf("[%s] criterion %d %-28s %7.2fs  %s\n", pass ? "PASS" : "FAIL", id, name, seconds, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string f(double x) { return fmt_num(x); }

// 1. Worked THT example.
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    ThresholdSpec spec{ThresholdRule::fixed, 83.15, 87.9};
    DetectionProfile det = map_to_hypotheses({90.7, 80.9, 85.4}, 1.0, spec);
    double worst = std::max({std::abs(det.pd[1] - 0.988), std::abs(det.pd[2] - 0.981), std::abs(det.pd[0] - 0.997),
                             std::abs(det.pe[0] - 0.003)});
    double secs = seconds_since(t0);
    report(1, "worked detection example", worst <= 1e-3 && secs < 1.0, secs,
           "P_d=(" + f(det.pd[0]) + ", " + f(det.pd[1]) + ", " + f(det.pd[2]) + ") P_e,H0=" + f(det.pe[0]) +
               " max|err|=" + f(worst) + " (tol 1e-3)");
}

// 2. Closed-form roots equal the companion bisection root on a randomized grid.
void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        ExperimentConfig cfg = default_config();
        Model& m = cfg.model;
        m.sys.rate = 0.05 + 3.0 * u(rng);
        m.sys.theta = std::pow(10.0, -3 + 3 * u(rng));
        m.sys.block_len = 20 + std::floor(300 * u(rng));
        m.sys.si_beta = u(rng);
        m.sigma = 0.2 + 5 * u(rng);
        m.sys.duplex = u(rng) < 0.5 ? Duplex::full : Duplex::half;
        Distances d = cfg.distances;
        for (double* x : {&d.dt_dr, &d.dt_mc, &d.mc_dr, &d.dt_MC, &d.MC_dr, &d.ut_dr, &d.ut_mc, &d.ut_MC})
            *x *= 0.5 + u(rng);
        m.budget = budget_from_distances(d);
        m.mc_samples = 2000;
        m.batches = 1;
        m.seed = derive_seed(99, i);
        Evaluation ev = evaluate(m, m.make_bank());
        double r1 = perron_root(ev.spec_n1), r2 = perron_root(ev.spec_n2);
        worst = std::max({worst, rel(truncated_root_n1(ev.terms), r1), rel(truncated_root_n2(ev.terms), r2)});
    }
    double secs = seconds_since(t0);
    report(2, "closed form vs companion", worst <= 1e-10 && secs < 10, secs,
           "max rel err " + f(worst) + " over 100 points (tol 1e-10)");
}

// 3. Analytical EC vs empirical EC on the default geometry.
void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = default_config();
    bool ok = true;
    std::string detail;
    FadingBank bank = cfg.model.make_bank();
    for (double theta : {0.005, 0.01, 0.05}) {
        ExperimentConfig c = cfg;
        c.model.sys.theta = theta;
        Evaluation ev = evaluate(c.model, bank);
        for (QueueModel q : {QueueModel::n1, QueueModel::n2}) {
            SimConfig sc = c.sim;
            sc.queue = q;
            ServicePaths sp = simulate_service_paths(c.model.sys, c.model.budget, ev.detection, c.model.prior, sc);
            EmpiricalEC e = empirical_ec(sp.total, sc.num_blocks, theta, sc.bootstrap, derive_seed(sc.seed, 1));
            double ana = q == QueueModel::n1 ? ev.closed_n1 : ev.closed_n2;
            double r = (e.ec - ana) / ana;
            bool in_ci = e.has_ci && ana >= e.ci_lo && ana <= e.ci_hi;
            bool pass = std::abs(r) <= 0.05 || in_ci;
            ok = ok && pass;
            char buf[96];
            std::snprintf(buf, sizeof buf, " th=%g/%s:%+.2f%%", theta, to_string(q), 100 * r);
            detail += buf;
        }
    }
    double secs = seconds_since(t0);
    report(3, "analytic vs Monte Carlo EC", ok && secs < 60, secs, "rel diff" + detail + " (tol 5% or CI)");
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// 4. Trend properties.
void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = default_config();
    FadingBank bank = cfg.model.make_bank();
    auto curve = [&](const std::function<void(Model&, double)>& set, const std::vector<double>& xs, bool n2 = false) {
        std::vector<double> ec;
        for (double x : xs) {
            Model m = cfg.model;
            set(m, x);
            auto [a, b] = ec_pair(m, bank);
            ec.push_back(n2 ? b : a);
        }
        return ec;
    };

    // (a) strictly decreasing in theta over [0.001, 1]
    std::vector<double> thetas;
    for (int i = 0; i < 40; ++i) thetas.push_back(std::pow(10.0, -3 + 3.0 * i / 39));
    bool a_ok = true;
    for (bool n2 : {false, true}) {
        auto ec = curve([](Model& m, double x) { m.sys.theta = x; }, thetas, n2);
        for (std::size_t i = 1; i < ec.size(); ++i) a_ok = a_ok && ec[i] < ec[i - 1];
    }

    // (b) single discrete mode in r on a 60-point grid
    auto rs = linspace(0.1, 3.0, 60);
    bool b_ok = true;
    double argmax_r = 0;
    for (bool n2 : {false, true}) {
        auto ec = curve([](Model& m, double x) { m.sys.rate = x; }, rs, n2);
        int modes = 0;
        for (std::size_t i = 0; i < ec.size(); ++i) {
            bool left = i == 0 || ec[i] > ec[i - 1];
            bool right = i + 1 == ec.size() || ec[i] > ec[i + 1];
            if (left && right) {
                ++modes;
                argmax_r = rs[i];
            }
        }
        b_ok = b_ok && modes == 1;
    }

    // (c) nonincreasing in sigma and flat beyond 5
    std::vector<double> sig;
    for (int i = 1; i <= 100; ++i) sig.push_back(0.1 * i);
    auto ecs = curve([](Model& m, double x) { m.sigma = x; }, sig);
    bool c_ok = true;
    double lo_max = -1e300, lo_min = 1e300, hi_diff = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        if (i > 0) c_ok = c_ok && ecs[i] <= ecs[i - 1] + 1e-9 * std::abs(ecs[i - 1]);
        if (sig[i] < 5 - 1e-9) {
            lo_max = std::max(lo_max, ecs[i]);
            lo_min = std::min(lo_min, ecs[i]);
        } else if (i + 1 < sig.size()) {
            hi_diff = std::max(hi_diff, std::abs(ecs[i + 1] - ecs[i]));
        }
    }
    double ratio = hi_diff / (lo_max - lo_min);
    c_ok = c_ok && ratio < 0.05;

    // (d) nondecreasing in beta, FD >= HD at beta = 1 within CI
    auto betas = linspace(0, 1, 21);
    auto ecb = curve([](Model& m, double x) { m.sys.si_beta = x; }, betas);
    bool d_ok = true;
    for (std::size_t i = 1; i < ecb.size(); ++i) d_ok = d_ok && ecb[i] >= ecb[i - 1] - 1e-9 * std::abs(ecb[i - 1]);
    Model fd = cfg.model, hd = cfg.model;
    fd.sys.si_beta = hd.sys.si_beta = 1.0;
    hd.sys.duplex = Duplex::half;
    Evaluation efd = evaluate(fd, bank, true), ehd = evaluate(hd, bank, true);
    d_ok = d_ok && efd.ec_n1.ec >= ehd.ec_n1.ec - (efd.ci_n1 + ehd.ci_n1);

    double secs = seconds_since(t0);
    report(4, "trend properties", a_ok && b_ok && c_ok && d_ok && secs < 300, secs,
           std::string("(a)") + (a_ok ? "ok" : "no") + " (b)" + (b_ok ? "ok" : "no") + " argmax r=" + f(argmax_r) +
               " (c)" + (c_ok ? "ok" : "no") + " flat ratio=" + f(ratio) + " (d)" + (d_ok ? "ok" : "no") +
               " FD=" + f(efd.ec_n1.ec) + " HD=" + f(ehd.ec_n1.ec));
}

// 5. Optimizer vs grid oracle and frozen gradient vs central differences.
void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = default_config();
    FadingBank bank = cfg.model.make_bank();
    const double step = (cfg.grid_hi - cfg.grid_lo) / (cfg.grid_steps - 1);
    bool ok = true;
    std::string detail;
    for (bool n2 : {false, true}) {
        Objective fobj = [&](double r) {
            Model m = cfg.model;
            m.sys.rate = r;
            auto [a, b] = ec_pair(m, bank);
            return n2 ? b : a;
        };
        GDResult gd = gd_optimize(fobj, cfg.gd);
        GridResult gr = grid_search(fobj, cfg.grid_lo, cfg.grid_hi, cfg.grid_steps);
        bool pass = std::abs(gd.r_star - gr.r_star) <= step * (1 + 1e-9);
        ok = ok && pass;
        detail += std::string(n2 ? " n2" : "n1") + ": gd " + f(gd.r_star) + " grid " + f(gr.r_star);
    }
    Evaluation ev = evaluate(cfg.model, bank);
    FrozenCoeffs c{ev.terms.phi, ev.terms.vartheta, ev.terms.eps_ac, cfg.model.sys.block_len, cfg.model.sys.theta};
    double worst = 0;
    for (double r : linspace(0.1, 3.0, 50)) {
        double h = 1e-3 * r;
        // fourth-order central difference
        double fd = (-cost_n1(r + 2 * h, c) + 8 * cost_n1(r + h, c) - 8 * cost_n1(r - h, c) + cost_n1(r - 2 * h, c)) /
                    (12 * h);
        worst = std::max(worst, rel(analytic_gradient_n1(r, c), fd));
    }
    ok = ok && worst <= 1e-6;
    double secs = seconds_since(t0);
    report(5, "optimizer agreement", ok, secs, detail + " step " + f(step) + "; gradient max rel err " + f(worst));
}

// 6. Outage laws against Monte Carlo.
void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = default_config();
    const SystemParams& p = cfg.model.sys;
    const LinkBudget& b = cfg.model.budget;
    const long n = 1000000;
    bool ok = true;
    double worst_z = 0;
    int k = 0;
    for (Mode m : all_modes) {
        for (double g : {0.1, 0.5, 1.0, 3.0, 10.0}) {
            double ana = sir_outage(p, b, m, g).value;
            double emp = empirical_outage(p, b, m, g, n, derive_seed(606, k++));
            double sd = std::sqrt(ana * (1 - ana) / n);
            double z = std::abs(emp - ana) / std::max(sd, 1e-12);
            worst_z = std::max(worst_z, z);
            ok = ok && z <= 3;
        }
    }
    double worst_ccdf = 0;
    for (Mode m : all_modes) {
        double mean = mean_snr(p, b, m);
        double emp = empirical_exp_ccdf(mean, mean, n, derive_seed(607, idx(m)));
        worst_ccdf = std::max(worst_ccdf, rel(emp, std::exp(-1.0)));
    }
    ok = ok && worst_ccdf <= 0.01;
    double secs = seconds_since(t0);
    report(6, "outage law oracles", ok, secs,
           "max |z| " + f(worst_z) + " (tol 3) over 15 points; CCDF max rel err " + f(worst_ccdf) + " (tol 1%)");
}

// 7. Same seed, same CSV bodies.
void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = default_config();
    set_option(cfg, "montecarlo.num_paths", "2000");
    set_option(cfg, "montecarlo.num_blocks", "200");
    set_option(cfg, "harq.mc_samples", "20000");
    set_option(cfg, "modeselect.mc_trials", "100000");
    set_option(cfg, "sweep.steps", "12");
    set_option(cfg, "optimizer.grid_steps", "40");
    set_option(cfg, "montecarlo.seed", "4242");
    bool ok = true;
    std::string detail;
    for (const char* cmd : {"mode-select", "ec", "sweep", "optimize", "validate"}) {
        CommandResult a = run_command(cmd, cfg);
        set_worker_count(3);
        CommandResult b = run_command(cmd, cfg);
        set_worker_count(0);
        bool same = a.outputs.size() == b.outputs.size();
        for (std::size_t i = 0; same && i < a.outputs.size(); ++i) same = a.outputs[i].table.body() == b.outputs[i].table.body();
        ok = ok && same;
        detail += std::string(cmd) + (same ? ":same " : ":DIFF ");
    }
    double secs = seconds_since(t0);
    report(7, "determinism", ok, secs, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    std::printf("%d of 7 criteria failed\n", failures);
    return failures;
}
