#include "d2d/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "d2d/channel.hpp"

namespace d2d {

std::string fmt_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string fmt_int(long long x) { return std::to_string(x); }

std::string Table::body() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += "\n";
    }
    return out;
}

namespace {

const char* hyp_name(int h) {
    static const char* names[] = {"H0_direct", "H1_micro", "H2_macro"};
    return names[h];
}

double ec_scale(const ExperimentConfig& cfg) { return cfg.per_channel_use ? 1.0 / cfg.model.sys.block_len : 1.0; }

std::array<double, 3> selection_losses(const ExperimentConfig& cfg) {
    auto geo = cfg.model.budget.first_hop_db();
    if (!cfg.mode_select_losses) return geo;
    auto l = *cfg.mode_select_losses;
    for (int i = 0; i < 3; ++i)
        if (std::isnan(l[i])) l[i] = geo[i];
    return l;
}

void note_clamp(CommandResult& res, const ExperimentConfig& cfg, bool clamped) {
    if (!clamped) return;
    res.warnings.push_back("simplified outage formula left [0,1] and was clamped");
    if (cfg.strict) res.exit_code = 2;
}

void set_variable(Model& m, const std::string& var, double v) {
    if (var == "r") m.sys.rate = v;
    else if (var == "theta") m.sys.theta = v;
    else if (var == "sigma") m.sigma = v;
    else if (var == "beta") m.sys.si_beta = v;
    else if (var == "l") m.sys.block_len = v;
    else throw ConfigError("unknown sweep variable '" + var + "'");
}

struct McPair {
    EmpiricalEC n1, n2;
    ServicePaths paths;
};

McPair simulate_pair(const ExperimentConfig& cfg, const DetectionProfile& det) {
    McPair out;
    SimConfig sc = cfg.sim;
    sc.queue = QueueModel::n1;
    out.paths = simulate_service_paths(cfg.model.sys, cfg.model.budget, det, cfg.model.prior, sc);
    out.n1 = empirical_ec(out.paths.total, sc.num_blocks, cfg.model.sys.theta, sc.bootstrap, derive_seed(sc.seed, 1));
    sc.queue = QueueModel::n2;
    ServicePaths p2 = simulate_service_paths(cfg.model.sys, cfg.model.budget, det, cfg.model.prior, sc);
    out.n2 = empirical_ec(p2.total, sc.num_blocks, cfg.model.sys.theta, sc.bootstrap, derive_seed(sc.seed, 2));
    return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Pass when within rel_tol of the reference or inside [lo, hi].
bool ec_agrees(double analytic, const EmpiricalEC& mc, double rel_tol) {
    if (rel(mc.ec, analytic) <= rel_tol) return true;
    return mc.has_ci && analytic >= mc.ci_lo && analytic <= mc.ci_hi;
}

}  // namespace

CommandResult cmd_mode_select(const ExperimentConfig& cfg) {
    CommandResult res;
    auto losses = selection_losses(cfg);
    DetectionProfile det = map_to_hypotheses(losses, cfg.model.sigma, cfg.model.thresholds);
    Confusion conf = empirical_detection(det, cfg.mc_trials, cfg.detection_seed());

    Table t;
    t.columns = {"hypothesis", "pd_analytic", "pe_analytic", "pd_mc", "pe_mc"};
    std::ostringstream s;
    s << "thresholds: C_AB = " << fmt_num(det.thresholds.c_ab) << " dB, C_BC = " << fmt_num(det.thresholds.c_bc)
      << " dB, sigma = " << fmt_num(det.sigma) << " dB\n";
    for (int h = 0; h < 3; ++h) {
        double pd_mc = conf[h][h];
        t.add({hyp_name(h), fmt_num(det.pd[h]), fmt_num(det.pe[h]), fmt_num(pd_mc), fmt_num(1.0 - pd_mc)});
        s << hyp_name(h) << ": L = " << fmt_num(losses[h]) << " dB  P_d = " << fmt_num(det.pd[h])
          << "  P_e = " << fmt_num(det.pe[h]) << "  (MC " << fmt_num(pd_mc) << ")\n";
    }
    res.outputs.push_back({"mode_select.csv", std::move(t)});
    res.summary = s.str();
    return res;
}

CommandResult cmd_ec(const ExperimentConfig& cfg) {
    CommandResult res;
    FadingBank bank = cfg.model.make_bank();
    Evaluation ev = evaluate(cfg.model, bank, true);
    note_clamp(res, cfg, ev.clamped);
    McPair mc = simulate_pair(cfg, ev.detection);
    const double k = ec_scale(cfg);

    Table t;
    t.columns = {"queue_model", "closed_form", "generic", "analytic_ci", "monte_carlo", "mc_ci_lo", "mc_ci_hi",
                 "unpaired_closed_form", "delta_closed_generic", "delta_mc_rel"};
    std::ostringstream s;
    s << "EC (" << (cfg.per_channel_use ? "bits per channel use" : "bits per block") << "), theta = "
      << fmt_num(cfg.model.sys.theta) << ", r = " << fmt_num(cfg.model.sys.rate) << "\n";
    for (QueueModel q : {QueueModel::n1, QueueModel::n2}) {
        bool n1 = q == QueueModel::n1;
        double closed = ev.truncated ? (n1 ? ev.closed_n1 : ev.closed_n2) : NAN;
        double unpaired = ev.truncated && !n1 ? ev.unpaired_n2 : NAN;
        double gen = n1 ? ev.ec_n1.ec : ev.ec_n2.ec;
        double ci = n1 ? ev.ci_n1 : ev.ci_n2;
        const EmpiricalEC& e = n1 ? mc.n1 : mc.n2;
        t.add({to_string(q), fmt_num(closed * k), fmt_num(gen * k), fmt_num(ci * k), fmt_num(e.ec * k),
               fmt_num(e.ci_lo * k), fmt_num(e.ci_hi * k), fmt_num(unpaired * k), fmt_num((closed - gen) * k),
               fmt_num((e.ec - gen) / gen)});
        s << to_string(q) << ": closed " << fmt_num(closed * k) << "  generic " << fmt_num(gen * k) << " +/- "
          << fmt_num(ci * k) << "  monte carlo " << fmt_num(e.ec * k) << " [" << fmt_num(e.ci_lo * k) << ", "
          << fmt_num(e.ci_hi * k) << "]\n";
    }
    res.outputs.push_back({"ec.csv", std::move(t)});
    res.summary = s.str();
    return res;
}

CommandResult cmd_sweep(const ExperimentConfig& cfg) {
    CommandResult res;
    std::vector<double> grid = cfg.sweep.grid();
    if (grid.empty()) throw ConfigError("empty sweep grid");
    FadingBank bank = cfg.model.make_bank();
    Table t;
    t.columns = {"variable", "value", "ec_n1", "ec_n2", "ci_n1", "ci_n2"};
    std::vector<Evaluation> evs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Model m = cfg.model;
        set_variable(m, cfg.sweep.variable, grid[i]);
        evs[i] = evaluate(m, bank, true);
    }
    bool clamped = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Evaluation& ev = evs[i];
        double k = cfg.per_channel_use
                       ? 1.0 / (cfg.sweep.variable == "l" ? grid[i] : cfg.model.sys.block_len)
                       : 1.0;
        clamped = clamped || ev.clamped;
        t.add({cfg.sweep.variable, fmt_num(grid[i]), fmt_num(ev.ec_n1.ec * k), fmt_num(ev.ec_n2.ec * k),
               fmt_num(ev.ci_n1 * k), fmt_num(ev.ci_n2 * k)});
    }
    note_clamp(res, cfg, clamped);
    res.summary = "swept " + cfg.sweep.variable + " over " + fmt_int(static_cast<long long>(grid.size())) +
                  " points [" + fmt_num(grid.front()) + ", " + fmt_num(grid.back()) + "]\n";
    res.outputs.push_back({"sweep_" + cfg.sweep.variable + ".csv", std::move(t)});
    return res;
}

CommandResult cmd_optimize(const ExperimentConfig& cfg) {
    CommandResult res;
    FadingBank bank = cfg.model.make_bank();
    auto ec_at = [&](double r, QueueModel q) {
        Model m = cfg.model;
        m.sys.rate = r;
        auto [a, b] = ec_pair(m, bank);
        return q == QueueModel::n1 ? a : b;
    };

    Table summary, trace, grid_tab;
    summary.columns = {"queue_model", "r_gd", "ec_gd", "iterations", "converged", "r_grid", "ec_grid", "grid_step",
                       "within_one_step"};
    trace.columns = {"queue_model", "iter", "r", "ec", "grad", "step"};
    grid_tab.columns = {"r", "ec_n1", "ec_n2"};
    std::ostringstream s;
    std::vector<GridResult> grids;
    double step = (cfg.grid_hi - cfg.grid_lo) / (cfg.grid_steps - 1);

    for (QueueModel q : {QueueModel::n1, QueueModel::n2}) {
        Objective f = [&, q](double r) { return ec_at(r, q); };
        Objective grad;
        if (cfg.gd.gradient_mode == GradientMode::analytic_frozen && q == QueueModel::n1 && cfg.model.sys.max_tx == 2) {
            grad = [&](double r) {
                Model m = cfg.model;
                m.sys.rate = r;
                Evaluation ev = evaluate(m, bank, false);
                if (!ev.truncated) throw ConfigError("analytic_frozen needs the underlay,overlay schedule");
                FrozenCoeffs c{ev.terms.phi, ev.terms.vartheta, ev.terms.eps_ac, m.sys.block_len, m.sys.theta};
                return -analytic_gradient_n1(r, c) / (cost_n1(r, c) * m.sys.theta);
            };
        }
        GDResult gd = gd_optimize(f, cfg.gd, grad);
        GridResult gr = grid_search(f, cfg.grid_lo, cfg.grid_hi, cfg.grid_steps);
        bool agree = std::abs(gd.r_star - gr.r_star) <= step * (1 + 1e-9);
        summary.add({to_string(q), fmt_num(gd.r_star), fmt_num(gd.value_star * ec_scale(cfg)), fmt_int(gd.iterations),
                     gd.converged ? "1" : "0", fmt_num(gr.r_star), fmt_num(gr.value_star * ec_scale(cfg)),
                     fmt_num(step), agree ? "1" : "0"});
        for (const auto& st : gd.trace)
            trace.add({to_string(q), fmt_int(st.iter), fmt_num(st.r), fmt_num(st.value * ec_scale(cfg)),
                       fmt_num(st.grad), fmt_num(st.step)});
        s << to_string(q) << ": GD r* = " << fmt_num(gd.r_star) << " (EC " << fmt_num(gd.value_star * ec_scale(cfg))
          << ", " << gd.iterations << " iterations" << (gd.converged ? "" : ", NOT converged") << "), grid r* = "
          << fmt_num(gr.r_star) << (agree ? "" : "  [disagree]") << "\n";
        if (!gd.converged) {
            res.exit_code = 3;
            res.warnings.push_back(std::string("gradient descent did not converge for ") + to_string(q));
        }
        grids.push_back(std::move(gr));
    }
    for (std::size_t i = 0; i < grids[0].r.size(); ++i)
        grid_tab.add({fmt_num(grids[0].r[i]), fmt_num(grids[0].value[i] * ec_scale(cfg)),
                      fmt_num(grids[1].value[i] * ec_scale(cfg))});

    res.outputs.push_back({"optimize.csv", std::move(summary)});
    res.outputs.push_back({"optimize_trace.csv", std::move(trace)});
    res.outputs.push_back({"optimize_grid.csv", std::move(grid_tab)});
    res.summary = s.str();
    return res;
}

CommandResult cmd_validate(const ExperimentConfig& cfg) {
    CommandResult res;
    Table t;
    t.columns = {"check", "value", "reference", "tolerance", "pass"};
    int failures = 0;
    auto check = [&](const std::string& name, double v, double ref, double tol, bool pass) {
        t.add({name, fmt_num(v), fmt_num(ref), fmt_num(tol), pass ? "1" : "0"});
        if (!pass) ++failures;
    };
    const SystemParams& p = cfg.model.sys;
    const LinkBudget& b = cfg.model.budget;
    const long n = cfg.mc_trials;
    std::uint64_t seed = cfg.detection_seed();

    DetectionProfile det = map_to_hypotheses(selection_losses(cfg), cfg.model.sigma, cfg.model.thresholds);
    Confusion conf = empirical_detection(det, n, seed);
    for (int h = 0; h < 3; ++h) {
        double sd = std::sqrt(det.pd[h] * (1 - det.pd[h]) / n);
        double tol = std::max(3 * sd, 3.0 / n);
        check(std::string("detection_") + hyp_name(h), conf[h][h], det.pd[h], tol,
              std::abs(conf[h][h] - det.pd[h]) <= tol);
    }

    for (Mode m : all_modes) {
        double g = gamma_req(p, m);
        if (p.outage_mode == OutageMode::exact) {
            double ana = sir_outage(p, b, m, g).value;
            double emp = empirical_outage(p, b, m, g, n, derive_seed(seed, 10 + idx(m)));
            double tol = std::max(3 * std::sqrt(ana * (1 - ana) / n), 3.0 / n);
            check(std::string("sir_outage_") + to_string(m), emp, ana, tol, std::abs(emp - ana) <= tol);
        }
        double mean = mean_snr(p, b, m);
        double on = std::exp(-g / mean);
        double emp_on = empirical_exp_ccdf(mean, g, n, derive_seed(seed, 20 + idx(m)));
        double tol = std::max(3 * std::sqrt(on * (1 - on) / n), 3.0 / n);
        check(std::string("overlay_on_") + to_string(m), emp_on, on, tol, std::abs(emp_on - on) <= tol);
    }

    FadingBank bank = cfg.model.make_bank();
    Evaluation ev = evaluate(cfg.model, bank, true);
    note_clamp(res, cfg, ev.clamped);
    if (ev.truncated) {
        check("closed_vs_generic_n1", ev.closed_n1, ev.ec_n1.ec, 1e-10,
              rel(ev.closed_n1, ev.ec_n1.ec) <= 1e-10);
        check("closed_vs_generic_n2", ev.closed_n2, ev.ec_n2.ec, 1e-10,
              rel(ev.closed_n2, ev.ec_n2.ec) <= 1e-10);
    }
    McPair mc = simulate_pair(cfg, ev.detection);
    check("ec_mc_n1", mc.n1.ec, ev.ec_n1.ec, 0.05, ec_agrees(ev.ec_n1.ec, mc.n1, 0.05));
    check("ec_mc_n2", mc.n2.ec, ev.ec_n2.ec, 0.05, ec_agrees(ev.ec_n2.ec, mc.n2, 0.05));

    if (failures) res.exit_code = std::max(res.exit_code, 1);
    res.summary = fmt_int(static_cast<long long>(t.rows.size())) + " checks, " + fmt_int(failures) + " failed\n";
    res.outputs.push_back({"validate.csv", std::move(t)});
    return res;
}

CommandResult run_command(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "mode-select") return cmd_mode_select(cfg);
    if (name == "ec") return cmd_ec(cfg);
    if (name == "sweep") return cmd_sweep(cfg);
    if (name == "optimize") return cmd_optimize(cfg);
    if (name == "validate") return cmd_validate(cfg);
    throw ConfigError("unknown command '" + name + "'");
}

std::string file_header(const ExperimentConfig& cfg, const std::string& command_line) {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char ts[32];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
    std::string h = "# command: " + command_line + "\n";
    h += std::string("# generated: ") + ts + "\n";
    h += "# seed: " + std::to_string(cfg.seed) + "\n";
    h += "# config source: " + cfg.source + "\n";
    h += config_echo(cfg);
    return h;
}

std::vector<std::string> write_outputs(const CommandResult& res, const ExperimentConfig& cfg,
                                       const std::string& out_dir, const std::string& command_line) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::string header = file_header(cfg, command_line);
    std::vector<std::string> written;
    for (const auto& o : res.outputs) {
        fs::path path = fs::path(out_dir) / o.name;
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        f << header << o.table.body();
        written.push_back(path.string());
    }
    return written;
}

}  // namespace d2d
