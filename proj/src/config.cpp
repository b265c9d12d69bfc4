#include "d2d/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace d2d {

std::vector<double> SweepSpec::grid() const {
    if (steps < 1) throw ConfigError("sweep.steps must be >= 1");
    if (steps == 1) return {lo};
    if (!(lo < hi)) throw ConfigError("sweep needs lo < hi");
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
    return g;
}

std::uint64_t ExperimentConfig::detection_seed() const { return derive_seed(seed, 303); }

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("expected a number, got '" + v + "'");
    return x;
}

long to_long(const std::string& v) {
    std::size_t used = 0;
    long x = 0;
    try {
        x = std::stol(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("expected an integer, got '" + v + "'");
    return x;
}

template <class E>
E to_enum(const std::string& v, std::initializer_list<std::pair<const char*, E>> names) {
    std::string all;
    for (const auto& [n, e] : names) {
        if (v == n) return e;
        all += all.empty() ? n : std::string("|") + n;
    }
    throw ConfigError("expected one of " + all + ", got '" + v + "'");
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

struct Option {
    const char* key;
    const char* def;
    const char* doc;
    Setter set;
};

std::optional<double> loss_value(const std::string& v) {
    if (v == "auto") return std::nullopt;
    return to_double(v);
}

void set_loss(ExperimentConfig& c, int k, const std::string& v) {
    auto x = loss_value(v);
    std::array<double, 3> cur = c.mode_select_losses.value_or(std::array<double, 3>{NAN, NAN, NAN});
    cur[k] = x.value_or(NAN);
    bool any = std::any_of(cur.begin(), cur.end(), [](double d) { return !std::isnan(d); });
    c.mode_select_losses = any ? std::optional(cur) : std::nullopt;
}

const std::vector<Option>& options() {
    static const std::vector<Option> table = {
        {"system.bandwidth_hz", "1", "bandwidth B; 1 makes r bits per channel use",
         [](auto& c, auto& v) { c.model.sys.bandwidth = to_double(v); }},
        {"system.noise_dbm", "-100", "noise power N0",
         [](auto& c, auto& v) { c.model.sys.noise = dbm_to_w(to_double(v)); }},
        {"system.p_dt_dbm", "27", "D2D transmitter power", [](auto& c, auto& v) { c.model.sys.p_dt = dbm_to_w(to_double(v)); }},
        {"system.p_micro_dbm", "37", "micro-cell BS power", [](auto& c, auto& v) { c.model.sys.p_mc = dbm_to_w(to_double(v)); }},
        {"system.p_macro_dbm", "47", "macro-cell BS power", [](auto& c, auto& v) { c.model.sys.p_MC = dbm_to_w(to_double(v)); }},
        {"system.p_ut_dbm", "27", "interfering cellular user power",
         [](auto& c, auto& v) { c.model.sys.p_ut = dbm_to_w(to_double(v)); }},
        {"system.si_alpha_w", "1e-7", "residual self-interference scale alpha",
         [](auto& c, auto& v) { c.model.sys.si_alpha = to_double(v); }},
        {"system.si_beta", "0.5", "SI cancellation quality beta in [0,1]",
         [](auto& c, auto& v) { c.model.sys.si_beta = to_double(v); }},
        {"system.si_law", "quality", "quality: alpha*P^(1-beta); power: alpha*P^beta",
         [](auto& c, auto& v) {
             c.model.sys.si_law = to_enum<SiLaw>(v, {{"quality", SiLaw::quality}, {"power", SiLaw::power}});
         }},
        {"system.block_len", "100", "channel uses per block l", [](auto& c, auto& v) { c.model.sys.block_len = to_double(v); }},
        {"system.rate", "0.5", "fixed rate r (bits per channel use when B = 1)",
         [](auto& c, auto& v) { c.model.sys.rate = to_double(v); }},
        {"system.theta", "0.05", "QoS exponent", [](auto& c, auto& v) { c.model.sys.theta = to_double(v); }},
        {"system.max_tx", "2", "transmission attempts M", [](auto& c, auto& v) { c.model.sys.max_tx = static_cast<int>(to_long(v)); }},
        {"system.duplex", "full", "full|half relaying",
         [](auto& c, auto& v) { c.model.sys.duplex = to_enum<Duplex>(v, {{"full", Duplex::full}, {"half", Duplex::half}}); }},
        {"system.outage_mode", "exact", "exact|simplified SIR outage law",
         [](auto& c, auto& v) {
             c.model.sys.outage_mode = to_enum<OutageMode>(v, {{"exact", OutageMode::exact}, {"simplified", OutageMode::simplified}});
         }},
        {"system.ec_unit", "block", "block|channel_use",
         [](auto& c, auto& v) { c.per_channel_use = to_enum<bool>(v, {{"block", false}, {"channel_use", true}}); }},
        {"geometry.d_dt_dr_km", "0.025", "D_T to D_R", [](auto& c, auto& v) { c.distances.dt_dr = to_double(v); }},
        {"geometry.d_dt_micro_km", "0.02", "D_T to micro BS", [](auto& c, auto& v) { c.distances.dt_mc = to_double(v); }},
        {"geometry.d_micro_dr_km", "0.03", "micro BS to D_R", [](auto& c, auto& v) { c.distances.mc_dr = to_double(v); }},
        {"geometry.d_dt_macro_km", "0.15", "D_T to macro BS", [](auto& c, auto& v) { c.distances.dt_MC = to_double(v); }},
        {"geometry.d_macro_dr_km", "0.16", "macro BS to D_R", [](auto& c, auto& v) { c.distances.MC_dr = to_double(v); }},
        {"geometry.d_ut_dr_km", "0.05", "cellular user to D_R", [](auto& c, auto& v) { c.distances.ut_dr = to_double(v); }},
        {"geometry.d_ut_micro_km", "0.1", "cellular user to micro BS", [](auto& c, auto& v) { c.distances.ut_mc = to_double(v); }},
        {"geometry.d_ut_macro_km", "0.45", "cellular user to macro BS", [](auto& c, auto& v) { c.distances.ut_MC = to_double(v); }},
        {"modeselect.sigma_db", "1", "pathloss measurement std sigma", [](auto& c, auto& v) { c.model.sigma = to_double(v); }},
        {"modeselect.threshold_rule", "midpoint", "midpoint|fixed",
         [](auto& c, auto& v) {
             c.model.thresholds.rule =
                 to_enum<ThresholdRule>(v, {{"midpoint", ThresholdRule::midpoint}, {"fixed", ThresholdRule::fixed}});
         }},
        {"modeselect.c_ab_db", "0", "fixed threshold C_AB", [](auto& c, auto& v) { c.model.thresholds.c_ab = to_double(v); }},
        {"modeselect.c_bc_db", "0", "fixed threshold C_BC", [](auto& c, auto& v) { c.model.thresholds.c_bc = to_double(v); }},
        {"modeselect.prior", "true_best", "true_best|uniform|unweighted",
         [](auto& c, auto& v) {
             c.model.prior = to_enum<Prior>(
                 v, {{"true_best", Prior::true_best}, {"uniform", Prior::uniform}, {"unweighted", Prior::unweighted}});
         }},
        {"modeselect.loss_direct_db", "auto", "mode-select input; auto = geometry", [](auto& c, auto& v) { set_loss(c, 0, v); }},
        {"modeselect.loss_micro_db", "auto", "mode-select input; auto = geometry", [](auto& c, auto& v) { set_loss(c, 1, v); }},
        {"modeselect.loss_macro_db", "auto", "mode-select input; auto = geometry", [](auto& c, auto& v) { set_loss(c, 2, v); }},
        {"modeselect.mc_trials", "1000000", "Monte Carlo trials for detection/outage checks",
         [](auto& c, auto& v) { c.mc_trials = to_long(v); }},
        {"harq.schedule", "auto", "comma list of underlay|overlay per attempt; auto = underlay,overlay,...",
         [](auto& c, auto& v) {
             c.model.schedule.clear();
             if (v == "auto") return;
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ','))
                 c.model.schedule.push_back(to_enum<Scenario>(
                     trim(item), {{"underlay", Scenario::underlay}, {"overlay", Scenario::overlay}}));
         }},
        {"harq.mc_samples", "100000", "fading samples for E[zeta]",
         [](auto& c, auto& v) { c.model.mc_samples = static_cast<std::size_t>(to_long(v)); }},
        {"harq.batches", "10", "batches for the analytic CI", [](auto& c, auto& v) { c.model.batches = static_cast<std::size_t>(to_long(v)); }},
        {"sweep.variable", "r", "r|theta|sigma|beta|l",
         [](auto& c, auto& v) {
             if (v != "r" && v != "theta" && v != "sigma" && v != "beta" && v != "l")
                 throw ConfigError("sweep.variable must be r|theta|sigma|beta|l");
             c.sweep.variable = v;
         }},
        {"sweep.lo", "0.1", "sweep start", [](auto& c, auto& v) { c.sweep.lo = to_double(v); }},
        {"sweep.hi", "3", "sweep end", [](auto& c, auto& v) { c.sweep.hi = to_double(v); }},
        {"sweep.steps", "60", "sweep points", [](auto& c, auto& v) { c.sweep.steps = static_cast<int>(to_long(v)); }},
        {"optimizer.gradient_mode", "numeric", "numeric|analytic_frozen",
         [](auto& c, auto& v) {
             c.gd.gradient_mode = to_enum<GradientMode>(
                 v, {{"numeric", GradientMode::numeric}, {"analytic_frozen", GradientMode::analytic_frozen}});
         }},
        {"optimizer.step_omega", "0.5", "initial step (rate units)", [](auto& c, auto& v) { c.gd.step_omega = to_double(v); }},
        {"optimizer.max_iters", "200", "iteration cap", [](auto& c, auto& v) { c.gd.max_iters = static_cast<int>(to_long(v)); }},
        {"optimizer.grad_tol", "1e-6", "stop when |grad| is below", [](auto& c, auto& v) { c.gd.grad_tol = to_double(v); }},
        {"optimizer.r_init", "0.5", "starting rate", [](auto& c, auto& v) { c.gd.r_init = to_double(v); }},
        {"optimizer.fd_step", "1e-3", "central-difference step", [](auto& c, auto& v) { c.gd.fd_step = to_double(v); }},
        {"optimizer.r_min", "1e-3", "lower bound on r", [](auto& c, auto& v) { c.gd.r_min = to_double(v); }},
        {"optimizer.min_step", "1e-4", "stop when the step is below", [](auto& c, auto& v) { c.gd.min_step = to_double(v); }},
        {"optimizer.grid_lo", "0.05", "grid oracle start", [](auto& c, auto& v) { c.grid_lo = to_double(v); }},
        {"optimizer.grid_hi", "3", "grid oracle end", [](auto& c, auto& v) { c.grid_hi = to_double(v); }},
        {"optimizer.grid_steps", "200", "grid oracle points", [](auto& c, auto& v) { c.grid_steps = static_cast<int>(to_long(v)); }},
        {"montecarlo.num_paths", "10000", "sample paths N", [](auto& c, auto& v) { c.sim.num_paths = static_cast<int>(to_long(v)); }},
        {"montecarlo.num_blocks", "1000", "horizon t in blocks", [](auto& c, auto& v) { c.sim.num_blocks = static_cast<int>(to_long(v)); }},
        {"montecarlo.arrival_rate", "0", "constant arrivals per block (backlog report only)",
         [](auto& c, auto& v) { c.sim.arrival_rate = to_double(v); }},
        {"montecarlo.decode_draws", "shared", "shared|independent fading for ON/OFF and decoding",
         [](auto& c, auto& v) {
             c.sim.decode = to_enum<DecodeDraws>(v, {{"shared", DecodeDraws::shared}, {"independent", DecodeDraws::independent}});
         }},
        {"montecarlo.bootstrap", "200", "bootstrap resamples for the EC CI", [](auto& c, auto& v) { c.sim.bootstrap = static_cast<int>(to_long(v)); }},
        {"montecarlo.seed", "1", "master seed", [](auto& c, auto& v) { c.seed = static_cast<std::uint64_t>(to_long(v)); }},
        {"montecarlo.threads", "0", "worker threads, 0 = all cores (results do not depend on it)",
         [](auto& c, auto& v) { c.threads = static_cast<int>(to_long(v)); }},
    };
    return table;
}

const Option* find_option(const std::string& key) {
    for (const auto& o : options())
        if (key == o.key) return &o;
    return nullptr;
}

void finalize(ExperimentConfig& c) {
    c.model.budget = budget_from_distances(c.distances);
    c.model.seed = derive_seed(c.seed, 101);
    c.sim.seed = derive_seed(c.seed, 202);
    c.sim.schedule = c.model.resolved_schedule();
    if (c.threads > 0) set_worker_count(c.threads);
}

void assign(ExperimentConfig& c, const std::string& key, const std::string& value) {
    const Option* o = find_option(key);
    if (!o) throw ConfigError("unknown key '" + key + "'");
    o->set(c, value);
    for (auto& kv : c.resolved)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    c.resolved.emplace_back(key, value);
}

std::string env_name(const std::string& key) {
    std::string n = env_prefix;
    for (char ch : key) n += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return n;
}

void apply_env(ExperimentConfig& c) {
    for (const auto& o : options()) {
        if (const char* v = std::getenv(env_name(o.key).c_str())) {
            try {
                assign(c, o.key, trim(v));
            } catch (const ConfigError& e) {
                throw ConfigError(env_name(o.key) + ": " + e.what());
            }
        }
    }
}

}  // namespace

ExperimentConfig default_config() {
    ExperimentConfig c;
    for (const auto& o : options()) assign(c, o.key, o.def);
    finalize(c);
    return c;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source, bool use_env) {
    ExperimentConfig c = default_config();
    c.source = source;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto where = [&](const std::string& msg) { return ConfigError(source + ":" + std::to_string(lineno) + ": " + msg); };
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw where("unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            static const char* known[] = {"system", "geometry", "modeselect", "harq", "sweep", "optimizer", "montecarlo"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known))
                throw where("unknown section [" + section + "]");
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) throw where("expected 'key = value'");
        if (section.empty()) throw where("key outside of a [section]");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        auto hash = value.find(" #");
        if (hash != std::string::npos) value = trim(value.substr(0, hash));
        try {
            assign(c, section + "." + key, value);
        } catch (const ConfigError& e) {
            throw where(e.what());
        }
    }
    if (use_env) apply_env(c);
    finalize(c);
    c.model.sys.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path, bool use_env) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path, use_env);
}

void set_option(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    assign(cfg, key, value);
    finalize(cfg);
}

std::vector<OptionDoc> option_docs() {
    std::vector<OptionDoc> out;
    for (const auto& o : options()) out.push_back({o.key, o.def, o.doc});
    return out;
}

std::string config_echo(const ExperimentConfig& c) {
    std::string out;
    for (const auto& [k, v] : c.resolved) out += "# " + k + " = " + v + "\n";
    return out;
}

}  // namespace d2d
