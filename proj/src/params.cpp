#include "d2d/params.hpp"

#include <cmath>

#include "d2d/channel.hpp"

namespace d2d {

void SystemParams::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
    };
    pos(bandwidth, "bandwidth");
    pos(noise, "noise");
    pos(p_dt, "p_dt");
    pos(p_mc, "p_mc");
    pos(p_MC, "p_MC");
    pos(p_ut, "p_ut");
    pos(theta, "theta");
    pos(rate, "rate");
    if (si_alpha < 0) throw ConfigError("si_alpha must be >= 0");
    if (si_beta < 0 || si_beta > 1) throw ConfigError("si_beta must lie in [0, 1]");
    if (block_len < 1) throw ConfigError("block_len must be >= 1");
    if (max_tx < 1) throw ConfigError("max_tx must be >= 1");
}

void LinkBudget::validate() const {
    for (double v : {d, mc_ul, mc_dl, MC_ul, MC_dl, ut_dr, ut_mc, ut_MC})
        if (!(v > 0) || !std::isfinite(v)) throw ConfigError("pathloss must be positive and finite");
}

std::array<double, 3> LinkBudget::first_hop_db() const {
    return {lin_to_db(d), lin_to_db(mc_ul), lin_to_db(MC_ul)};
}

LinkBudget budget_from_distances(const Distances& km) {
    auto L = [](double dkm) { return db_to_lin(pathloss_db(dkm)); };
    LinkBudget b;
    b.d = L(km.dt_dr);
    b.mc_ul = L(km.dt_mc);
    b.mc_dl = L(km.mc_dr);
    b.MC_ul = L(km.dt_MC);
    b.MC_dl = L(km.MC_dr);
    b.ut_dr = L(km.ut_dr);
    b.ut_mc = L(km.ut_mc);
    b.ut_MC = L(km.ut_MC);
    return b;
}

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
double lin_to_db(double lin) { return 10.0 * std::log10(lin); }
double dbm_to_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double w_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

const char* to_string(Mode m) {
    switch (m) {
        case Mode::direct: return "direct";
        case Mode::micro: return "micro";
        case Mode::macro: return "macro";
    }
    return "?";
}

const char* to_string(Scenario s) { return s == Scenario::overlay ? "overlay" : "underlay"; }
const char* to_string(QueueModel q) { return q == QueueModel::n1 ? "n1" : "n2"; }

}  // namespace d2d
