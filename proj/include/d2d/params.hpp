#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace d2d {

// Hypothesis order everywhere: H0 = direct, H1 = micro-cell relay, H2 = macro-cell relay.
enum class Mode { direct = 0, micro = 1, macro = 2 };
enum class Tier { micro, macro };
enum class Scenario { overlay, underlay };
enum class Duplex { full, half };
enum class QueueModel { n1, n2 };
enum class OutageMode { exact, simplified };
enum class SiLaw { quality, power };

constexpr std::array<Mode, 3> all_modes{Mode::direct, Mode::micro, Mode::macro};

inline int idx(Mode m) { return static_cast<int>(m); }

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SystemParams {
    double bandwidth = 1.0;   // Hz; 1 means r is bits per channel use
    double noise = 1e-13;     // W
    double p_dt = 0.501187;   // W
    double p_mc = 5.01187;    // W
    double p_MC = 50.1187;    // W
    double p_ut = 0.501187;   // W
    double si_alpha = 1e-7;   // W
    double si_beta = 0.5;
    SiLaw si_law = SiLaw::quality;
    double block_len = 100;   // channel uses per block
    double rate = 0.5;        // bits per channel use
    double theta = 0.05;      // 1/bits
    int max_tx = 2;
    Duplex duplex = Duplex::full;
    OutageMode outage_mode = OutageMode::exact;

    void validate() const;
};

// Linear-scale pathlosses (>1 means attenuation).
struct LinkBudget {
    double d = 1, mc_ul = 1, mc_dl = 1, MC_ul = 1, MC_dl = 1;
    double ut_dr = 1, ut_mc = 1, ut_MC = 1;

    void validate() const;
    double ul(Tier t) const { return t == Tier::micro ? mc_ul : MC_ul; }
    double dl(Tier t) const { return t == Tier::micro ? mc_dl : MC_dl; }
    double ut_bs(Tier t) const { return t == Tier::micro ? ut_mc : ut_MC; }
    // Losses D_T measures when selecting a mode, in dB, hypothesis order.
    std::array<double, 3> first_hop_db() const;
};

struct Distances {
    double dt_dr, dt_mc, mc_dr, dt_MC, MC_dr, ut_dr, ut_mc, ut_MC;  // km
};

LinkBudget budget_from_distances(const Distances& km);

double db_to_lin(double db);
double lin_to_db(double lin);
double dbm_to_w(double dbm);
double w_to_dbm(double w);

const char* to_string(Mode m);
const char* to_string(Scenario s);
const char* to_string(QueueModel q);

}  // namespace d2d
