#pragma once

#include <array>

#include "d2d/params.hpp"

namespace d2d {

// 128.1 + 37.6 log10(d), d in km.
double pathloss_db(double distance_km);

// Residual self-interference power at a full-duplex relay with transmit power p_bs.
double residual_si(const SystemParams& p, double p_bs);
double relay_power(const SystemParams& p, Tier t);

double mean_snr_direct(const SystemParams& p, const LinkBudget& b);
double mean_snr_uplink(const SystemParams& p, const LinkBudget& b, Tier t);
double mean_snr_downlink(const SystemParams& p, const LinkBudget& b, Tier t);
double mean_snr_two_hop(const SystemParams& p, const LinkBudget& b, Tier t);
double mean_snr(const SystemParams& p, const LinkBudget& b, Mode m);

double capacity_direct(const SystemParams& p, double snr);
double capacity_two_hop(const SystemParams& p, double snr_ul, double snr_dl);

struct Probability {
    double value = 0;
    bool clamped = false;  // simplified-mode expression left [0, 1]
};

// P(X/Y < g) for X ~ Exp(rate l1), Y ~ Exp(rate l2).
double exp_ratio_cdf(double l1, double l2, double g);

Probability sir_outage_direct(const SystemParams& p, const LinkBudget& b, double gamma_req);
Probability sir_outage_two_hop(const SystemParams& p, const LinkBudget& b, Tier t, double gamma_req);
Probability sir_outage(const SystemParams& p, const LinkBudget& b, Mode m, double gamma_req);

// Unit-mean exponential gains for one block of one mode. Direct mode uses z[0], z[1], z[3];
// relayed: z[0] uplink signal, z[1] interferer at the relay, z[2] downlink signal,
// z[3] interferer at D_R.
using UnderlayGains = std::array<double, 4>;

struct UnderlayDraw {
    double sir;
    double sinr;
};

UnderlayDraw underlay_draw(const SystemParams& p, const LinkBudget& b, Mode m, const UnderlayGains& z);

// Overlay SNR from unit gains (z_ul_or_direct, z_dl).
double overlay_draw(const SystemParams& p, const LinkBudget& b, Mode m, double z0, double z1);

}  // namespace d2d
