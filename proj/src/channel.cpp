#include "d2d/channel.hpp"

#include <algorithm>
#include <cmath>

namespace d2d {

double pathloss_db(double distance_km) {
    if (!(distance_km > 0)) throw DomainError("distance must be positive");
    return 128.1 + 37.6 * std::log10(distance_km);
}

double residual_si(const SystemParams& p, double p_bs) {
    double e = p.si_law == SiLaw::power ? p.si_beta : 1.0 - p.si_beta;
    return p.si_alpha * std::pow(p_bs, e);
}

double relay_power(const SystemParams& p, Tier t) { return t == Tier::micro ? p.p_mc : p.p_MC; }

double mean_snr_direct(const SystemParams& p, const LinkBudget& b) { return p.p_dt / (b.d * p.noise); }

double mean_snr_uplink(const SystemParams& p, const LinkBudget& b, Tier t) {
    double snr = p.p_dt / (b.ul(t) * p.noise);
    if (p.duplex == Duplex::full) snr /= 1.0 + residual_si(p, relay_power(p, t)) / (b.ul(t) * p.noise);
    return snr;
}

double mean_snr_downlink(const SystemParams& p, const LinkBudget& b, Tier t) {
    return relay_power(p, t) / (b.dl(t) * p.noise);
}

double mean_snr_two_hop(const SystemParams& p, const LinkBudget& b, Tier t) {
    double u = mean_snr_uplink(p, b, t);
    double d = mean_snr_downlink(p, b, t);
    return u * d / (u + d);
}

double mean_snr(const SystemParams& p, const LinkBudget& b, Mode m) {
    switch (m) {
        case Mode::direct: return mean_snr_direct(p, b);
        case Mode::micro: return mean_snr_two_hop(p, b, Tier::micro);
        case Mode::macro: return mean_snr_two_hop(p, b, Tier::macro);
    }
    return 0;
}

double capacity_direct(const SystemParams& p, double snr) {
    if (snr < 0) throw DomainError("negative snr");
    return p.bandwidth * std::log2(1.0 + snr);
}

double capacity_two_hop(const SystemParams& p, double snr_ul, double snr_dl) {
    if (snr_ul < 0 || snr_dl < 0) throw DomainError("negative snr");
    double c = p.bandwidth * std::log2(1.0 + std::min(snr_ul, snr_dl));
    return p.duplex == Duplex::half ? 0.5 * c : c;
}

double exp_ratio_cdf(double l1, double l2, double g) {
    if (g <= 0) return 0.0;
    if (std::isinf(g)) return 1.0;
    return l1 * g / (l1 * g + l2);
}

namespace {

Probability clamp(double v) {
    Probability out{v, false};
    if (!(v >= 0.0 && v <= 1.0)) {
        out.clamped = true;
        out.value = std::isnan(v) ? 1.0 : std::clamp(v, 0.0, 1.0);
    }
    return out;
}

}  // namespace

Probability sir_outage_direct(const SystemParams& p, const LinkBudget& b, double g) {
    if (!(g > 0)) throw DomainError("gamma_req must be positive");
    if (p.outage_mode == OutageMode::simplified)
        return clamp(b.d * g * p.p_ut / (b.d * p.p_ut + b.ut_dr * p.p_dt));
    return {exp_ratio_cdf(b.d / p.p_dt, b.ut_dr / p.p_ut, g), false};
}

Probability sir_outage_two_hop(const SystemParams& p, const LinkBudget& b, Tier t, double g) {
    if (!(g > 0)) throw DomainError("gamma_req must be positive");
    double pbs = relay_power(p, t);
    if (p.outage_mode == OutageMode::simplified) {
        // Simplified closed form, including its (-g P_UT + P_bs + 2 P_bs) factor as given.
        double num = g * (b.ul(t) * pbs * (-g * p.p_ut + pbs + 2 * pbs) + b.dl(t) * p.p_dt * p.p_ut);
        double den = (p.p_ut + pbs) * (b.dl(t) * p.p_dt + b.ul(t) * pbs);
        return clamp(num / den);
    }
    double o_ul = exp_ratio_cdf(b.ul(t) / p.p_dt, b.ut_bs(t) / p.p_ut, g);
    double o_dl = exp_ratio_cdf(b.dl(t) / pbs, b.ut_dr / p.p_ut, g);
    return {1.0 - (1.0 - o_ul) * (1.0 - o_dl), false};
}

Probability sir_outage(const SystemParams& p, const LinkBudget& b, Mode m, double g) {
    switch (m) {
        case Mode::direct: return sir_outage_direct(p, b, g);
        case Mode::micro: return sir_outage_two_hop(p, b, Tier::micro, g);
        case Mode::macro: return sir_outage_two_hop(p, b, Tier::macro, g);
    }
    return {};
}

UnderlayDraw underlay_draw(const SystemParams& p, const LinkBudget& b, Mode m, const UnderlayGains& z) {
    double i_dr = p.p_ut * z[3] / b.ut_dr;
    if (m == Mode::direct) {
        double s = p.p_dt * z[0] / b.d;
        return {s / i_dr, s / (i_dr + p.noise)};
    }
    Tier t = m == Mode::micro ? Tier::micro : Tier::macro;
    double pbs = relay_power(p, t);
    double s_ul = p.p_dt * z[0] / b.ul(t);
    double i_ul = p.p_ut * z[1] / b.ut_bs(t);
    double s_dl = pbs * z[2] / b.dl(t);
    // SI enters as alpha*f/L_ul in the received-power domain, matching P Z / (L N0 + alpha f).
    double n_ul = p.noise + (p.duplex == Duplex::full ? residual_si(p, pbs) / b.ul(t) : 0.0);
    return {std::min(s_ul / i_ul, s_dl / i_dr), std::min(s_ul / (i_ul + n_ul), s_dl / (i_dr + p.noise))};
}

double overlay_draw(const SystemParams& p, const LinkBudget& b, Mode m, double z0, double z1) {
    if (m == Mode::direct) return z0 * mean_snr_direct(p, b);
    Tier t = m == Mode::micro ? Tier::micro : Tier::macro;
    return std::min(z0 * mean_snr_uplink(p, b, t), z1 * mean_snr_downlink(p, b, t));
}

}  // namespace d2d
