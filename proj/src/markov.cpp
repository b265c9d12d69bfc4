#include "d2d/markov.hpp"

#include <cmath>

#include "d2d/channel.hpp"

namespace d2d {

double gamma_req(const SystemParams& p) { return std::exp2(p.rate / p.bandwidth) - 1.0; }

double gamma_req(const SystemParams& p, Mode m) {
    double r = p.rate / p.bandwidth;
    if (p.duplex == Duplex::half && m != Mode::direct) r *= 2;
    return std::exp2(r) - 1.0;
}

double TransitionRow::sum() const {
    double s = 0;
    for (double v : p) s += v;
    return s;
}

TransitionRow overlay_row(const SystemParams& p, const LinkBudget& b, const std::array<double, 3>& h) {
    TransitionRow row;
    row.scenario = Scenario::overlay;
    for (Mode m : all_modes) {
        double on = std::exp(-gamma_req(p, m) / mean_snr(p, b, m));
        row.p[2 * idx(m)] = h[idx(m)] * on;
        row.p[2 * idx(m) + 1] = h[idx(m)] * (1.0 - on);
    }
    return row;
}

TransitionRow underlay_row(const SystemParams& p, const LinkBudget& b, const std::array<double, 3>& h) {
    TransitionRow row;
    row.scenario = Scenario::underlay;
    for (Mode m : all_modes) {
        Probability out = sir_outage(p, b, m, gamma_req(p, m));
        row.clamped = row.clamped || out.clamped;
        row.p[2 * idx(m)] = h[idx(m)] * (1.0 - out.value);
        row.p[2 * idx(m) + 1] = h[idx(m)] * out.value;
    }
    return row;
}

TransitionRow row_for(Scenario s, const SystemParams& p, const LinkBudget& b, const std::array<double, 3>& h) {
    return s == Scenario::overlay ? overlay_row(p, b, h) : underlay_row(p, b, h);
}

Matrix6 transition_matrix(const TransitionRow& row) {
    Matrix6 m;
    for (auto& r : m) r = row.p;
    return m;
}

}  // namespace d2d
