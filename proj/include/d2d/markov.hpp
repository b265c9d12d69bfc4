#pragma once

#include <array>

#include "d2d/params.hpp"

namespace d2d {

// 2^(r/B) - 1
double gamma_req(const SystemParams& p);
// Per-mode threshold; half-duplex relaying needs twice the rate over half the channel.
double gamma_req(const SystemParams& p, Mode m);

// States s1..s6: direct-ON, direct-OFF, mC-ON, mC-OFF, MC-ON, MC-OFF.
struct TransitionRow {
    std::array<double, 6> p{};
    Scenario scenario = Scenario::overlay;
    bool clamped = false;

    double on(Mode m) const { return p[2 * idx(m)]; }
    double off(Mode m) const { return p[2 * idx(m) + 1]; }
    double mass(Mode m) const { return on(m) + off(m); }
    double off_total() const { return p[1] + p[3] + p[5]; }
    double sum() const;
};

TransitionRow overlay_row(const SystemParams& p, const LinkBudget& b, const std::array<double, 3>& hyp_mass);
TransitionRow underlay_row(const SystemParams& p, const LinkBudget& b, const std::array<double, 3>& hyp_mass);
TransitionRow row_for(Scenario s, const SystemParams& p, const LinkBudget& b, const std::array<double, 3>& hyp_mass);

using Matrix6 = std::array<std::array<double, 6>, 6>;

// Rank-1 chain: every row equals the input row.
Matrix6 transition_matrix(const TransitionRow& row);

}  // namespace d2d
