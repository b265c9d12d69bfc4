#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "d2d/markov.hpp"
#include "d2d/params.hpp"

namespace d2d {

// Finite-blocklength decoding error after m attempts with accumulated SNR trace.
double decoding_error_conditional(std::span<const double> gammas, double l, double r);

// Blocklength and rate actually seen by the code in mode m (half-duplex relays halve l, double r).
std::pair<double, double> effective_code(const SystemParams& p, Mode m);

// Common random numbers for expectation estimates: unit exponential gains for every
// (sample, attempt, mode, link). Reused across parameter sweeps so curves are smooth.
struct FadingBank {
    std::size_t samples = 0;
    std::size_t batches = 1;
    int max_tx = 1;
    std::uint64_t seed = 0;
    std::vector<double> z;

    static constexpr int per_attempt = 18;  // 3 modes x 4 underlay gains + 3 modes x 2 overlay gains

    std::size_t batch_begin(std::size_t k) const { return k * samples / batches; }
    const double* underlay(std::size_t s, int attempt, Mode m) const {
        return &z[(s * max_tx + attempt) * per_attempt + 4 * idx(m)];
    }
    const double* overlay(std::size_t s, int attempt, Mode m) const {
        return &z[(s * max_tx + attempt) * per_attempt + 12 + 2 * idx(m)];
    }
};

FadingBank make_fading_bank(std::size_t samples, int max_tx, std::uint64_t seed, std::size_t batches = 10);

using Schedule = std::vector<Scenario>;

// attempt 1 underlay, the rest overlay
Schedule default_schedule(int max_tx);

double expected_decoding_error(Mode m, int attempt, const SystemParams& p, const LinkBudget& b, Scenario s,
                               const FadingBank& bank);

struct DecodingProfile {
    int max_tx = 1;
    Schedule schedule;
    std::array<double, 3> zeta_first{};             // E[zeta_1] under the attempt-1 scenario
    std::array<std::vector<double>, 3> zeta;        // overlay traces, zeta[mode][m-1] = E[zeta_m]
    std::array<double, 3> eps{};                    // E[zeta_M]
    double eps_ac = 0;
    std::size_t samples = 0;

    double z(Mode m, int attempt) const { return attempt == 0 ? 1.0 : zeta[idx(m)][attempt - 1]; }
};

struct ProfileSet {
    DecodingProfile mean;
    std::vector<DecodingProfile> batches;
};

ProfileSet decoding_profile(const SystemParams& p, const LinkBudget& b, const FadingBank& bank,
                            const Schedule& schedule);

struct Removal {
    double p0;  // packet stays (nu = 0)
    double p1;  // packet leaves (nu = 1)
};

Removal removal_probabilities(const DecodingProfile& prof, Mode m, QueueModel q, int t);

struct CompanionSpec {
    std::vector<double> b;
    QueueModel queue = QueueModel::n1;
    int max_tx() const { return static_cast<int>(b.size()); }
};

struct RowPair {
    TransitionRow overlay;
    TransitionRow underlay;
    const TransitionRow& get(Scenario s) const { return s == Scenario::overlay ? overlay : underlay; }
};

// b_k = q_k Phi(-theta) p_(k)^T with the row of attempt k's scenario.
CompanionSpec companion_entries(const DecodingProfile& prof, const RowPair& rows, const SystemParams& p,
                                QueueModel q);

}  // namespace d2d
