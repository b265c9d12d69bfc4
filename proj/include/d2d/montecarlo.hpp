#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "d2d/harq.hpp"
#include "d2d/mode_selection.hpp"

namespace d2d {

enum class DecodeDraws { shared, independent };

struct SimConfig {
    int num_blocks = 1000;
    int num_paths = 10000;
    double arrival_rate = 0;  // bits per block, queue-occupancy report only
    std::uint64_t seed = 1;
    Schedule schedule;        // empty = default_schedule(max_tx)
    QueueModel queue = QueueModel::n1;
    DecodeDraws decode = DecodeDraws::shared;
    int bootstrap = 200;

    void validate() const;
};

struct ServicePaths {
    int num_blocks = 0;
    std::vector<double> total;  // S_i(t) per path
    // Fraction of periods ending at each attempt (success or terminal failure) and per outcome.
    std::uint64_t periods = 0;
    std::vector<std::uint64_t> success_at;  // index m-1
    std::uint64_t off_ends = 0;
    std::uint64_t exhausted = 0;
    double mean_backlog = 0;  // time-averaged queue length with constant arrivals, 0 if a = 0
};

// Mode per block from a noisy measurement against the profile's thresholds, fading per link,
// ON/OFF from SIR (underlay) or SNR (overlay) against gamma_req, decoding by a uniform draw
// against zeta of the accumulated trace. Deterministic for a given seed and any worker count.
ServicePaths simulate_service_paths(const SystemParams& p, const LinkBudget& b, const DetectionProfile& det,
                                    Prior prior, const SimConfig& cfg);

struct EmpiricalEC {
    double ec = 0;
    double ci_lo = 0, ci_hi = 0;
    bool has_ci = false;
};

// -(1/(theta t)) ln mean exp(-theta S_i), log-sum-exp; percentile bootstrap CI (95%).
EmpiricalEC empirical_ec(const std::vector<double>& totals, int num_blocks, double theta, int bootstrap = 200,
                         std::uint64_t seed = 7);

// Confusion frequencies, [true hypothesis][selected hypothesis].
using Confusion = std::array<std::array<double, 3>, 3>;
Confusion empirical_detection(const DetectionProfile& det, long trials, std::uint64_t seed);

// Selection frequencies when the true best is drawn from the prior.
std::array<double, 3> empirical_selection(const DetectionProfile& det, Prior prior, long trials, std::uint64_t seed);

// State occupancy (s1..s6) of the mode x ON/OFF chain, one fresh block per draw.
std::array<double, 6> empirical_state_occupancy(const SystemParams& p, const LinkBudget& b,
                                                const DetectionProfile& det, Prior prior, Scenario s, long blocks,
                                                std::uint64_t seed);

// Decode-only periods in one mode (no ON/OFF gating, overlay traces). Returns fractions
// ending with success at attempt 1..M followed by the fraction failing all M attempts.
std::vector<double> simulate_decoding_periods(const SystemParams& p, const LinkBudget& b, Mode m, long periods,
                                              std::uint64_t seed);

// Frequencies of X/Y < g with X ~ Exp(rate l1), Y ~ Exp(rate l2).
double empirical_ratio_outage(double l1, double l2, double g, long draws, std::uint64_t seed);
double empirical_outage(const SystemParams& p, const LinkBudget& b, Mode m, double g, long draws,
                        std::uint64_t seed);
// P(X > g) for X ~ Exp(mean)
double empirical_exp_ccdf(double mean, double g, long draws, std::uint64_t seed);

}  // namespace d2d
