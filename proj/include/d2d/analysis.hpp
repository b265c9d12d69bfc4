#pragma once

#include <array>
#include <cstdint>

#include "d2d/effcap.hpp"
#include "d2d/harq.hpp"
#include "d2d/markov.hpp"
#include "d2d/mode_selection.hpp"

namespace d2d {

// Everything the analytical pipeline needs.
struct Model {
    SystemParams sys;
    LinkBudget budget;
    double sigma = 1.0;
    ThresholdSpec thresholds;
    Prior prior = Prior::true_best;
    Schedule schedule;  // empty = default_schedule(sys.max_tx)
    std::size_t mc_samples = 100000;
    std::size_t batches = 10;
    std::uint64_t seed = 1;

    Schedule resolved_schedule() const;
    FadingBank make_bank() const;
};

struct Evaluation {
    DetectionProfile detection;
    std::array<double, 3> mass{};
    RowPair rows;
    DecodingProfile profile;
    CompanionSpec spec_n1, spec_n2;
    ECResult ec_n1, ec_n2;  // generic pipeline
    bool truncated = false;
    TruncatedTerms terms;
    double closed_n1 = 0, closed_n2 = 0, unpaired_n2 = 0;  // EC from closed forms (truncated only)
    double ci_n1 = 0, ci_n2 = 0;                          // half-width across bank batches
    bool clamped = false;
};

Evaluation evaluate(const Model& model, const FadingBank& bank, bool with_ci = false);

// Generic-pipeline EC for one parameter set (both queue models).
std::pair<double, double> ec_pair(const Model& model, const FadingBank& bank);

}  // namespace d2d
