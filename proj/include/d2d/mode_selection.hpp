#pragma once

#include <array>

#include "d2d/params.hpp"
#include "d2d/rng.hpp"

namespace d2d {

double q_function(double x);

struct Thresholds {
    double c_ab;
    double c_bc;
};

enum class ThresholdRule { midpoint, fixed };

struct ThresholdSpec {
    ThresholdRule rule = ThresholdRule::midpoint;
    double c_ab = 0;  // dB, used when rule == fixed
    double c_bc = 0;
};

enum class Prior { true_best, uniform, unweighted };

// Equal-variance Gaussian LLRT boundaries: midpoints of adjacent sorted means.
Thresholds compute_thresholds(const std::array<double, 3>& sorted_db, double sigma);

// (P_dA, P_dB, P_dC) in the sorted domain.
std::array<double, 3> detection_sorted(const std::array<double, 3>& sorted_db, double sigma, const Thresholds& c);

struct DetectionProfile {
    Thresholds thresholds{};
    double sigma = 0;
    std::array<double, 3> sorted_db{};
    std::array<int, 3> perm{};       // perm[k] = hypothesis of sorted position k (A, B, C)
    std::array<double, 3> pd{};      // hypothesis order
    std::array<double, 3> pe{};
    // cross[y][i] = P(select H_i | true best H_y), hypothesis order
    std::array<std::array<double, 3>, 3> cross{};
};

DetectionProfile map_to_hypotheses(const std::array<double, 3>& losses_db, double sigma,
                                   const ThresholdSpec& spec = {});

std::array<double, 3> hypothesis_probabilities(const DetectionProfile& profile, Prior prior);
double hypothesis_probability(const DetectionProfile& profile, Mode h, Prior prior);

// Hypothesis selected for a measured pathloss x (dB).
Mode select_mode(const DetectionProfile& profile, double x_db);

struct PilotConfig {
    double tx_power = 1.0;
    double noise_var = 0.0;
    int m_pilots = 100;
    bool unit_gain = false;  // fix Z = 1 instead of drawing CN(0, 1) per pilot
};

// Received-power pilot estimator: returns sum |y|^2 / (m P_T) with y = sqrt(P_T) L Z x + n.
double estimate_pathloss(double true_loss_linear, const PilotConfig& cfg, Rng& rng);

}  // namespace d2d
