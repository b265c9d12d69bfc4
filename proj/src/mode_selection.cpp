#include "d2d/mode_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace d2d {

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

Thresholds compute_thresholds(const std::array<double, 3>& s, double sigma) {
    if (sigma < 0) throw DomainError("sigma must be >= 0");
    if (!(s[0] < s[1] && s[1] < s[2])) throw DomainError("pathlosses must be strictly increasing (ties rejected)");
    return {(s[0] + s[1]) / 2, (s[1] + s[2]) / 2};
}

namespace {

// P(N(mu, sigma^2) in [lo, hi))
double region_mass(double mu, double sigma, double lo, double hi) {
    if (sigma == 0) return (mu >= lo && mu < hi) ? 1.0 : 0.0;
    double a = std::isinf(lo) ? 1.0 : q_function((lo - mu) / sigma);
    double b = std::isinf(hi) ? 0.0 : q_function((hi - mu) / sigma);
    return a - b;
}

}  // namespace

std::array<double, 3> detection_sorted(const std::array<double, 3>& s, double sigma, const Thresholds& c) {
    if (sigma == 0) return {1.0, 1.0, 1.0};
    return {1.0 - q_function((c.c_ab - s[0]) / sigma),
            q_function((c.c_ab - s[1]) / sigma) - q_function((c.c_bc - s[1]) / sigma),
            q_function((c.c_bc - s[2]) / sigma)};
}

DetectionProfile map_to_hypotheses(const std::array<double, 3>& losses, double sigma, const ThresholdSpec& spec) {
    for (double v : losses)
        if (!std::isfinite(v)) throw DomainError("pathloss must be finite");
    DetectionProfile out;
    out.sigma = sigma;
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return losses[a] < losses[b]; });
    for (int k = 0; k < 3; ++k) {
        out.perm[k] = order[k];
        out.sorted_db[k] = losses[order[k]];
    }
    out.thresholds = compute_thresholds(out.sorted_db, sigma);
    if (spec.rule == ThresholdRule::fixed) {
        if (!(spec.c_ab < spec.c_bc)) throw ConfigError("c_ab must be below c_bc");
        out.thresholds = {spec.c_ab, spec.c_bc};
    }
    auto pd_sorted = detection_sorted(out.sorted_db, sigma, out.thresholds);

    const double inf = std::numeric_limits<double>::infinity();
    std::array<double, 4> edges{-inf, out.thresholds.c_ab, out.thresholds.c_bc, inf};
    for (int ky = 0; ky < 3; ++ky) {
        for (int ki = 0; ki < 3; ++ki)
            out.cross[out.perm[ky]][out.perm[ki]] =
                region_mass(out.sorted_db[ky], sigma, edges[ki], edges[ki + 1]);
        out.pd[out.perm[ky]] = pd_sorted[ky];
        out.pe[out.perm[ky]] = 1.0 - pd_sorted[ky];
    }
    return out;
}

std::array<double, 3> hypothesis_probabilities(const DetectionProfile& p, Prior prior) {
    std::array<double, 3> w{};
    switch (prior) {
        case Prior::true_best: w[p.perm[0]] = 1.0; break;
        case Prior::uniform: w = {1.0 / 3, 1.0 / 3, 1.0 / 3}; break;
        case Prior::unweighted: w = {1.0, 1.0, 1.0}; break;
    }
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i)
        for (int y = 0; y < 3; ++y) out[i] += w[y] * p.cross[y][i];
    return out;
}

double hypothesis_probability(const DetectionProfile& p, Mode h, Prior prior) {
    return hypothesis_probabilities(p, prior)[idx(h)];
}

Mode select_mode(const DetectionProfile& p, double x) {
    int k = x < p.thresholds.c_ab ? 0 : (x < p.thresholds.c_bc ? 1 : 2);
    return static_cast<Mode>(p.perm[k]);
}

double estimate_pathloss(double L, const PilotConfig& cfg, Rng& rng) {
    if (cfg.m_pilots < 1) throw DomainError("m_pilots must be >= 1");
    if (!(cfg.tx_power > 0)) throw DomainError("tx_power must be positive");
    std::normal_distribution<double> n01(0.0, 1.0);
    const double half = std::sqrt(0.5);
    double amp = std::sqrt(cfg.tx_power) * L;
    double nstd = std::sqrt(cfg.noise_var) * half;
    double acc = 0;
    for (int i = 0; i < cfg.m_pilots; ++i) {
        double zr = 1.0, zi = 0.0;
        if (!cfg.unit_gain) {
            zr = half * n01(rng);
            zi = half * n01(rng);
        }
        double yr = amp * zr, yi = amp * zi;
        if (cfg.noise_var > 0) {
            yr += nstd * n01(rng);
            yi += nstd * n01(rng);
        }
        acc += yr * yr + yi * yi;
    }
    return acc / cfg.m_pilots / cfg.tx_power;
}

}  // namespace d2d
