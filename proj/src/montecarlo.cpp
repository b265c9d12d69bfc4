#include "d2d/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "d2d/channel.hpp"
#include "d2d/markov.hpp"
#include "d2d/rng.hpp"

namespace d2d {

void SimConfig::validate() const {
    if (num_blocks < 1) throw ConfigError("num_blocks must be >= 1");
    if (num_paths < 1) throw ConfigError("num_paths must be >= 1");
    if (arrival_rate < 0) throw ConfigError("arrival_rate must be >= 0");
    if (bootstrap < 0) throw ConfigError("bootstrap must be >= 0");
}

namespace {

struct ModeSampler {
    const DetectionProfile& det;
    Prior prior;
    std::normal_distribution<double> n01{0.0, 1.0};
    std::uniform_int_distribution<int> pick{0, 2};

    Mode operator()(Rng& rng) {
        int y = prior == Prior::true_best ? 0 : pick(rng);
        double x = det.sorted_db[y] + det.sigma * n01(rng);
        return select_mode(det, x);
    }
};

struct Link {
    const SystemParams& p;
    const LinkBudget& b;
    std::exponential_distribution<double> e1{1.0};

    // returns {on, snr used for decoding}
    std::pair<bool, double> draw(Rng& rng, Mode m, Scenario s, DecodeDraws d) {
        double g = gamma_req(p, m);
        if (s == Scenario::overlay) {
            double snr = overlay_draw(p, b, m, e1(rng), e1(rng));
            bool on = snr > g;
            if (d == DecodeDraws::independent) snr = overlay_draw(p, b, m, e1(rng), e1(rng));
            return {on, snr};
        }
        UnderlayDraw u = underlay_draw(p, b, m, {e1(rng), e1(rng), e1(rng), e1(rng)});
        bool on = u.sir > g;
        double snr = u.sinr;
        if (d == DecodeDraws::independent) snr = underlay_draw(p, b, m, {e1(rng), e1(rng), e1(rng), e1(rng)}).sinr;
        return {on, snr};
    }
};

struct PathStats {
    double total = 0;
    std::uint64_t periods = 0, off_ends = 0, exhausted = 0;
    std::vector<std::uint64_t> success_at;
    double backlog_sum = 0;
};

}  // namespace

ServicePaths simulate_service_paths(const SystemParams& p, const LinkBudget& b, const DetectionProfile& det,
                                    Prior prior, const SimConfig& cfg) {
    cfg.validate();
    Schedule sched = cfg.schedule.empty() ? default_schedule(p.max_tx) : cfg.schedule;
    const int M = static_cast<int>(sched.size());
    const int t = cfg.num_blocks;
    const double lr = p.block_len * p.rate;
    std::vector<PathStats> stats(static_cast<std::size_t>(cfg.num_paths));

    parallel_for(stats.size(), [&](std::size_t i) {
        Rng rng = make_rng(cfg.seed, i);
        ModeSampler sample{det, prior};
        Link link{p, b};
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        PathStats& st = stats[i];
        st.success_at.assign(static_cast<std::size_t>(M), 0);
        std::vector<double> trace;
        trace.reserve(static_cast<std::size_t>(M));
        double backlog = 0;
        int k = 0;
        auto serve = [&](double bits) {
            st.total += bits;
            ++k;
            if (cfg.arrival_rate > 0) {
                backlog = std::max(0.0, backlog + cfg.arrival_rate - bits);
                st.backlog_sum += backlog;
            }
        };
        while (k < t) {
            ++st.periods;
            trace.clear();
            double u = unif(rng);
            for (int a = 0; a < M && k < t; ++a) {
                Mode m = sample(rng);
                auto [on, snr] = link.draw(rng, m, sched[a], cfg.decode);
                if (!on) {
                    serve(0);
                    ++st.off_ends;
                    break;
                }
                trace.push_back(snr);
                auto [l, r] = effective_code(p, m);
                if (u >= decoding_error_conditional(trace, l, r)) {
                    serve(lr);
                    ++st.success_at[a];
                    break;
                }
                serve(0);
                if (a == M - 1) ++st.exhausted;
            }
        }
    });

    ServicePaths out;
    out.num_blocks = t;
    out.success_at.assign(static_cast<std::size_t>(M), 0);
    out.total.reserve(stats.size());
    double backlog = 0;
    for (const auto& st : stats) {
        out.total.push_back(st.total);
        out.periods += st.periods;
        out.off_ends += st.off_ends;
        out.exhausted += st.exhausted;
        for (int a = 0; a < M; ++a) out.success_at[a] += st.success_at[a];
        backlog += st.backlog_sum / t;
    }
    out.mean_backlog = backlog / static_cast<double>(stats.size());
    return out;
}

namespace {

double log_mean_exp(const std::vector<double>& totals, const std::vector<std::size_t>* pick, double theta) {
    std::size_t n = pick ? pick->size() : totals.size();
    auto at = [&](std::size_t j) { return -theta * totals[pick ? (*pick)[j] : j]; };
    double mx = -INFINITY;
    for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, at(j));
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += std::exp(at(j) - mx);
    return mx + std::log(acc) - std::log(static_cast<double>(n));
}

}  // namespace

EmpiricalEC empirical_ec(const std::vector<double>& totals, int num_blocks, double theta, int bootstrap,
                         std::uint64_t seed) {
    if (!(theta > 0)) throw DomainError("theta must be positive");
    if (totals.empty() || num_blocks < 1) throw DomainError("no service paths");
    const double scale = -1.0 / (theta * num_blocks);
    EmpiricalEC out;
    out.ec = scale * log_mean_exp(totals, nullptr, theta);
    if (totals.size() < 2 || bootstrap < 2) return out;
    Rng rng = make_rng(seed, 0);
    std::uniform_int_distribution<std::size_t> pick(0, totals.size() - 1);
    std::vector<std::size_t> idxs(totals.size());
    std::vector<double> reps(static_cast<std::size_t>(bootstrap));
    for (auto& rep : reps) {
        for (auto& j : idxs) j = pick(rng);
        rep = scale * log_mean_exp(totals, &idxs, theta);
    }
    std::sort(reps.begin(), reps.end());
    auto q = [&](double f) {
        double pos = f * (reps.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, reps.size() - 1);
        return reps[lo] + (pos - lo) * (reps[hi] - reps[lo]);
    };
    out.ci_lo = q(0.025);
    out.ci_hi = q(0.975);
    out.has_ci = true;
    return out;
}

Confusion empirical_detection(const DetectionProfile& det, long trials, std::uint64_t seed) {
    Confusion c{};
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int k = 0; k < 3; ++k) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(k));
        int y = det.perm[k];
        for (long i = 0; i < trials; ++i) {
            Mode sel = select_mode(det, det.sorted_db[k] + det.sigma * n01(rng));
            c[y][idx(sel)] += 1;
        }
        for (double& v : c[y]) v /= static_cast<double>(trials);
    }
    return c;
}

std::array<double, 3> empirical_selection(const DetectionProfile& det, Prior prior, long trials,
                                          std::uint64_t seed) {
    std::array<double, 3> f{};
    Rng rng = make_rng(seed, 0);
    ModeSampler sample{det, prior};
    for (long i = 0; i < trials; ++i) f[idx(sample(rng))] += 1;
    for (double& v : f) v /= static_cast<double>(trials);
    return f;
}

std::array<double, 6> empirical_state_occupancy(const SystemParams& p, const LinkBudget& b,
                                                const DetectionProfile& det, Prior prior, Scenario s, long blocks,
                                                std::uint64_t seed) {
    std::array<double, 6> f{};
    Rng rng = make_rng(seed, 0);
    ModeSampler sample{det, prior};
    Link link{p, b};
    for (long i = 0; i < blocks; ++i) {
        Mode m = sample(rng);
        bool on = link.draw(rng, m, s, DecodeDraws::shared).first;
        f[2 * idx(m) + (on ? 0 : 1)] += 1;
    }
    for (double& v : f) v /= static_cast<double>(blocks);
    return f;
}

std::vector<double> simulate_decoding_periods(const SystemParams& p, const LinkBudget& b, Mode m, long periods,
                                              std::uint64_t seed) {
    const int M = p.max_tx;
    std::vector<double> f(static_cast<std::size_t>(M) + 1, 0.0);
    Rng rng = make_rng(seed, 0);
    std::exponential_distribution<double> e1(1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto [l, r] = effective_code(p, m);
    std::vector<double> trace;
    for (long i = 0; i < periods; ++i) {
        trace.clear();
        double u = unif(rng);
        int end = M;
        for (int a = 0; a < M; ++a) {
            trace.push_back(overlay_draw(p, b, m, e1(rng), e1(rng)));
            if (u >= decoding_error_conditional(trace, l, r)) {
                end = a;
                break;
            }
        }
        f[end] += 1;
    }
    for (double& v : f) v /= static_cast<double>(periods);
    return f;
}

double empirical_ratio_outage(double l1, double l2, double g, long draws, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::exponential_distribution<double> x(l1), y(l2);
    long hits = 0;
    for (long i = 0; i < draws; ++i)
        if (x(rng) < g * y(rng)) ++hits;
    return static_cast<double>(hits) / draws;
}

double empirical_outage(const SystemParams& p, const LinkBudget& b, Mode m, double g, long draws,
                        std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::exponential_distribution<double> e1(1.0);
    long hits = 0;
    for (long i = 0; i < draws; ++i) {
        UnderlayDraw u = underlay_draw(p, b, m, {e1(rng), e1(rng), e1(rng), e1(rng)});
        if (u.sir < g) ++hits;
    }
    return static_cast<double>(hits) / draws;
}

double empirical_exp_ccdf(double mean, double g, long draws, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::exponential_distribution<double> e(1.0 / mean);
    long hits = 0;
    for (long i = 0; i < draws; ++i)
        if (e(rng) > g) ++hits;
    return static_cast<double>(hits) / draws;
}

}  // namespace d2d
