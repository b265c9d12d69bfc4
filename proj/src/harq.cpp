#include "d2d/harq.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "d2d/channel.hpp"
#include "d2d/mode_selection.hpp"
#include "d2d/rng.hpp"

namespace d2d {

double decoding_error_conditional(std::span<const double> g, double l, double r) {
    if (l < 1) throw DomainError("blocklength must be >= 1");
    if (g.empty()) throw DomainError("empty SNR trace");
    double cap = 0, disp = 0;
    for (double x : g) {
        if (x < 0) throw DomainError("negative snr");
        cap += std::log2(1.0 + x);
        disp += (2.0 + x) * x / (l * (1.0 + x) * (1.0 + x));
    }
    double num = cap + std::log(static_cast<double>(g.size()) * l) / l - r;
    if (disp <= 0) return num >= 0 ? 0.0 : 1.0;
    return q_function(num / (std::numbers::log2e * std::sqrt(disp)));
}

std::pair<double, double> effective_code(const SystemParams& p, Mode m) {
    double r = p.rate / p.bandwidth;
    if (p.duplex == Duplex::half && m != Mode::direct) return {p.block_len / 2, 2 * r};
    return {p.block_len, r};
}

FadingBank make_fading_bank(std::size_t samples, int max_tx, std::uint64_t seed, std::size_t batches) {
    if (samples < 1 || max_tx < 1) throw ConfigError("fading bank needs samples >= 1 and max_tx >= 1");
    if (batches < 1 || batches > samples) batches = 1;
    FadingBank bank;
    bank.samples = samples;
    bank.batches = batches;
    bank.max_tx = max_tx;
    bank.seed = seed;
    const std::size_t stride = static_cast<std::size_t>(max_tx) * FadingBank::per_attempt;
    bank.z.resize(samples * stride);
    parallel_for(batches, [&](std::size_t k) {
        Rng rng = make_rng(seed, k);
        std::exponential_distribution<double> e1(1.0);
        for (std::size_t i = bank.batch_begin(k) * stride; i < bank.batch_begin(k + 1) * stride; ++i)
            bank.z[i] = e1(rng);
    });
    return bank;
}

Schedule default_schedule(int max_tx) {
    Schedule s(static_cast<std::size_t>(max_tx), Scenario::overlay);
    s[0] = Scenario::underlay;
    return s;
}

namespace {

double draw_snr(const SystemParams& p, const LinkBudget& b, const FadingBank& bank, std::size_t s, int a, Mode m,
                Scenario sc) {
    if (sc == Scenario::overlay) {
        const double* z = bank.overlay(s, a, m);
        return overlay_draw(p, b, m, z[0], z[1]);
    }
    const double* z = bank.underlay(s, a, m);
    return underlay_draw(p, b, m, {z[0], z[1], z[2], z[3]}).sinr;
}

// Per batch: [mode][0] = first-attempt zeta, [mode][m] = overlay zeta_m.
using BatchSums = std::array<std::vector<double>, 3>;

std::vector<BatchSums> batch_means(const SystemParams& p, const LinkBudget& b, const FadingBank& bank,
                                   Scenario first, int max_tx) {
    if (max_tx > bank.max_tx) throw ConfigError("fading bank too short for max_tx");
    std::vector<BatchSums> out(bank.batches);
    parallel_for(bank.batches, [&](std::size_t k) {
        BatchSums acc;
        for (Mode m : all_modes) {
            auto& v = acc[idx(m)];
            v.assign(static_cast<std::size_t>(max_tx) + 1, 0.0);
            auto [l, r] = effective_code(p, m);
            std::vector<double> trace(static_cast<std::size_t>(max_tx));
            for (std::size_t s = bank.batch_begin(k); s < bank.batch_begin(k + 1); ++s) {
                double g1 = draw_snr(p, b, bank, s, 0, m, first);
                v[0] += decoding_error_conditional(std::span<const double>(&g1, 1), l, r);
                for (int a = 0; a < max_tx; ++a) {
                    trace[a] = draw_snr(p, b, bank, s, a, m, Scenario::overlay);
                    v[a + 1] += decoding_error_conditional(std::span<const double>(trace.data(), a + 1), l, r);
                }
            }
            double n = static_cast<double>(bank.batch_begin(k + 1) - bank.batch_begin(k));
            for (double& x : v) x /= n;
        }
        out[k] = std::move(acc);
    });
    return out;
}

DecodingProfile assemble(const BatchSums& v, const Schedule& sched, std::size_t samples) {
    DecodingProfile d;
    d.max_tx = static_cast<int>(sched.size());
    d.schedule = sched;
    d.samples = samples;
    for (Mode m : all_modes) {
        const auto& x = v[idx(m)];
        d.zeta_first[idx(m)] = x[0];
        d.zeta[idx(m)].assign(x.begin() + 1, x.end());
        d.eps[idx(m)] = x.back();
    }
    d.eps_ac = d.eps[0] + d.eps[1] + d.eps[2];
    return d;
}

}  // namespace

double expected_decoding_error(Mode m, int attempt, const SystemParams& p, const LinkBudget& b, Scenario sc,
                               const FadingBank& bank) {
    if (attempt < 1 || attempt > bank.max_tx) throw DomainError("attempt out of range");
    auto [l, r] = effective_code(p, m);
    std::vector<double> part(bank.batches, 0.0);
    parallel_for(bank.batches, [&](std::size_t k) {
        std::vector<double> trace(static_cast<std::size_t>(attempt));
        double acc = 0;
        for (std::size_t s = bank.batch_begin(k); s < bank.batch_begin(k + 1); ++s) {
            for (int a = 0; a < attempt; ++a) trace[a] = draw_snr(p, b, bank, s, a, m, sc);
            acc += decoding_error_conditional(trace, l, r);
        }
        part[k] = acc;
    });
    double total = 0;
    for (double x : part) total += x;
    return total / static_cast<double>(bank.samples);
}

ProfileSet decoding_profile(const SystemParams& p, const LinkBudget& b, const FadingBank& bank,
                            const Schedule& sched) {
    if (sched.empty()) throw ConfigError("empty attempt schedule");
    int M = static_cast<int>(sched.size());
    auto parts = batch_means(p, b, bank, sched[0], M);
    ProfileSet out;
    BatchSums total;
    for (auto& v : total) v.assign(static_cast<std::size_t>(M) + 1, 0.0);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        double w = static_cast<double>(bank.batch_begin(k + 1) - bank.batch_begin(k)) / bank.samples;
        for (int mi = 0; mi < 3; ++mi)
            for (std::size_t j = 0; j < total[mi].size(); ++j) total[mi][j] += w * parts[k][mi][j];
        out.batches.push_back(assemble(parts[k], sched, bank.batch_begin(k + 1) - bank.batch_begin(k)));
    }
    out.mean = assemble(total, sched, bank.samples);
    return out;
}

Removal removal_probabilities(const DecodingProfile& d, Mode m, QueueModel q, int t) {
    int M = d.max_tx;
    if (t < 1 || t > M) throw DomainError("t out of range");
    double leave = d.z(m, t - 1) - d.z(m, t);
    if (t < M) return {0.0, leave};
    if (q == QueueModel::n1) return {d.eps[idx(m)], leave};
    return {0.0, leave + d.eps[idx(m)]};
}

CompanionSpec companion_entries(const DecodingProfile& d, const RowPair& rows, const SystemParams& p,
                                QueueModel q) {
    int M = d.max_tx;
    const double E = std::exp(-p.block_len * p.rate * p.theta);
    CompanionSpec spec;
    spec.queue = q;
    spec.b.assign(static_cast<std::size_t>(M), 0.0);
    for (int k = 1; k <= M; ++k) {
        const TransitionRow& row = rows.get(d.schedule[k - 1]);
        double b = 0;
        for (Mode m : all_modes) {
            double qon;
            if (k < M)
                qon = k == 1 ? 1.0 - d.zeta_first[idx(m)] : d.z(m, k - 1) - d.z(m, k);
            else if (q == QueueModel::n1)
                qon = (M == 1 ? 1.0 - d.zeta_first[idx(m)] : d.z(m, M - 1) - d.eps[idx(m)]);
            else
                qon = (M == 1 ? 1.0 - d.zeta_first[idx(m)] : d.z(m, M - 1));
            b += qon * E * row.on(m) + row.off(m);
        }
        if (k == M && q == QueueModel::n1) b += d.eps_ac;
        spec.b[k - 1] = b;
    }
    return spec;
}

}  // namespace d2d
