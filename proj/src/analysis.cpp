#include "d2d/analysis.hpp"

#include <cmath>

namespace d2d {

Schedule Model::resolved_schedule() const {
    if (schedule.empty()) return default_schedule(sys.max_tx);
    Schedule s = schedule;
    s.resize(static_cast<std::size_t>(sys.max_tx), Scenario::overlay);
    return s;
}

FadingBank Model::make_bank() const { return make_fading_bank(mc_samples, sys.max_tx, seed, batches); }

namespace {

double ec_of(const DecodingProfile& d, const RowPair& rows, const SystemParams& p, QueueModel q) {
    return ec_harq(companion_entries(d, rows, p, q), p.theta).ec;
}

double half_width(const std::vector<double>& v) {
    if (v.size() < 2) return 0;
    double mean = 0;
    for (double x : v) mean += x;
    mean /= v.size();
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return 1.96 * std::sqrt(ss / (v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

Evaluation evaluate(const Model& model, const FadingBank& bank, bool with_ci) {
    model.sys.validate();
    model.budget.validate();
    Evaluation ev;
    ev.detection = map_to_hypotheses(model.budget.first_hop_db(), model.sigma, model.thresholds);
    ev.mass = hypothesis_probabilities(ev.detection, model.prior);
    ev.rows.overlay = overlay_row(model.sys, model.budget, ev.mass);
    ev.rows.underlay = underlay_row(model.sys, model.budget, ev.mass);
    ev.clamped = ev.rows.underlay.clamped;

    Schedule sched = model.resolved_schedule();
    ProfileSet ps = decoding_profile(model.sys, model.budget, bank, sched);
    ev.profile = ps.mean;
    ev.spec_n1 = companion_entries(ev.profile, ev.rows, model.sys, QueueModel::n1);
    ev.spec_n2 = companion_entries(ev.profile, ev.rows, model.sys, QueueModel::n2);
    ev.ec_n1 = ec_harq(ev.spec_n1, model.sys.theta);
    ev.ec_n2 = ec_harq(ev.spec_n2, model.sys.theta);

    ev.truncated = model.sys.max_tx == 2 && sched[0] == Scenario::underlay && sched[1] == Scenario::overlay;
    if (ev.truncated) {
        ev.terms = truncated_terms(model.sys, ev.rows, ev.profile);
        ev.closed_n1 = ec_truncated_n1(model.sys, ev.rows, ev.profile).ec;
        ev.closed_n2 = ec_truncated_n2(model.sys, ev.rows, ev.profile).ec;
        ev.unpaired_n2 = ec_truncated_n2_unpaired(model.sys, ev.rows, ev.profile).ec;
    }
    if (with_ci) {
        std::vector<double> e1, e2;
        for (const auto& d : ps.batches) {
            e1.push_back(ec_of(d, ev.rows, model.sys, QueueModel::n1));
            e2.push_back(ec_of(d, ev.rows, model.sys, QueueModel::n2));
        }
        ev.ci_n1 = half_width(e1);
        ev.ci_n2 = half_width(e2);
    }
    return ev;
}

std::pair<double, double> ec_pair(const Model& model, const FadingBank& bank) {
    Evaluation ev = evaluate(model, bank, false);
    return {ev.ec_n1.ec, ev.ec_n2.ec};
}

}  // namespace d2d
