#include "d2d/effcap.hpp"

#include <algorithm>
#include <cmath>

namespace d2d {

namespace {

double poly(const std::vector<double>& b, double x) {
    // lambda^M - sum b_k lambda^(M-k), Horner form
    double v = 1.0;
    for (double bk : b) v = v * x - bk;
    return v;
}

}  // namespace

double perron_root(const std::vector<double>& b, RootDiagnostics* diag) {
    if (b.empty()) throw DomainError("no companion coefficients");
    double bmax = 0;
    for (double v : b) {
        if (!(v >= 0) || !std::isfinite(v)) throw DomainError("companion coefficients must be finite and >= 0");
        bmax = std::max(bmax, v);
    }
    if (bmax == 0) throw DomainError("all companion coefficients are zero");
    // f(x)/x^M = 1 - sum b_k x^-k is increasing on (0, inf), so the sign change is unique.
    double lo = 0, hi = 1 + bmax;
    int it = 0;
    while (it < 2000) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (poly(b, mid) > 0)
            hi = mid;
        else
            lo = mid;
        ++it;
    }
    double root = 0.5 * (lo + hi);
    if (diag) *diag = {it, lo, hi, poly(b, root)};
    return root;
}

double perron_root(const CompanionSpec& spec, RootDiagnostics* diag) { return perron_root(spec.b, diag); }

double quadratic_root(double b1, double b2) { return 0.5 * (b1 + std::sqrt(b1 * b1 + 4 * b2)); }

ECResult ec_from_root(double lambda_plus, double theta) {
    if (!(theta > 0)) throw DomainError("theta must be positive");
    ECResult r;
    r.lambda_plus = lambda_plus;
    r.theta = theta;
    r.ec = -std::log(lambda_plus) / theta;
    return r;
}

ECResult ec_harq(const CompanionSpec& spec, double theta) {
    RootDiagnostics diag;
    double lam = perron_root(spec, &diag);
    ECResult r = ec_from_root(lam, theta);
    r.queue = spec.queue;
    r.max_tx = spec.max_tx();
    r.diag = diag;
    return r;
}

TruncatedTerms truncated_terms(const SystemParams& p, const RowPair& rows, const DecodingProfile& d) {
    TruncatedTerms t;
    t.E = std::exp(-p.block_len * p.rate * p.theta);
    for (Mode m : all_modes) {
        double z1 = d.z(m, 1);
        t.phi += rows.underlay.on(m) * (1.0 - d.zeta_first[idx(m)]);
        t.vartheta += rows.overlay.on(m) * (z1 - d.eps[idx(m)]);
        t.varrho += rows.overlay.on(m) * z1;
    }
    t.pu_off = rows.underlay.off_total();
    t.po_off = rows.overlay.off_total();
    t.eps_ac = d.eps_ac;
    return t;
}

double truncated_root_n1(const TruncatedTerms& t) {
    return quadratic_root(t.E * t.phi + t.pu_off, t.E * t.vartheta + t.po_off + t.eps_ac);
}

double truncated_root_n2(const TruncatedTerms& t) { return quadratic_root(t.E * t.phi + t.pu_off, t.E * t.varrho + t.po_off); }

double truncated_root_n2_unpaired(const TruncatedTerms& t) {
    double a = t.E * t.phi + t.pu_off;
    return 0.5 * (a + std::sqrt(a * a + 4 * t.E * t.varrho + t.po_off));
}

namespace {

void require_truncated(const DecodingProfile& d) {
    if (d.max_tx != 2 || d.schedule[0] != Scenario::underlay || d.schedule[1] != Scenario::overlay)
        throw ConfigError("closed forms need max_tx = 2 with schedule underlay,overlay");
}

ECResult finish(double lam, const SystemParams& p, QueueModel q) {
    ECResult r = ec_from_root(lam, p.theta);
    r.queue = q;
    r.max_tx = 2;
    return r;
}

}  // namespace

ECResult ec_truncated_n1(const SystemParams& p, const RowPair& rows, const DecodingProfile& d) {
    require_truncated(d);
    return finish(truncated_root_n1(truncated_terms(p, rows, d)), p, QueueModel::n1);
}

ECResult ec_truncated_n2(const SystemParams& p, const RowPair& rows, const DecodingProfile& d) {
    require_truncated(d);
    return finish(truncated_root_n2(truncated_terms(p, rows, d)), p, QueueModel::n2);
}

ECResult ec_truncated_n2_unpaired(const SystemParams& p, const RowPair& rows, const DecodingProfile& d) {
    require_truncated(d);
    return finish(truncated_root_n2_unpaired(truncated_terms(p, rows, d)), p, QueueModel::n2);
}

}  // namespace d2d
