#pragma once

#include <vector>

#include "d2d/harq.hpp"

namespace d2d {

struct RootDiagnostics {
    int iterations = 0;
    double lo = 0, hi = 0;
    double residual = 0;
};

// Unique positive root of lambda^M - b1 lambda^(M-1) - ... - bM, by bisection.
double perron_root(const std::vector<double>& b, RootDiagnostics* diag = nullptr);
double perron_root(const CompanionSpec& spec, RootDiagnostics* diag = nullptr);

// (b1 + sqrt(b1^2 + 4 b2)) / 2
double quadratic_root(double b1, double b2);

struct ECResult {
    double lambda_plus = 1;
    double ec = 0;  // bits per block
    double theta = 1;
    QueueModel queue = QueueModel::n1;
    int max_tx = 1;
    RootDiagnostics diag;
};

ECResult ec_from_root(double lambda_plus, double theta);
ECResult ec_harq(const CompanionSpec& spec, double theta);

// Scalars of the truncated (M = 2, underlay then overlay) closed forms.
struct TruncatedTerms {
    double E = 1;         // e^{-l r theta}
    double phi = 0;       // sum p_u,on (1 - zeta_u,1)
    double vartheta = 0;  // sum p_o,on (zeta_o,1 - eps)
    double varrho = 0;    // sum p_o,on zeta_o,1
    double pu_off = 0;
    double po_off = 0;
    double eps_ac = 0;
};

TruncatedTerms truncated_terms(const SystemParams& p, const RowPair& rows, const DecodingProfile& prof);

double truncated_root_n1(const TruncatedTerms& t);
double truncated_root_n2(const TruncatedTerms& t);
// n2 root with p_o^off outside the factor 4 (unpaired variant, diagnostic only).
double truncated_root_n2_unpaired(const TruncatedTerms& t);

ECResult ec_truncated_n1(const SystemParams& p, const RowPair& rows, const DecodingProfile& prof);
ECResult ec_truncated_n2(const SystemParams& p, const RowPair& rows, const DecodingProfile& prof);
ECResult ec_truncated_n2_unpaired(const SystemParams& p, const RowPair& rows, const DecodingProfile& prof);

}  // namespace d2d
