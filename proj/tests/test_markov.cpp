#include <Eigen/Dense>
#include <cmath>

#include "d2d/channel.hpp"
#include "d2d/config.hpp"
#include "d2d/markov.hpp"
#include "d2d/montecarlo.hpp"
#include "doctest.h"

using namespace d2d;

TEST_CASE("gamma_req") {
    SystemParams p;
    p.rate = 1;
    CHECK(gamma_req(p) == doctest::Approx(1));
    p.rate = 0;
    CHECK(gamma_req(p) == 0);
    p.rate = 2;
    CHECK(gamma_req(p) == doctest::Approx(3));
    p.duplex = Duplex::half;
    CHECK(gamma_req(p, Mode::micro) == doctest::Approx(15));
    CHECK(gamma_req(p, Mode::direct) == doctest::Approx(3));
}

TEST_CASE("overlay row limits") {
    ExperimentConfig cfg = default_config();
    SystemParams p = cfg.model.sys;
    LinkBudget b = cfg.model.budget;
    TransitionRow r = overlay_row(p, b, {1, 0, 0});
    p.noise = 1e-30;
    TransitionRow strong = overlay_row(p, b, {1, 0, 0});
    CHECK(strong.p[0] == doctest::Approx(1.0));
    CHECK(r.sum() == doctest::Approx(1.0));

    // gamma_req equal to each mean gives e^-1 of every mass
    p = cfg.model.sys;
    std::array<double, 3> w{0.2, 0.5, 0.3};
    for (Mode m : all_modes) {
        double mean = mean_snr(p, b, m);
        p.rate = std::log2(1 + mean);
        TransitionRow row = overlay_row(p, b, w);
        CHECK(row.on(m) == doctest::Approx(w[idx(m)] * std::exp(-1.0)));
    }
}

TEST_CASE("underlay row limits") {
    ExperimentConfig cfg = default_config();
    SystemParams p = cfg.model.sys;
    LinkBudget b = cfg.model.budget;
    std::array<double, 3> w{0.2, 0.5, 0.3};
    p.rate = 1e-12;
    TransitionRow r = underlay_row(p, b, w);
    for (Mode m : all_modes) {
        CHECK(r.off(m) == doctest::Approx(0).epsilon(1e-9));
        CHECK(r.on(m) == doctest::Approx(w[idx(m)]));
    }
    p = cfg.model.sys;
    p.p_ut = 1e-30;
    r = underlay_row(p, b, w);
    for (Mode m : all_modes) CHECK(r.off(m) == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("rows match simulated state occupancy") {
    ExperimentConfig cfg = default_config();
    const auto& p = cfg.model.sys;
    const auto& b = cfg.model.budget;
    auto det = map_to_hypotheses(b.first_hop_db(), 3.0);
    for (Prior pr : {Prior::true_best, Prior::uniform}) {
        auto mass = hypothesis_probabilities(det, pr);
        for (Scenario s : {Scenario::overlay, Scenario::underlay}) {
            TransitionRow row = row_for(s, p, b, mass);
            const long n = 1000000;
            auto occ = empirical_state_occupancy(p, b, det, pr, s, n, 71 + static_cast<int>(s));
            for (int k = 0; k < 6; ++k) {
                double sd = std::sqrt(row.p[k] * (1 - row.p[k]) / n);
                CHECK(std::abs(occ[k] - row.p[k]) <= std::max(3 * sd, 3.0 / n));
            }
        }
    }
}

TEST_CASE("transition matrix is rank one and stationary at the row") {
    ExperimentConfig cfg = default_config();
    auto det = map_to_hypotheses(cfg.model.budget.first_hop_db(), 1.0);
    TransitionRow row = overlay_row(cfg.model.sys, cfg.model.budget, hypothesis_probabilities(det, Prior::uniform));
    Matrix6 P = transition_matrix(row);
    Eigen::Matrix<double, 6, 6> A;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) A(i, j) = P[i][j];
    for (int i = 0; i < 6; ++i) CHECK(A.row(i).sum() == doctest::Approx(1.0));
    Eigen::Matrix<double, 1, 6> pi;
    for (int j = 0; j < 6; ++j) pi(j) = row.p[j];
    CHECK((pi * A - pi).norm() < 1e-12);
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(A);
    CHECK(svd.singularValues()(1) < 1e-10);
}

TEST_CASE("ON probabilities decrease in r; overlay dominates underlay") {
    ExperimentConfig cfg = default_config();
    SystemParams p = cfg.model.sys;
    const auto& b = cfg.model.budget;
    std::array<double, 3> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
    std::array<double, 3> prev_o{2, 2, 2}, prev_u{2, 2, 2};
    for (double r = 0.1; r < 4; r += 0.1) {
        p.rate = r;
        TransitionRow o = overlay_row(p, b, w), u = underlay_row(p, b, w);
        for (Mode m : all_modes) {
            CHECK(o.on(m) < prev_o[idx(m)]);
            CHECK(u.on(m) < prev_u[idx(m)]);
            CHECK(o.on(m) >= u.on(m));
            prev_o[idx(m)] = o.on(m);
            prev_u[idx(m)] = u.on(m);
        }
    }
}
