#include <algorithm>
#include <cmath>
#include <random>

#include "d2d/mode_selection.hpp"
#include "d2d/montecarlo.hpp"
#include "doctest.h"

using namespace d2d;

TEST_CASE("q function") {
    CHECK(q_function(0) == doctest::Approx(0.5));
    CHECK(q_function(1) == doctest::Approx(0.1586552539314571).epsilon(1e-12));
    CHECK(q_function(2.25) == doctest::Approx(0.0122).epsilon(0.05));
    CHECK(q_function(-3) + q_function(3) == doctest::Approx(1.0));
}

TEST_CASE("midpoint thresholds") {
    Thresholds c = compute_thresholds({80.9, 85.4, 90.7}, 1.0);
    CHECK(c.c_ab == doctest::Approx(83.15));
    CHECK(c.c_bc == doctest::Approx(88.05));
    Thresholds s = compute_thresholds({80.9 + 7, 85.4 + 7, 90.7 + 7}, 1.0);
    CHECK(s.c_ab - c.c_ab == doctest::Approx(7));
    CHECK(s.c_bc - c.c_bc == doctest::Approx(7));
    Thresholds w = compute_thresholds({80.9, 85.4, 90.7}, 5.0);
    CHECK(w.c_ab == c.c_ab);
    CHECK(w.c_bc == c.c_bc);
    CHECK_THROWS_AS(map_to_hypotheses({80, 80, 90}, 1.0), DomainError);
}

TEST_CASE("worked example") {
    ThresholdSpec fixed{ThresholdRule::fixed, 83.15, 87.9};
    auto d = map_to_hypotheses({90.7, 80.9, 85.4}, 1.0, fixed);
    CHECK(std::abs(d.pd[1] - 0.988) <= 1e-3);
    CHECK(std::abs(d.pd[2] - 0.981) <= 1e-3);
    CHECK(std::abs(d.pd[0] - 0.997) <= 1e-3);
    CHECK(std::abs(d.pe[0] - 0.003) <= 1e-3);
    for (int h = 0; h < 3; ++h) CHECK(d.pd[h] + d.pe[h] == doctest::Approx(1.0));

    // midpoint rule moves C_BC to 88.05 and P_d,H0 to 1 - Q(2.65)
    auto m = map_to_hypotheses({90.7, 80.9, 85.4}, 1.0);
    CHECK(m.pd[0] == doctest::Approx(1 - q_function(2.65)));
    CHECK(m.pd[1] == doctest::Approx(1 - q_function(2.25)));
}

TEST_CASE("sorted input and permutations") {
    auto d = map_to_hypotheses({80.9, 85.4, 90.7}, 1.0);
    CHECK(d.perm == std::array<int, 3>{0, 1, 2});
    std::array<double, 3> l{90.7, 80.9, 85.4};
    std::array<int, 3> ix{0, 1, 2};
    auto base = map_to_hypotheses(l, 2.0);
    do {
        std::array<double, 3> pl{l[ix[0]], l[ix[1]], l[ix[2]]};
        auto pd = map_to_hypotheses(pl, 2.0);
        for (int i = 0; i < 3; ++i) CHECK(pd.pd[i] == doctest::Approx(base.pd[ix[i]]));
    } while (std::next_permutation(ix.begin(), ix.end()));
}

TEST_CASE("sigma limits and monotonicity") {
    auto tiny = map_to_hypotheses({90.7, 80.9, 85.4}, 1e-6);
    for (int h = 0; h < 3; ++h) CHECK(tiny.pd[h] == doctest::Approx(1.0));
    auto zero = map_to_hypotheses({90.7, 80.9, 85.4}, 0.0);
    for (int h = 0; h < 3; ++h) CHECK(zero.pd[h] == 1.0);
    auto mass = hypothesis_probabilities(tiny, Prior::uniform);
    for (double x : mass) CHECK(x == doctest::Approx(1.0 / 3));

    std::array<double, 3> prev{1, 1, 1};
    for (int i = 1; i <= 100; ++i) {
        auto d = map_to_hypotheses({90.7, 80.9, 85.4}, 0.1 * i);
        for (int h = 0; h < 3; ++h) {
            CHECK(d.pd[h] <= prev[h] + 1e-15);
            prev[h] = d.pd[h];
        }
    }
}

TEST_CASE("hypothesis probabilities") {
    for (double s : {0.3, 1.0, 4.0}) {
        auto d = map_to_hypotheses({90.7, 80.9, 85.4}, s);
        for (Prior pr : {Prior::uniform, Prior::true_best}) {
            auto w = hypothesis_probabilities(d, pr);
            CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0));
        }
        // true_best puts the prior on the smallest loss: H1 here
        auto tb = hypothesis_probabilities(d, Prior::true_best);
        CHECK(tb[1] == doctest::Approx(d.pd[1]));
    }
}

TEST_CASE("analytic detection matches Monte Carlo") {
    const long n = 1000000;
    for (double s : {0.5, 1.0, 3.0, 5.0}) {
        auto d = map_to_hypotheses({90.7, 80.9, 85.4}, s);
        Confusion c = empirical_detection(d, n, 100 + static_cast<int>(10 * s));
        for (int h = 0; h < 3; ++h) {
            double sd = std::sqrt(d.pd[h] * (1 - d.pd[h]) / n);
            CHECK(std::abs(c[h][h] - d.pd[h]) <= std::max(3 * sd, 3.0 / n));
            CHECK(c[h][0] + c[h][1] + c[h][2] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    auto d = map_to_hypotheses({90.7, 80.9, 85.4}, 1.0);
    auto sel = empirical_selection(d, Prior::uniform, n, 4);
    auto w = hypothesis_probabilities(d, Prior::uniform);
    for (int h = 0; h < 3; ++h) CHECK(std::abs(sel[h] - w[h]) <= 3 * std::sqrt(w[h] * (1 - w[h]) / n));
}

TEST_CASE("decision regions partition the line") {
    auto d = map_to_hypotheses({90.7, 80.9, 85.4}, 1.0);
    CHECK(select_mode(d, 70) == Mode::micro);
    CHECK(select_mode(d, 86) == Mode::macro);
    CHECK(select_mode(d, 95) == Mode::direct);
    CHECK(select_mode(d, d.thresholds.c_ab) != select_mode(d, d.thresholds.c_ab - 1e-9));
}

TEST_CASE("pilot estimator") {
    Rng rng(1);
    PilotConfig exact{2.0, 0.0, 50, true};
    CHECK(estimate_pathloss(0.3, exact, rng) == doctest::Approx(0.09));

    // mean and 1/m variance
    PilotConfig cfg{1.0, 0.01, 10000, false};
    auto stats = [&](int m, int reps) {
        cfg.m_pilots = m;
        double s = 0, ss = 0;
        for (int i = 0; i < reps; ++i) {
            double x = estimate_pathloss(0.5, cfg, rng);
            s += x;
            ss += x * x;
        }
        double mean = s / reps;
        return std::pair{mean, ss / reps - mean * mean};
    };
    auto [mean, var1] = stats(10000, 2000);
    CHECK(mean == doctest::Approx(0.25 + 0.01).epsilon(0.01));
    auto [mean4, var4] = stats(40000, 2000);
    CHECK(var4 == doctest::Approx(var1 / 4).epsilon(0.1));
    (void)mean4;
}
