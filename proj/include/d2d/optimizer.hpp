#pragma once

#include <functional>
#include <vector>

namespace d2d {

struct FrozenCoeffs {
    double phi = 0;
    double vartheta = 0;
    double eps_ac = 0;
    double l = 100;
    double theta = 0.01;
};

// F = e^{-lr theta} phi + sqrt((e^{-lr theta} phi)^2 + 4 (e^{-lr theta} vartheta + eps_ac))
double cost_n1(double r, const FrozenCoeffs& c);
// dF/dr with the coefficients held fixed.
double analytic_gradient_n1(double r, const FrozenCoeffs& c);
// Simplified gradient: phi where the derivative of the square gives phi^2. Kept for comparison.
double simplified_gradient_n1(double r, const FrozenCoeffs& c);

enum class GradientMode { analytic_frozen, numeric };

struct GDConfig {
    double step_omega = 0.5;
    int max_iters = 200;
    double grad_tol = 1e-6;
    double r_init = 0.5;
    GradientMode gradient_mode = GradientMode::numeric;
    double fd_step = 1e-3;
    double r_min = 1e-3;
    double min_step = 1e-4;

    void validate() const;
};

struct GDStep {
    int iter;
    double r;
    double value;
    double grad;
    double step;
};

struct GDResult {
    double r_star = 0;
    double value_star = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<GDStep> trace;
};

using Objective = std::function<double(double)>;

// Maximizes objective(r). Steps of length omega along the gradient sign, halved when a step
// does not improve; stops when |grad| < grad_tol or the step falls below min_step.
// `gradient`, when given, replaces the central difference.
GDResult gd_optimize(const Objective& objective, const GDConfig& cfg, const Objective& gradient = {});

struct GridResult {
    double r_star = 0;
    double value_star = 0;
    std::vector<double> r;
    std::vector<double> value;
};

GridResult grid_search(const Objective& objective, double r_lo, double r_hi, int steps);

}  // namespace d2d
