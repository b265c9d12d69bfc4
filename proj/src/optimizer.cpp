#include "d2d/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "d2d/params.hpp"

namespace d2d {

double cost_n1(double r, const FrozenCoeffs& c) {
    double a = std::exp(-c.l * r * c.theta) * c.phi;
    return a + std::sqrt(a * a + 4 * (std::exp(-c.l * r * c.theta) * c.vartheta + c.eps_ac));
}

double analytic_gradient_n1(double r, const FrozenCoeffs& c) {
    double E = std::exp(-c.l * r * c.theta);
    double lt = c.l * c.theta;
    double root = std::sqrt(E * E * c.phi * c.phi + 4 * (E * c.vartheta + c.eps_ac));
    return -lt * E * c.phi - lt * (E * E * c.phi * c.phi + 2 * E * c.vartheta) / root;
}

double simplified_gradient_n1(double r, const FrozenCoeffs& c) {
    double E = std::exp(-c.l * r * c.theta);
    double lt = c.l * c.theta;
    double root = std::sqrt(E * E * c.phi * c.phi + 4 * (E * c.vartheta + c.eps_ac));
    return -lt * E * c.phi - lt * E * E * (c.phi + 2 * c.vartheta / E) / root;
}

void GDConfig::validate() const {
    if (!(step_omega > 0)) throw ConfigError("step_omega must be positive");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(grad_tol > 0)) throw ConfigError("grad_tol must be positive");
    if (!(fd_step > 0)) throw ConfigError("fd_step must be positive");
    if (!(r_init > 0)) throw ConfigError("r_init must be positive");
}

GDResult gd_optimize(const Objective& f, const GDConfig& cfg, const Objective& gradient) {
    cfg.validate();
    auto grad_at = [&](double r) {
        if (gradient) return gradient(r);
        double h = std::min(cfg.fd_step, 0.5 * (r - cfg.r_min));
        if (h <= 0) h = cfg.fd_step;
        return (f(r + h) - f(r - h)) / (2 * h);
    };
    auto checked = [&](double r, GDResult& res) {
        double v = f(r);
        if (!std::isfinite(v)) {
            res.trace.push_back({res.iterations, r, v, NAN, NAN});
            throw std::runtime_error("objective not finite at r = " + std::to_string(r));
        }
        return v;
    };

    GDResult res;
    double r = std::max(cfg.r_init, cfg.r_min);
    double v = checked(r, res);
    double step = cfg.step_omega;
    res.r_star = r;
    res.value_star = v;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        res.iterations = it;
        double g = grad_at(r);
        res.trace.push_back({it, r, v, g, step});
        if (std::abs(g) < cfg.grad_tol || step < cfg.min_step) {
            res.converged = true;
            break;
        }
        double cand = std::max(cfg.r_min, r + (g > 0 ? step : -step));
        double cv = checked(cand, res);
        if (cv > v) {
            r = cand;
            v = cv;
        } else {
            step *= 0.5;
        }
    }
    res.r_star = r;
    res.value_star = v;
    return res;
}

GridResult grid_search(const Objective& f, double lo, double hi, int steps) {
    if (!(lo < hi) || steps < 2) throw ConfigError("grid needs lo < hi and steps >= 2");
    GridResult g;
    g.r.resize(static_cast<std::size_t>(steps));
    g.value.resize(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        g.r[i] = lo + (hi - lo) * i / (steps - 1);
        g.value[i] = f(g.r[i]);
        if (i == 0 || g.value[i] > g.value_star) {
            g.value_star = g.value[i];
            g.r_star = g.r[i];
        }
    }
    return g;
}

}  // namespace d2d
