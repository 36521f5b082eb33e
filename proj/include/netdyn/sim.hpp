#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "netdyn/errors.hpp"

namespace netdyn {

enum class Method { FixedRK4, AdaptiveRK45 };

struct IntegratorConfig {
    Method method = Method::FixedRK4;
    double step = 1e-2;       // fixed step, or initial step for the adaptive method
    double rel_tol = 1e-8;    // adaptive tolerances
    double abs_tol = 1e-10;
    double max_step = 1.0;
    double horizon = 50.0;
    double convergence_tol = 1e-10;  // stop when ||x'||_inf drops below this
};

enum class Termination { HorizonReached, Converged, Error };

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    Termination termination = Termination::Error;

    const Eigen::VectorXd& terminal_state() const { return states.back(); }
    double terminal_time() const { return times.back(); }
};

using RhsFn = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

// Integrates x' = f(t, x) from t = 0 up to config.horizon, sampling every
// accepted step. Convergence is detected on the rhs norm so that lines of
// non-isolated equilibria terminate cleanly anywhere on the line.
Trajectory integrate(const RhsFn& f, const Eigen::VectorXd& x0, const IntegratorConfig& config);

}  // namespace netdyn
