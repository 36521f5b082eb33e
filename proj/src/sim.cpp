#include "netdyn/sim.hpp"

#include <algorithm>
#include <cmath>

namespace netdyn {

namespace {

void check_config(const IntegratorConfig& c) {
    if (!(c.step > 0.0)) {
        throw ValidationError("integrator step must be positive");
    }
    if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0)) {
        throw ValidationError("integrator tolerances must be positive");
    }
    if (!(c.horizon > 0.0)) {
        throw ValidationError("integration horizon must be positive");
    }
    if (!(c.max_step > 0.0)) {
        throw ValidationError("max step must be positive");
    }
}

void check_finite(const Eigen::VectorXd& v, double t) {
    if (!v.allFinite()) {
        throw NonFiniteStateError(t);
    }
}

Eigen::VectorXd eval(const RhsFn& f, double t, const Eigen::VectorXd& x) {
    Eigen::VectorXd dx = f(t, x);
    if (dx.size() != x.size()) {
        throw ValidationError("rhs dimension does not match state dimension");
    }
    check_finite(dx, t);
    return dx;
}

Eigen::VectorXd rk4_step(const RhsFn& f, double t, const Eigen::VectorXd& x, double h,
                         const Eigen::VectorXd& k1) {
    const Eigen::VectorXd k2 = eval(f, t + 0.5 * h, x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = eval(f, t + 0.5 * h, x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = eval(f, t + h, x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate_rk4(const RhsFn& f, const Eigen::VectorXd& x0, const IntegratorConfig& c) {
    Trajectory traj;
    Eigen::VectorXd x = x0;
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(x);

    while (t < c.horizon) {
        const Eigen::VectorXd k1 = eval(f, t, x);
        if (k1.lpNorm<Eigen::Infinity>() < c.convergence_tol) {
            traj.termination = Termination::Converged;
            return traj;
        }
        const double h = std::min(c.step, c.horizon - t);
        x = rk4_step(f, t, x, h, k1);
        t += h;
        check_finite(x, t);
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    traj.termination = Termination::HorizonReached;
    return traj;
}

// Fehlberg 4(5) coefficients.
constexpr double kC2 = 1.0 / 4.0, kC3 = 3.0 / 8.0, kC4 = 12.0 / 13.0, kC6 = 1.0 / 2.0;

Trajectory integrate_rk45(const RhsFn& f, const Eigen::VectorXd& x0, const IntegratorConfig& c) {
    Trajectory traj;
    Eigen::VectorXd x = x0;
    double t = 0.0;
    double h = std::min(c.step, c.max_step);
    traj.times.push_back(t);
    traj.states.push_back(x);

    const double min_step = 1e-14 * c.horizon;

    while (t < c.horizon) {
        const Eigen::VectorXd k1 = eval(f, t, x);
        if (k1.lpNorm<Eigen::Infinity>() < c.convergence_tol) {
            traj.termination = Termination::Converged;
            return traj;
        }
        h = std::min({h, c.max_step, c.horizon - t});
        if (h < min_step) {
            throw StepUnderflowError(h, t);
        }

        const Eigen::VectorXd k2 = eval(f, t + kC2 * h, x + h * (1.0 / 4.0) * k1);
        const Eigen::VectorXd k3 = eval(f, t + kC3 * h, x + h * (3.0 / 32.0 * k1 + 9.0 / 32.0 * k2));
        const Eigen::VectorXd k4 =
            eval(f, t + kC4 * h,
                 x + h * (1932.0 / 2197.0 * k1 - 7200.0 / 2197.0 * k2 + 7296.0 / 2197.0 * k3));
        const Eigen::VectorXd k5 =
            eval(f, t + h,
                 x + h * (439.0 / 216.0 * k1 - 8.0 * k2 + 3680.0 / 513.0 * k3 -
                          845.0 / 4104.0 * k4));
        const Eigen::VectorXd k6 =
            eval(f, t + kC6 * h,
                 x + h * (-8.0 / 27.0 * k1 + 2.0 * k2 - 3544.0 / 2565.0 * k3 +
                          1859.0 / 4104.0 * k4 - 11.0 / 40.0 * k5));

        const Eigen::VectorXd x4 =
            x + h * (25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 + 2197.0 / 4104.0 * k4 -
                     1.0 / 5.0 * k5);
        const Eigen::VectorXd x5 =
            x + h * (16.0 / 135.0 * k1 + 6656.0 / 12825.0 * k3 + 28561.0 / 56430.0 * k4 -
                     9.0 / 50.0 * k5 + 2.0 / 55.0 * k6);

        const double error = (x5 - x4).lpNorm<Eigen::Infinity>();
        const double tolerance = c.abs_tol + c.rel_tol * x.lpNorm<Eigen::Infinity>();

        if (error <= tolerance) {
            t += h;
            x = x5;
            check_finite(x, t);
            traj.times.push_back(t);
            traj.states.push_back(x);
        }

        double factor = error > 0.0 ? 0.9 * std::pow(tolerance / error, 0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
    }
    traj.termination = Termination::HorizonReached;
    return traj;
}

}  // namespace

Trajectory integrate(const RhsFn& f, const Eigen::VectorXd& x0, const IntegratorConfig& config) {
    check_config(config);
    check_finite(x0, 0.0);
    switch (config.method) {
        case Method::FixedRK4:
            return integrate_rk4(f, x0, config);
        case Method::AdaptiveRK45:
            return integrate_rk45(f, x0, config);
    }
    throw ValidationError("unknown integration method");
}

}  // namespace netdyn
