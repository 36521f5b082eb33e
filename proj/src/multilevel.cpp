#include "netdyn/multilevel.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <string>
#include <utility>

#include "netdyn/flows.hpp"

namespace netdyn {

namespace {

void require_simplified(const TwoLevelSystem& s, const char* op) {
    if (s.variant() != TwoLevelVariant::Simplified) {
        throw VariantUnsupportedError(std::string(op) +
                                      " is only available for the simplified variant");
    }
}

}  // namespace

TwoLevelSystem::TwoLevelSystem(TwoLevelNetwork network, TwoLevelVariant variant)
    : network_(std::move(network)), variant_(variant), exact_m_(0, 0) {
    const int n = network_.agent_count();
    const int p = network_.group_count();

    if (variant_ != TwoLevelVariant::NodeGroupOnly && !is_connected(network_.groups())) {
        throw GroupGraphDisconnectedError();
    }

    degrees_.assign(static_cast<size_t>(p), 0);
    for (const Edge& e : network_.groups().edges()) {
        ++degrees_[static_cast<size_t>(e.tail)];
        ++degrees_[static_cast<size_t>(e.head)];
    }

    exact_m_ = RationalMatrix(n + p, n + p);

    // Agent block: -I (plus the agent Laplacian in the full variant).
    for (int i = 0; i < n; ++i) {
        exact_m_(i, i) = -1;
    }
    if (variant_ == TwoLevelVariant::Full) {
        for (const Edge& e : network_.agents().edges()) {
            exact_m_(e.tail, e.tail) -= 1;
            exact_m_(e.head, e.head) -= 1;
            exact_m_(e.tail, e.head) += 1;
            exact_m_(e.head, e.tail) += 1;
        }
    }

    // Membership coupling: A_H (A_H^T A_H)^{-1} on the right, A_H^T below.
    for (int i = 0; i < n; ++i) {
        const int j = network_.group_of(i);
        exact_m_(i, n + j) = Rational(1, network_.group_sizes()[static_cast<size_t>(j)]);
        exact_m_(n + j, i) = 1;
    }

    // Group block: -I, minus the group Laplacian except in the node-group-only
    // variant.
    for (int j = 0; j < p; ++j) {
        exact_m_(n + j, n + j) = -1;
    }
    if (variant_ != TwoLevelVariant::NodeGroupOnly) {
        for (const Edge& e : network_.groups().edges()) {
            exact_m_(n + e.tail, n + e.tail) -= 1;
            exact_m_(n + e.head, n + e.head) -= 1;
            exact_m_(n + e.tail, n + e.head) += 1;
            exact_m_(n + e.head, n + e.tail) += 1;
        }
    }

    // Assembly invariants, checked exactly.
    for (const Rational& sum : exact_m_.column_sums()) {
        if (sum != 0) {
            throw InvariantViolationError("system matrix column sum " + to_string(sum));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (variant_ != TwoLevelVariant::Full && exact_m_(i, i) != -1) {
            throw InvariantViolationError("agent diagonal entry differs from -1");
        }
    }
    if (variant_ == TwoLevelVariant::Simplified) {
        for (int j = 0; j < p; ++j) {
            if (exact_m_(n + j, n + j) != Rational(-1 - degrees_[static_cast<size_t>(j)])) {
                throw InvariantViolationError("group diagonal entry differs from -1-d_j");
            }
        }
    }

    m_ = Eigen::MatrixXd(n + p, n + p);
    for (int i = 0; i < n + p; ++i) {
        for (int j = 0; j < n + p; ++j) {
            m_(i, j) = to_double(exact_m_(i, j));
        }
    }
}

TwoLevelSystem build_system(const TwoLevelNetwork& t, TwoLevelVariant variant) {
    return TwoLevelSystem(t, variant);
}

Eigen::VectorXd equilibrium_line(const TwoLevelSystem& s) {
    require_simplified(s, "equilibrium_line");
    const int n = s.agent_count();
    const int p = s.group_count();
    Eigen::VectorXd direction(n + p);
    for (int i = 0; i < n; ++i) {
        direction(i) = 1.0 / s.network().group_sizes()[static_cast<size_t>(s.network().group_of(i))];
    }
    direction.tail(p).setOnes();

    const double residual = (s.system_matrix() * direction).lpNorm<Eigen::Infinity>();
    if (residual > 1e-12) {
        throw InvariantViolationError("equilibrium direction residual " + std::to_string(residual));
    }
    return direction;
}

Eigen::VectorXd TwoLevelState::stacked() const {
    Eigen::VectorXd state(x.size() + y.size());
    state << x, y;
    return state;
}

TwoLevelState predicted_limit(const TwoLevelSystem& s, const Eigen::VectorXd& x0,
                              const Eigen::VectorXd& y0) {
    require_simplified(s, "predicted_limit");
    const int n = s.agent_count();
    const int p = s.group_count();
    if (x0.size() != n || y0.size() != p) {
        throw ValidationError("initial condition dimensions must match the network");
    }
    const double level = (x0.sum() + y0.sum()) / (2.0 * static_cast<double>(p));
    TwoLevelState state;
    state.y = Eigen::VectorXd::Constant(p, level);
    state.x.resize(n);
    for (int i = 0; i < n; ++i) {
        state.x(i) = level / s.network().group_sizes()[static_cast<size_t>(s.network().group_of(i))];
    }
    return state;
}

StabilityCertificate stability_certificate(const TwoLevelSystem& s) {
    require_simplified(s, "stability_certificate");
    StabilityCertificate cert;
    cert.discs = gershgorin_discs(s.system_matrix());
    cert.all_in_closed_left_half_plane = true;
    for (const Disc& d : cert.discs) {
        if (d.center + d.radius > 1e-12) {
            cert.all_in_closed_left_half_plane = false;
        }
    }
    const int total = s.agent_count() + s.group_count();
    cert.zero_eigenvalue_simple = rank_kernel(s.system_matrix()).rank == total - 1;
    return cert;
}

std::optional<double> estimated_decay_rate(const TwoLevelSystem& s) {
    const int total = s.agent_count() + s.group_count();
    if (total > 12) {
        return std::nullopt;
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(s.system_matrix());
    double slowest = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < total; ++i) {
        const double real = solver.eigenvalues()(i).real();
        if (std::abs(real) > 1e-10 && real > slowest) {
            slowest = real;
        }
    }
    return slowest;
}

Trajectory simulate_twolevel(const TwoLevelSystem& s, const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& y0, double horizon, IntegratorConfig config) {
    const int n = s.agent_count();
    const int p = s.group_count();
    if (x0.size() != n || y0.size() != p) {
        throw ValidationError("initial condition dimensions must match the network");
    }
    Eigen::VectorXd state0(n + p);
    state0 << x0, y0;
    config.horizon = horizon;
    const Eigen::MatrixXd& m = s.system_matrix();
    return integrate(
        [&m](double, const Eigen::VectorXd& state) -> Eigen::VectorXd { return m * state; },
        state0, config);
}

}  // namespace netdyn
