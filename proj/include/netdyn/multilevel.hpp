#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "netdyn/graph.hpp"
#include "netdyn/linalg.hpp"
#include "netdyn/sim.hpp"

namespace netdyn {

enum class TwoLevelVariant {
    Simplified,     // agents decoupled from each other; group flow + membership coupling
    Full,           // adds the agent-level Laplacian flow
    NodeGroupOnly,  // membership coupling only, no flows among groups
};

// Linear two-level dynamics state' = M state with state = (x, y): n agent
// variables followed by p group variables. M is assembled exactly in rational
// arithmetic (entries are 0, ±1, 1/n_j, -1-d_j, ...) and mirrored to doubles
// for simulation.
class TwoLevelSystem {
public:
    TwoLevelSystem(TwoLevelNetwork network, TwoLevelVariant variant);

    const TwoLevelNetwork& network() const { return network_; }
    TwoLevelVariant variant() const { return variant_; }
    const Eigen::MatrixXd& system_matrix() const { return m_; }
    const RationalMatrix& exact_system_matrix() const { return exact_m_; }
    int agent_count() const { return network_.agent_count(); }
    int group_count() const { return network_.group_count(); }

    // Undirected degree of each group in the group digraph.
    const std::vector<int>& group_degrees() const { return degrees_; }

private:
    TwoLevelNetwork network_;
    TwoLevelVariant variant_;
    RationalMatrix exact_m_;
    Eigen::MatrixXd m_;
    std::vector<int> degrees_;
};

TwoLevelSystem build_system(const TwoLevelNetwork& t, TwoLevelVariant variant);

// Direction vector of the line of equilibria: y_j = 1 for every group and
// x_i = 1 / n_{chi(i)}. Simplified variant only.
Eigen::VectorXd equilibrium_line(const TwoLevelSystem& s);

struct TwoLevelState {
    Eigen::VectorXd x;
    Eigen::VectorXd y;

    Eigen::VectorXd stacked() const;
};

// Equilibrium reached from (x0, y0): y_j = (sum x0 + sum y0) / (2p) for all
// groups and x_i = y_{chi(i)} / n_{chi(i)}. Simplified variant only.
TwoLevelState predicted_limit(const TwoLevelSystem& s, const Eigen::VectorXd& x0,
                              const Eigen::VectorXd& y0);

struct StabilityCertificate {
    std::vector<Disc> discs;
    bool all_in_closed_left_half_plane = false;
    bool zero_eigenvalue_simple = false;
};

// Geršgorin certificate: every disc in the closed left half plane with
// tangency at the origin, and a simple zero eigenvalue. Simplified only.
StabilityCertificate stability_certificate(const TwoLevelSystem& s);

// Largest real part among the nonzero eigenvalues of M, i.e. the slowest
// decay rate. M is not symmetric, so this uses a general eigensolver and is
// only offered for n+p <= 12; larger instances get nullopt and rely on the
// Geršgorin certificate alone.
std::optional<double> estimated_decay_rate(const TwoLevelSystem& s);

Trajectory simulate_twolevel(const TwoLevelSystem& s, const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& y0, double horizon,
                             IntegratorConfig config = {});

}  // namespace netdyn
