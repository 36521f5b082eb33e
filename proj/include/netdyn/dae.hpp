#pragma once

#include <Eigen/Dense>

#include <vector>

#include "netdyn/graph.hpp"
#include "netdyn/sim.hpp"

namespace netdyn {

// Connected network whose first r nodes accumulate the resource (dynamic,
// type-1) while the remaining n-r act as pure intermediaries (algebraic,
// type-2).
class HeterogeneousNetwork {
public:
    HeterogeneousNetwork(Digraph graph, int type1_count);

    const Digraph& graph() const { return graph_; }
    int type1_count() const { return r_; }
    int type2_count() const { return graph_.node_count() - r_; }

private:
    Digraph graph_;
    int r_;
};

// The four blocks L_ij = A_i A_j^T of the Laplacian split along the
// dynamic/algebraic boundary.
struct LaplacianBlocks {
    Eigen::MatrixXd l11;
    Eigen::MatrixXd l12;
    Eigen::MatrixXd l21;
    Eigen::MatrixXd l22;
};

// Explicit ODE equivalent of the constrained dynamics:
//   y' = reduced_matrix * y,   z = algebraic_map * y.
struct ReducedSystem {
    Eigen::MatrixXd reduced_matrix;  // -(L11 - L12 L22^{-1} L21)
    Eigen::MatrixXd algebraic_map;   // -L22^{-1} L21
};

LaplacianBlocks build_blocks(const HeterogeneousNetwork& h);

// Unique z satisfying the constraint 0 = L21 y + L22 z.
Eigen::VectorXd consistent_completion(const HeterogeneousNetwork& h, const Eigen::VectorXd& y0);

// Schur reduction to the explicit ODE; verifies that the reduced matrix is
// symmetric, negative semidefinite, and corank one, throwing
// InvariantViolationError with diagnostics otherwise.
ReducedSystem reduce(const HeterogeneousNetwork& h);

struct DaeTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> y;  // dynamic variables
    std::vector<Eigen::VectorXd> z;  // algebraic variables
    Termination termination = Termination::Error;

    Eigen::VectorXd full_state(size_t i) const;
};

// Integrates the reduced ODE and reconstructs z at every output time; every
// recorded state satisfies the constraint to 1e-9.
DaeTrajectory simulate_dae(const HeterogeneousNetwork& h, const Eigen::VectorXd& y0,
                           double horizon, IntegratorConfig config = {});

// The constant equilibrium state all trajectories converge to: every
// coordinate equals mean(y0).
Eigen::VectorXd predicted_equilibrium(const HeterogeneousNetwork& h, const Eigen::VectorXd& y0);

}  // namespace netdyn
