#include "netdyn/dae.hpp"

#include <string>
#include <utility>

#include "netdyn/flows.hpp"
#include "netdyn/linalg.hpp"

namespace netdyn {

HeterogeneousNetwork::HeterogeneousNetwork(Digraph graph, int type1_count)
    : graph_(std::move(graph)), r_(type1_count) {
    if (r_ < 1 || r_ >= graph_.node_count()) {
        throw ValidationError("type-1 count must satisfy 1 <= r < n");
    }
    if (!is_connected(graph_)) {
        throw NotConnectedError("heterogeneous network must be connected");
    }
}

LaplacianBlocks build_blocks(const HeterogeneousNetwork& h) {
    const int n = h.graph().node_count();
    const int r = h.type1_count();
    const Eigen::MatrixXd lap = laplacian(h.graph());
    LaplacianBlocks blocks;
    blocks.l11 = lap.topLeftCorner(r, r);
    blocks.l12 = lap.topRightCorner(r, n - r);
    blocks.l21 = lap.bottomLeftCorner(n - r, r);
    blocks.l22 = lap.bottomRightCorner(n - r, n - r);
    return blocks;
}

Eigen::VectorXd consistent_completion(const HeterogeneousNetwork& h, const Eigen::VectorXd& y0) {
    if (y0.size() != h.type1_count()) {
        throw ValidationError("initial value length must equal the type-1 count");
    }
    const ReducedSystem sys = reduce(h);
    return sys.algebraic_map * y0;
}

ReducedSystem reduce(const HeterogeneousNetwork& h) {
    const Eigen::MatrixXd lap = laplacian(h.graph());
    // L22 is provably nonsingular on connected graphs, so an ill-conditioned
    // block signals input corruption and surfaces as SingularBlockError.
    const SchurReduction schur = schur_reduce(lap, h.type1_count());

    ReducedSystem sys;
    sys.reduced_matrix = -schur.reduced;
    sys.algebraic_map = schur.elimination_map;

    const double asym = (sys.reduced_matrix - sys.reduced_matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw InvariantViolationError("reduced matrix asymmetry " + std::to_string(asym));
    }
    const Eigen::VectorXd eigs = symmetric_eigenvalues(sys.reduced_matrix);
    if (eigs(eigs.size() - 1) > 1e-10) {
        throw InvariantViolationError("reduced matrix has a positive eigenvalue " +
                                      std::to_string(eigs(eigs.size() - 1)));
    }
    int near_zero = 0;
    for (int i = 0; i < eigs.size(); ++i) {
        if (std::abs(eigs(i)) <= 1e-10) {
            ++near_zero;
        }
    }
    if (near_zero != 1) {
        throw InvariantViolationError("reduced matrix corank is " + std::to_string(near_zero) +
                                      ", expected 1");
    }
    return sys;
}

Eigen::VectorXd DaeTrajectory::full_state(size_t i) const {
    Eigen::VectorXd state(y[i].size() + z[i].size());
    state << y[i], z[i];
    return state;
}

DaeTrajectory simulate_dae(const HeterogeneousNetwork& h, const Eigen::VectorXd& y0,
                           double horizon, IntegratorConfig config) {
    const ReducedSystem sys = reduce(h);
    if (y0.size() != sys.reduced_matrix.rows()) {
        throw ValidationError("initial value length must equal the type-1 count");
    }
    config.horizon = horizon;

    const Eigen::MatrixXd& rm = sys.reduced_matrix;
    Trajectory traj = integrate(
        [&rm](double, const Eigen::VectorXd& y) -> Eigen::VectorXd { return rm * y; }, y0, config);

    const LaplacianBlocks blocks = build_blocks(h);
    DaeTrajectory result;
    result.times = traj.times;
    result.termination = traj.termination;
    result.y.reserve(traj.states.size());
    result.z.reserve(traj.states.size());
    for (const Eigen::VectorXd& y : traj.states) {
        Eigen::VectorXd z = sys.algebraic_map * y;
        const double residual = (blocks.l21 * y + blocks.l22 * z).lpNorm<Eigen::Infinity>();
        const double scale = 1.0 + std::max(y.lpNorm<Eigen::Infinity>(), z.lpNorm<Eigen::Infinity>());
        if (residual > 1e-9 * scale) {
            throw InvariantViolationError("constraint residual " + std::to_string(residual));
        }
        result.y.push_back(y);
        result.z.push_back(std::move(z));
    }
    return result;
}

Eigen::VectorXd predicted_equilibrium(const HeterogeneousNetwork& h, const Eigen::VectorXd& y0) {
    if (y0.size() != h.type1_count()) {
        throw ValidationError("initial value length must equal the type-1 count");
    }
    const double mean = y0.sum() / static_cast<double>(y0.size());
    return Eigen::VectorXd::Constant(h.graph().node_count(), mean);
}

}  // namespace netdyn
