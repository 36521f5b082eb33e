#include "netdyn/equilibria.hpp"

#include <cmath>
#include <string>

#include "netdyn/linalg.hpp"

namespace netdyn {

namespace {

std::vector<Rational> exact_weights(const std::vector<double>& weights) {
    std::vector<Rational> out;
    out.reserve(weights.size());
    for (double w : weights) {
        out.push_back(rational_from_double(w));
    }
    return out;
}

void check_weight_count(const Digraph& g, size_t count) {
    if (static_cast<int>(count) != g.edge_count()) {
        throw ValidationError("weight list length must equal edge count");
    }
}

int resolve_drop_node(const Digraph& g, int drop_node) {
    if (drop_node < 0) {
        return g.node_count() - 1;
    }
    if (drop_node >= g.node_count()) {
        throw ValidationError("drop node out of range");
    }
    return drop_node;
}

}  // namespace

Rational tree_weight_sum_enum(const Digraph& g, const std::vector<Rational>& weights,
                              std::int64_t cap) {
    check_weight_count(g, weights.size());
    Rational sum(0);
    for (const SpanningTree& tree : enumerate_spanning_trees(g, cap)) {
        Rational product(1);
        for (int j : tree.edge_ids) {
            product *= weights[static_cast<size_t>(j)];
        }
        sum += product;
    }
    sum.canonicalize();
    return sum;
}

Rational tree_weight_sum_enum(const WeightedDigraph& g, std::int64_t cap) {
    return tree_weight_sum_enum(g.base(), exact_weights(g.weights()), cap);
}

Rational tree_weight_sum_det(const Digraph& g, const std::vector<Rational>& weights,
                             int drop_node) {
    check_weight_count(g, weights.size());
    if (!is_connected(g)) {
        throw NotConnectedError();
    }
    const int n = g.node_count();
    if (n == 1) {
        return Rational(1);
    }
    const int drop = resolve_drop_node(g, drop_node);

    // A_r W A_r^T assembled edge by edge in exact arithmetic; row/column k of
    // the full Laplacian maps to k (k < drop) or k-1 (k > drop).
    RationalMatrix reduced(n - 1, n - 1);
    for (int j = 0; j < g.edge_count(); ++j) {
        const Edge& e = g.edge(j);
        const Rational& w = weights[static_cast<size_t>(j)];
        const int ends[2] = {e.tail, e.head};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                if (ends[a] == drop || ends[b] == drop) {
                    continue;
                }
                const int row = ends[a] < drop ? ends[a] : ends[a] - 1;
                const int col = ends[b] < drop ? ends[b] : ends[b] - 1;
                if (a == b) {
                    reduced(row, col) += w;
                } else {
                    reduced(row, col) -= w;
                }
            }
        }
    }
    return reduced.determinant();
}

Rational tree_weight_sum_det(const WeightedDigraph& g, int drop_node) {
    return tree_weight_sum_det(g.base(), exact_weights(g.weights()), drop_node);
}

double tree_weight_sum_det_numeric(const Digraph& g, const std::vector<double>& weights,
                                   int drop_node) {
    check_weight_count(g, weights.size());
    if (!is_connected(g)) {
        throw NotConnectedError();
    }
    const int n = g.node_count();
    if (n == 1) {
        return 1.0;
    }
    const int drop = resolve_drop_node(g, drop_node);
    const Eigen::MatrixXd lap = laplacian(g, weights);
    Eigen::MatrixXd reduced(n - 1, n - 1);
    int row = 0;
    for (int i = 0; i < n; ++i) {
        if (i == drop) continue;
        int col = 0;
        for (int j = 0; j < n; ++j) {
            if (j == drop) continue;
            reduced(row, col++) = lap(i, j);
        }
        ++row;
    }
    return determinant(reduced);
}

SignedTreeCounts signed_tree_counts(const SignedDigraph& g, std::int64_t cap) {
    SignedTreeCounts counts;
    for (const SpanningTree& tree : enumerate_spanning_trees(g.base(), cap)) {
        int negatives = 0;
        for (int j : tree.edge_ids) {
            if (g.signs()[static_cast<size_t>(j)] < 0) {
                ++negatives;
            }
        }
        if (negatives % 2 == 0) {
            ++counts.positive;
        } else {
            ++counts.negative;
        }
    }
    return counts;
}

EquilibriumReport corank_one_test(const PotentialFlow& fl, const Eigen::VectorXd& x_star,
                                  std::int64_t cap) {
    const Digraph& g = fl.graph();
    if (!fl.all_dynamic()) {
        throw MixedAlphaUnsupportedError();
    }
    if (!is_connected(g)) {
        throw NotConnectedError();
    }
    const double residual = rhs(fl, x_star).lpNorm<Eigen::Infinity>();
    if (residual > 1e-8) {
        throw NotAnEquilibriumError(residual);
    }

    // Linearization weights W_j = f_j'((A^T x*)_j).
    std::vector<double> weights(static_cast<size_t>(g.edge_count()));
    for (int j = 0; j < g.edge_count(); ++j) {
        const Edge& e = g.edge(j);
        weights[static_cast<size_t>(j)] =
            fl.edge_functions()[static_cast<size_t>(j)].derivative(x_star(e.tail) - x_star(e.head));
    }

    EquilibriumReport report;

    bool sum_nonzero = false;
    if (fl.all_linear()) {
        // Rational model data: both routes exact, zero test decidable.
        const std::vector<Rational> wq = exact_weights(weights);
        const Rational det_sum = tree_weight_sum_det(g, wq);
        report.tree_weight_sum_det = det_sum;
        report.tree_weight_sum = to_double(det_sum);
        report.exact_decision = true;
        sum_nonzero = det_sum != 0;
        try {
            const Rational enum_sum = tree_weight_sum_enum(g, wq, cap);
            report.tree_weight_sum_enum = enum_sum;
            if (enum_sum != det_sum) {
                throw InvariantViolationError(
                    "enumeration and determinantal tree sums disagree: " + to_string(enum_sum) +
                    " vs " + to_string(det_sum));
            }
        } catch (const CapExceededError&) {
            // Enumeration route skipped; the determinantal value stands alone.
        }
    } else {
        // Derivative values of nonlinear edge functions: numerical decision
        // against the scale sum of |tree weights| = det with |W_j| weights.
        const double det_sum = tree_weight_sum_det_numeric(g, weights);
        std::vector<double> abs_weights(weights.size());
        for (size_t j = 0; j < weights.size(); ++j) {
            abs_weights[j] = std::abs(weights[j]);
        }
        const double scale = tree_weight_sum_det_numeric(g, abs_weights);
        report.tree_weight_sum = det_sum;
        report.exact_decision = false;
        sum_nonzero = std::abs(det_sum) > 1e-9 * scale;
    }

    const RankKernel rk = rank_kernel(jacobian(fl, x_star));
    report.jacobian_rank = rk.rank;
    report.corank = g.node_count() - rk.rank;
    report.kernel_basis = rk.kernel;

    if (sum_nonzero != (report.corank == 1)) {
        throw InvariantViolationError(
            "tree-weight-sum test and numerical corank disagree (sum " +
            std::to_string(report.tree_weight_sum) + ", corank " + std::to_string(report.corank) +
            ")");
    }

    report.corank_one_certified = sum_nonzero;
    if (sum_nonzero) {
        report.dimension_certified = true;
        report.local_dimension = 1;
    } else if (fl.all_linear()) {
        // Linear flows: the equilibrium set is globally the kernel.
        report.dimension_certified = true;
        report.local_dimension = report.corank;
    } else {
        report.dimension_certified = false;
        report.local_dimension = report.corank;
    }
    return report;
}

}  // namespace netdyn
