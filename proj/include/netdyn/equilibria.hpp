#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "netdyn/flows.hpp"
#include "netdyn/graph.hpp"
#include "netdyn/rational.hpp"

namespace netdyn {

// Sum over all spanning trees of the product of tree-edge weights, by
// exhaustive enumeration. Exact; throws NotConnectedError / CapExceededError.
Rational tree_weight_sum_enum(const Digraph& g, const std::vector<Rational>& weights,
                              std::int64_t cap = kDefaultTreeCap);
Rational tree_weight_sum_enum(const WeightedDigraph& g, std::int64_t cap = kDefaultTreeCap);

// The same sum as det(A_r W A_r^T) for a reduced incidence matrix A_r
// (Cauchy-Binet / Matrix-Tree route); independent of the dropped node.
Rational tree_weight_sum_det(const Digraph& g, const std::vector<Rational>& weights,
                             int drop_node = -1);
Rational tree_weight_sum_det(const WeightedDigraph& g, int drop_node = -1);

// Floating-point determinantal route, for weights that are derivative values
// of nonlinear edge functions rather than rational model data.
double tree_weight_sum_det_numeric(const Digraph& g, const std::vector<double>& weights,
                                   int drop_node = -1);

struct SignedTreeCounts {
    std::int64_t positive = 0;  // trees with an even number of negative edges
    std::int64_t negative = 0;
};

// Positive/negative spanning-tree counts of a signed graph; the flow dynamics
// is degenerate (equilibrium dimension > 1) iff the counts coincide.
SignedTreeCounts signed_tree_counts(const SignedDigraph& g, std::int64_t cap = kDefaultTreeCap);

struct EquilibriumReport {
    int jacobian_rank = 0;
    int corank = 0;
    Eigen::MatrixXd kernel_basis;  // orthonormal, one column per kernel vector

    // Tree-weight sums over W_j = f_j'((A^T x*)_j). The exact fields are set
    // when all edge functions are linear (rational model data).
    double tree_weight_sum = 0.0;
    std::optional<Rational> tree_weight_sum_enum;
    std::optional<Rational> tree_weight_sum_det;

    // Whether "sum != 0" was decided exactly or by the numerical threshold
    // |sum| > 1e-9 * sum of |tree weights|.
    bool exact_decision = false;

    bool corank_one_certified = false;

    // Local dimension of the equilibrium set near x*. Certified when the sum
    // is nonzero (dimension 1) or the flow is linear (dimension = corank,
    // globally); otherwise a reported bound, rendered "uncertified(>=k)".
    bool dimension_certified = false;
    int local_dimension = 0;
};

// Theorem 3 check at an equilibrium x*: evaluates the linearization weights,
// runs both tree-weight-sum routes, computes rank/kernel, and cross-checks
// (sum != 0) <=> (corank == 1).
EquilibriumReport corank_one_test(const PotentialFlow& fl, const Eigen::VectorXd& x_star,
                                  std::int64_t cap = kDefaultTreeCap);

}  // namespace netdyn
