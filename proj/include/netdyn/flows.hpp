#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "netdyn/graph.hpp"

namespace netdyn {

// Scalar flowrate law on one edge: maps the potential difference across the
// edge to a flowrate. Custom functions carry their own analytic derivative.
class EdgeFunction {
public:
    using Scalar = std::function<double(double)>;

    static EdgeFunction linear(double weight);
    static EdgeFunction custom(Scalar value, Scalar derivative);

    double value(double s) const { return linear_ ? weight_ * s : value_(s); }
    double derivative(double s) const { return linear_ ? weight_ : derivative_(s); }
    bool is_linear() const { return linear_; }
    double linear_weight() const { return weight_; }

private:
    EdgeFunction() = default;
    bool linear_ = true;
    double weight_ = 1.0;
    Scalar value_;
    Scalar derivative_;
};

// Potential-driven flow x' = -A f(A^T x) on a digraph, with per-node alpha
// flags: alpha_i = 1 marks a dynamic (accumulating) node, alpha_i = 0 an
// algebraic one. Custom derivatives are audited against central finite
// differences at construction.
class PotentialFlow {
public:
    PotentialFlow(Digraph graph, std::vector<EdgeFunction> edge_functions,
                  std::vector<int> alpha = {});

    // Linear flow with the weights of w as edge gains.
    static PotentialFlow linear(const WeightedDigraph& w, std::vector<int> alpha = {});

    const Digraph& graph() const { return graph_; }
    const std::vector<EdgeFunction>& edge_functions() const { return edge_functions_; }
    const std::vector<int>& alpha() const { return alpha_; }
    bool all_dynamic() const { return all_dynamic_; }
    bool all_linear() const { return all_linear_; }

private:
    Digraph graph_;
    std::vector<EdgeFunction> edge_functions_;
    std::vector<int> alpha_;
    bool all_dynamic_ = true;
    bool all_linear_ = true;
};

// u_j = f_j((A^T x)_j), the per-edge flowrates at potentials x.
Eigen::VectorXd edge_flows(const PotentialFlow& fl, const Eigen::VectorXd& x);

// F(x) = -A f(A^T x). Rows of algebraic nodes (alpha = 0) are the residuals
// of their constraints 0 = A_i f(A^T x).
Eigen::VectorXd rhs(const PotentialFlow& fl, const Eigen::VectorXd& x);

// F'(x) = -A diag(f_j'((A^T x)_j)) A^T; symmetric.
Eigen::MatrixXd jacobian(const PotentialFlow& fl, const Eigen::VectorXd& x);

// Weighted Laplacian A W A^T (unit weights by default, giving A A^T = D - C).
Eigen::MatrixXd laplacian(const Digraph& g, const std::vector<double>& weights = {});

}  // namespace netdyn
