#include "netdyn/flows.hpp"

#include <cmath>
#include <random>
#include <utility>

namespace netdyn {

EdgeFunction EdgeFunction::linear(double weight) {
    EdgeFunction f;
    f.linear_ = true;
    f.weight_ = weight;
    return f;
}

EdgeFunction EdgeFunction::custom(Scalar value, Scalar derivative) {
    if (!value || !derivative) {
        throw ValidationError("custom edge function requires value and derivative");
    }
    EdgeFunction f;
    f.linear_ = false;
    f.value_ = std::move(value);
    f.derivative_ = std::move(derivative);
    return f;
}

namespace {

// Construction-time audit: the supplied derivative must match a central
// finite difference at 5 seeded probe points to 1e-5 relative.
void audit_derivative(const EdgeFunction& f, int edge_index) {
    if (f.is_linear()) {
        return;
    }
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> probe(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double s = probe(rng);
        const double h = 1e-6 * (1.0 + std::abs(s));
        const double fd = (f.value(s + h) - f.value(s - h)) / (2.0 * h);
        const double claimed = f.derivative(s);
        if (!std::isfinite(fd) || !std::isfinite(claimed)) {
            throw DerivativeUndefinedError(edge_index, "non-finite value at probe");
        }
        const double scale = std::max({1.0, std::abs(fd), std::abs(claimed)});
        if (std::abs(fd - claimed) > 1e-5 * scale) {
            throw DerivativeUndefinedError(edge_index);
        }
    }
}

}  // namespace

PotentialFlow::PotentialFlow(Digraph graph, std::vector<EdgeFunction> edge_functions,
                             std::vector<int> alpha)
    : graph_(std::move(graph)),
      edge_functions_(std::move(edge_functions)),
      alpha_(std::move(alpha)) {
    if (static_cast<int>(edge_functions_.size()) != graph_.edge_count()) {
        throw ValidationError("edge function list length must equal edge count");
    }
    if (alpha_.empty()) {
        alpha_.assign(static_cast<size_t>(graph_.node_count()), 1);
    }
    if (static_cast<int>(alpha_.size()) != graph_.node_count()) {
        throw ValidationError("alpha list length must equal node count");
    }
    for (int a : alpha_) {
        if (a != 0 && a != 1) {
            throw ValidationError("alpha entries must be 0 or 1");
        }
        if (a == 0) {
            all_dynamic_ = false;
        }
    }
    for (int j = 0; j < graph_.edge_count(); ++j) {
        audit_derivative(edge_functions_[static_cast<size_t>(j)], j);
        if (!edge_functions_[static_cast<size_t>(j)].is_linear()) {
            all_linear_ = false;
        }
    }
}

PotentialFlow PotentialFlow::linear(const WeightedDigraph& w, std::vector<int> alpha) {
    std::vector<EdgeFunction> fs;
    fs.reserve(w.weights().size());
    for (double weight : w.weights()) {
        fs.push_back(EdgeFunction::linear(weight));
    }
    return PotentialFlow(w.base(), std::move(fs), std::move(alpha));
}

Eigen::VectorXd edge_flows(const PotentialFlow& fl, const Eigen::VectorXd& x) {
    const Digraph& g = fl.graph();
    if (x.size() != g.node_count()) {
        throw ValidationError("state length must equal node count");
    }
    Eigen::VectorXd u(g.edge_count());
    for (int j = 0; j < g.edge_count(); ++j) {
        const Edge& e = g.edge(j);
        u(j) = fl.edge_functions()[static_cast<size_t>(j)].value(x(e.tail) - x(e.head));
    }
    return u;
}

Eigen::VectorXd rhs(const PotentialFlow& fl, const Eigen::VectorXd& x) {
    const Digraph& g = fl.graph();
    const Eigen::VectorXd u = edge_flows(fl, x);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(g.node_count());
    for (int j = 0; j < g.edge_count(); ++j) {
        const Edge& e = g.edge(j);
        f(e.tail) -= u(j);
        f(e.head) += u(j);
    }
    return f;
}

Eigen::MatrixXd jacobian(const PotentialFlow& fl, const Eigen::VectorXd& x) {
    const Digraph& g = fl.graph();
    if (x.size() != g.node_count()) {
        throw ValidationError("state length must equal node count");
    }
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(g.node_count(), g.node_count());
    for (int j = 0; j < g.edge_count(); ++j) {
        const Edge& e = g.edge(j);
        const double w = fl.edge_functions()[static_cast<size_t>(j)].derivative(x(e.tail) - x(e.head));
        if (!std::isfinite(w)) {
            throw DerivativeUndefinedError(j, "non-finite derivative at evaluation point");
        }
        // -A W A^T assembled edge by edge.
        jac(e.tail, e.tail) -= w;
        jac(e.head, e.head) -= w;
        jac(e.tail, e.head) += w;
        jac(e.head, e.tail) += w;
    }
    return jac;
}

Eigen::MatrixXd laplacian(const Digraph& g, const std::vector<double>& weights) {
    if (!weights.empty() && static_cast<int>(weights.size()) != g.edge_count()) {
        throw ValidationError("weight list length must equal edge count");
    }
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.node_count(), g.node_count());
    for (int j = 0; j < g.edge_count(); ++j) {
        const Edge& e = g.edge(j);
        const double w = weights.empty() ? 1.0 : weights[static_cast<size_t>(j)];
        lap(e.tail, e.tail) += w;
        lap(e.head, e.head) += w;
        lap(e.tail, e.head) -= w;
        lap(e.head, e.tail) -= w;
    }
    return lap;
}

}  // namespace netdyn
