#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "netdyn/errors.hpp"

namespace netdyn {

struct Edge {
    int tail = 0;
    int head = 0;

    bool operator==(const Edge&) const = default;
};

// Simple directed graph: no self-loops, at most one edge per unordered node
// pair (antiparallel edges are rejected), 0-based node indices.
class Digraph {
public:
    Digraph(int node_count, std::vector<Edge> edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int j) const { return edges_[static_cast<size_t>(j)]; }

private:
    int n_;
    std::vector<Edge> edges_;
};

// Digraph with a +1/-1 label per edge.
class SignedDigraph {
public:
    SignedDigraph(Digraph base, std::vector<int> signs);

    const Digraph& base() const { return base_; }
    const std::vector<int>& signs() const { return signs_; }

private:
    Digraph base_;
    std::vector<int> signs_;
};

// Digraph with a real weight per edge (possibly negative); the diagonal of W.
class WeightedDigraph {
public:
    WeightedDigraph(Digraph base, std::vector<double> weights);
    explicit WeightedDigraph(const SignedDigraph& s);

    const Digraph& base() const { return base_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    Digraph base_;
    std::vector<double> weights_;
};

// Agent digraph (V, E), group digraph (H, E_H) and the partition of agents
// into groups. membership[i] is the group of agent i.
class TwoLevelNetwork {
public:
    TwoLevelNetwork(Digraph agents, Digraph groups, std::vector<int> membership);

    const Digraph& agents() const { return agents_; }
    const Digraph& groups() const { return groups_; }
    const std::vector<int>& membership() const { return membership_; }
    const std::vector<int>& group_sizes() const { return group_sizes_; }
    int group_of(int agent) const { return membership_[static_cast<size_t>(agent)]; }
    int agent_count() const { return agents_.node_count(); }
    int group_count() const { return groups_.node_count(); }

private:
    Digraph agents_;
    Digraph groups_;
    std::vector<int> membership_;
    std::vector<int> group_sizes_;
};

// Edge-index set of a spanning tree of its host graph (n-1 indices, sorted).
struct SpanningTree {
    std::vector<int> edge_ids;
};

inline constexpr std::int64_t kDefaultTreeCap = 1'000'000;

// Node-by-edge incidence matrix: +1 where the edge leaves the node, -1 where
// it enters. Columns sum to zero.
Eigen::MatrixXd incidence_matrix(const Digraph& g);

// Incidence matrix with one row removed; full row rank n-1 on connected
// graphs. Throws NotConnectedError otherwise.
Eigen::MatrixXd reduced_incidence(const Digraph& g, int drop_node);

// Connectivity of the underlying undirected graph.
bool is_connected(const Digraph& g);

// Exact spanning-tree count (Matrix-Tree determinant); 0 when disconnected.
mpz_class tree_count(const Digraph& g);

// Exhaustive, duplicate-free enumeration, ordered lexicographically by edge
// index set. Throws NotConnectedError / CapExceededError.
std::vector<SpanningTree> enumerate_spanning_trees(const Digraph& g,
                                                   std::int64_t cap = kDefaultTreeCap);

// Agent-by-group 0/1 membership matrix A_H; each row has exactly one 1 and
// A_H^T A_H = diag(group sizes).
Eigen::MatrixXd group_incidence(const TwoLevelNetwork& t);

}  // namespace netdyn
