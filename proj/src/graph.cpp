#include "netdyn/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "netdyn/rational.hpp"

namespace netdyn {

Digraph::Digraph(int node_count, std::vector<Edge> edges)
    : n_(node_count), edges_(std::move(edges)) {
    if (n_ < 1) {
        throw ValidationError("node count must be at least 1");
    }
    std::set<std::pair<int, int>> seen;
    for (size_t j = 0; j < edges_.size(); ++j) {
        const Edge& e = edges_[j];
        if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_) {
            throw ValidationError("edge " + std::to_string(j) + " references a node outside [0, " +
                                  std::to_string(n_) + ")");
        }
        if (e.tail == e.head) {
            throw ValidationError("self-loop at node " + std::to_string(e.tail));
        }
        auto key = std::minmax(e.tail, e.head);
        if (!seen.insert({key.first, key.second}).second) {
            throw ValidationError("duplicate unordered pair (" + std::to_string(key.first) + ", " +
                                  std::to_string(key.second) + ")");
        }
    }
}

SignedDigraph::SignedDigraph(Digraph base, std::vector<int> signs)
    : base_(std::move(base)), signs_(std::move(signs)) {
    if (static_cast<int>(signs_.size()) != base_.edge_count()) {
        throw ValidationError("sign list length must equal edge count");
    }
    for (int s : signs_) {
        if (s != 1 && s != -1) {
            throw ValidationError("edge signs must be +1 or -1");
        }
    }
}

WeightedDigraph::WeightedDigraph(Digraph base, std::vector<double> weights)
    : base_(std::move(base)), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != base_.edge_count()) {
        throw ValidationError("weight list length must equal edge count");
    }
}

WeightedDigraph::WeightedDigraph(const SignedDigraph& s)
    : base_(s.base()), weights_(s.signs().begin(), s.signs().end()) {}

TwoLevelNetwork::TwoLevelNetwork(Digraph agents, Digraph groups, std::vector<int> membership)
    : agents_(std::move(agents)), groups_(std::move(groups)), membership_(std::move(membership)) {
    const int n = agents_.node_count();
    const int p = groups_.node_count();
    if (static_cast<int>(membership_.size()) != n) {
        throw ValidationError("membership must assign every agent to a group");
    }
    group_sizes_.assign(p, 0);
    for (int i = 0; i < n; ++i) {
        const int g = membership_[static_cast<size_t>(i)];
        if (g < 0 || g >= p) {
            throw ValidationError("agent " + std::to_string(i) + " assigned to group outside [0, " +
                                  std::to_string(p) + ")");
        }
        ++group_sizes_[static_cast<size_t>(g)];
    }
    for (int j = 0; j < p; ++j) {
        if (group_sizes_[static_cast<size_t>(j)] == 0) {
            throw ValidationError("group " + std::to_string(j) + " is empty");
        }
    }
}

Eigen::MatrixXd incidence_matrix(const Digraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.node_count(), g.edge_count());
    for (int j = 0; j < g.edge_count(); ++j) {
        a(g.edge(j).tail, j) = 1.0;
        a(g.edge(j).head, j) = -1.0;
    }
    return a;
}

Eigen::MatrixXd reduced_incidence(const Digraph& g, int drop_node) {
    if (drop_node < 0 || drop_node >= g.node_count()) {
        throw ValidationError("drop node out of range");
    }
    if (!is_connected(g)) {
        throw NotConnectedError();
    }
    const Eigen::MatrixXd a = incidence_matrix(g);
    Eigen::MatrixXd r(g.node_count() - 1, g.edge_count());
    int out = 0;
    for (int i = 0; i < g.node_count(); ++i) {
        if (i != drop_node) {
            r.row(out++) = a.row(i);
        }
    }
    return r;
}

bool is_connected(const Digraph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const Edge& e : g.edges()) {
        adj[static_cast<size_t>(e.tail)].push_back(e.head);
        adj[static_cast<size_t>(e.head)].push_back(e.tail);
    }
    std::vector<bool> visited(static_cast<size_t>(n), false);
    std::queue<int> frontier;
    frontier.push(0);
    visited[0] = true;
    int reached = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int v : adj[static_cast<size_t>(u)]) {
            if (!visited[static_cast<size_t>(v)]) {
                visited[static_cast<size_t>(v)] = true;
                ++reached;
                frontier.push(v);
            }
        }
    }
    return reached == n;
}

mpz_class tree_count(const Digraph& g) {
    const int n = g.node_count();
    if (n == 1) {
        return 1;
    }
    if (!is_connected(g)) {
        return 0;
    }
    // Matrix-Tree: determinant of the reduced (unweighted) Laplacian.
    RationalMatrix lap(n - 1, n - 1);
    for (const Edge& e : g.edges()) {
        const int ends[2] = {e.tail, e.head};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                if (ends[a] < n - 1 && ends[b] < n - 1) {
                    lap(ends[a], ends[b]) += (a == b) ? 1 : -1;
                }
            }
        }
    }
    Rational det = lap.determinant();
    return det.get_num();  // integer-valued by construction
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<size_t>(a)] = b;
        return true;
    }
};

void enumerate_rec(const Digraph& g, int next_edge, int chosen, DisjointSet& dsu,
                   std::vector<int>& current, std::vector<SpanningTree>& out) {
    const int n = g.node_count();
    const int m = g.edge_count();
    if (chosen == n - 1) {
        out.push_back(SpanningTree{current});
        return;
    }
    // Not enough edges left to finish a tree.
    if (m - next_edge < (n - 1) - chosen) {
        return;
    }
    const Edge& e = g.edge(next_edge);
    DisjointSet saved = dsu;
    if (dsu.unite(e.tail, e.head)) {
        current.push_back(next_edge);
        enumerate_rec(g, next_edge + 1, chosen + 1, dsu, current, out);
        current.pop_back();
        dsu = saved;
    }
    enumerate_rec(g, next_edge + 1, chosen, dsu, current, out);
}

}  // namespace

std::vector<SpanningTree> enumerate_spanning_trees(const Digraph& g, std::int64_t cap) {
    if (!is_connected(g)) {
        throw NotConnectedError();
    }
    const mpz_class count = tree_count(g);
    if (count > cap) {
        throw CapExceededError(count.get_str(), cap);
    }
    std::vector<SpanningTree> trees;
    if (g.node_count() == 1) {
        trees.push_back(SpanningTree{{}});
        return trees;
    }
    DisjointSet dsu(g.node_count());
    std::vector<int> current;
    enumerate_rec(g, 0, 0, dsu, current, trees);
    return trees;
}

Eigen::MatrixXd group_incidence(const TwoLevelNetwork& t) {
    Eigen::MatrixXd ah = Eigen::MatrixXd::Zero(t.agent_count(), t.group_count());
    for (int i = 0; i < t.agent_count(); ++i) {
        ah(i, t.group_of(i)) = 1.0;
    }
    return ah;
}

}  // namespace netdyn
