#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netdyn/dae.hpp"
#include "netdyn/flows.hpp"
#include "netdyn/graph.hpp"

namespace netdyn {

struct NetworkFileEdge {
    int tail = 0;  // 0-based after parsing
    int head = 0;
    std::optional<double> weight;
    std::optional<int> sign;

    bool operator==(const NetworkFileEdge&) const = default;
};

// Parsed form of the JSON network document. Node references in the file are
// 1-based indices (when "nodes" is a count) or labels (when "nodes" is a
// label list); they are resolved to 0-based indices here.
struct NetworkFile {
    std::vector<std::string> labels;
    std::vector<NetworkFileEdge> edges;
    std::vector<int> alpha;                // empty when absent (all dynamic)
    std::optional<int> type_one_count;
    std::vector<std::vector<int>> groups;  // empty when absent
    std::vector<Edge> group_edges;

    bool operator==(const NetworkFile&) const = default;

    static NetworkFile parse(const std::string& text);
    static NetworkFile load(const std::string& path);
    std::string serialize() const;

    int node_count() const { return static_cast<int>(labels.size()); }
    bool has_groups() const { return !groups.empty(); }

    Digraph digraph() const;
    WeightedDigraph weighted() const;  // default weight 1, sign read as ±1 weight
    SignedDigraph signed_digraph() const;
    PotentialFlow flow() const;  // linear flow with the file's weights and alpha
    HeterogeneousNetwork heterogeneous() const;
    TwoLevelNetwork two_level() const;
};

}  // namespace netdyn
