#include "netdyn/network_file.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace netdyn {

using nlohmann::json;

namespace {

// Resolves a node reference: 1-based index or label string.
int resolve_node(const json& ref, const std::map<std::string, int>& by_label, int n,
                 const char* context) {
    if (ref.is_number_integer()) {
        const int idx = ref.get<int>();
        if (idx < 1 || idx > n) {
            throw ValidationError(std::string(context) + ": node index " + std::to_string(idx) +
                                  " outside [1, " + std::to_string(n) + "]");
        }
        return idx - 1;
    }
    if (ref.is_string()) {
        const auto it = by_label.find(ref.get<std::string>());
        if (it == by_label.end()) {
            throw ValidationError(std::string(context) + ": unknown node label \"" +
                                  ref.get<std::string>() + "\"");
        }
        return it->second;
    }
    throw ValidationError(std::string(context) + ": node reference must be an index or a label");
}

json node_ref(const NetworkFile& f, int idx) { return f.labels[static_cast<size_t>(idx)]; }

}  // namespace

NetworkFile NetworkFile::parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("network file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("network file: top-level value must be an object");
    }

    NetworkFile f;
    if (!doc.contains("nodes")) {
        throw ValidationError("network file: missing \"nodes\"");
    }
    const json& nodes = doc["nodes"];
    if (nodes.is_number_integer()) {
        const int n = nodes.get<int>();
        if (n < 1) {
            throw ValidationError("network file: node count must be at least 1");
        }
        for (int i = 1; i <= n; ++i) {
            f.labels.push_back(std::to_string(i));
        }
    } else if (nodes.is_array()) {
        for (const json& label : nodes) {
            if (!label.is_string()) {
                throw ValidationError("network file: node labels must be strings");
            }
            f.labels.push_back(label.get<std::string>());
        }
        if (f.labels.empty()) {
            throw ValidationError("network file: node label list is empty");
        }
    } else {
        throw ValidationError("network file: \"nodes\" must be a count or a label list");
    }

    std::map<std::string, int> by_label;
    for (size_t i = 0; i < f.labels.size(); ++i) {
        if (!by_label.emplace(f.labels[i], static_cast<int>(i)).second) {
            throw ValidationError("network file: duplicate node label \"" + f.labels[i] + "\"");
        }
    }
    const int n = f.node_count();

    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) {
            throw ValidationError("network file: \"edges\" must be an array");
        }
        for (const json& e : doc["edges"]) {
            if (!e.is_object() || !e.contains("tail") || !e.contains("head")) {
                throw ValidationError("network file: each edge needs \"tail\" and \"head\"");
            }
            NetworkFileEdge edge;
            edge.tail = resolve_node(e["tail"], by_label, n, "edge tail");
            edge.head = resolve_node(e["head"], by_label, n, "edge head");
            if (e.contains("weight") && e.contains("sign")) {
                throw ValidationError("network file: edge carries both weight and sign");
            }
            if (e.contains("weight")) {
                if (!e["weight"].is_number()) {
                    throw ValidationError("network file: edge weight must be a number");
                }
                edge.weight = e["weight"].get<double>();
            }
            if (e.contains("sign")) {
                if (!e["sign"].is_number_integer() ||
                    (e["sign"].get<int>() != 1 && e["sign"].get<int>() != -1)) {
                    throw ValidationError("network file: edge sign must be +1 or -1");
                }
                edge.sign = e["sign"].get<int>();
            }
            f.edges.push_back(edge);
        }
    }

    if (doc.contains("alpha")) {
        if (!doc["alpha"].is_array() || static_cast<int>(doc["alpha"].size()) != n) {
            throw ValidationError("network file: \"alpha\" must list one 0/1 entry per node");
        }
        for (const json& a : doc["alpha"]) {
            if (!a.is_number_integer() || (a.get<int>() != 0 && a.get<int>() != 1)) {
                throw ValidationError("network file: alpha entries must be 0 or 1");
            }
            f.alpha.push_back(a.get<int>());
        }
    }

    if (doc.contains("typeOneCount")) {
        if (!doc["typeOneCount"].is_number_integer()) {
            throw ValidationError("network file: \"typeOneCount\" must be an integer");
        }
        f.type_one_count = doc["typeOneCount"].get<int>();
    }

    if (doc.contains("groups")) {
        if (!doc["groups"].is_array()) {
            throw ValidationError("network file: \"groups\" must be an array of node lists");
        }
        std::vector<bool> assigned(static_cast<size_t>(n), false);
        for (const json& grp : doc["groups"]) {
            if (!grp.is_array() || grp.empty()) {
                throw ValidationError("network file: every group must be a nonempty node list");
            }
            std::vector<int> members;
            for (const json& ref : grp) {
                const int idx = resolve_node(ref, by_label, n, "group member");
                if (assigned[static_cast<size_t>(idx)]) {
                    throw ValidationError("network file: node \"" +
                                          f.labels[static_cast<size_t>(idx)] +
                                          "\" appears in more than one group");
                }
                assigned[static_cast<size_t>(idx)] = true;
                members.push_back(idx);
            }
            f.groups.push_back(std::move(members));
        }
        for (int i = 0; i < n; ++i) {
            if (!assigned[static_cast<size_t>(i)]) {
                throw ValidationError("network file: node \"" + f.labels[static_cast<size_t>(i)] +
                                      "\" belongs to no group (groups must partition the nodes)");
            }
        }
    }

    if (doc.contains("groupEdges")) {
        if (f.groups.empty()) {
            throw ValidationError("network file: \"groupEdges\" requires \"groups\"");
        }
        if (!doc["groupEdges"].is_array()) {
            throw ValidationError("network file: \"groupEdges\" must be an array");
        }
        const int p = static_cast<int>(f.groups.size());
        for (const json& e : doc["groupEdges"]) {
            if (!e.is_object() || !e.contains("tail") || !e.contains("head")) {
                throw ValidationError("network file: each group edge needs \"tail\" and \"head\"");
            }
            if (!e["tail"].is_number_integer() || !e["head"].is_number_integer()) {
                throw ValidationError("network file: group edges use 1-based group indices");
            }
            const int tail = e["tail"].get<int>();
            const int head = e["head"].get<int>();
            if (tail < 1 || tail > p || head < 1 || head > p) {
                throw ValidationError("network file: group edge index outside [1, " +
                                      std::to_string(p) + "]");
            }
            f.group_edges.push_back(Edge{tail - 1, head - 1});
        }
    }

    // Validate graph-level invariants eagerly so errors carry file context.
    f.digraph();
    if (f.has_groups()) {
        f.two_level();
    }
    return f;
}

NetworkFile NetworkFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open network file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string NetworkFile::serialize() const {
    json doc;
    doc["nodes"] = labels;
    json edge_list = json::array();
    for (const NetworkFileEdge& e : edges) {
        json obj;
        obj["tail"] = node_ref(*this, e.tail);
        obj["head"] = node_ref(*this, e.head);
        if (e.weight) {
            obj["weight"] = *e.weight;
        }
        if (e.sign) {
            obj["sign"] = *e.sign;
        }
        edge_list.push_back(obj);
    }
    doc["edges"] = edge_list;
    if (!alpha.empty()) {
        doc["alpha"] = alpha;
    }
    if (type_one_count) {
        doc["typeOneCount"] = *type_one_count;
    }
    if (!groups.empty()) {
        json group_list = json::array();
        for (const std::vector<int>& grp : groups) {
            json members = json::array();
            for (int idx : grp) {
                members.push_back(node_ref(*this, idx));
            }
            group_list.push_back(members);
        }
        doc["groups"] = group_list;
        json ge = json::array();
        for (const Edge& e : group_edges) {
            ge.push_back({{"tail", e.tail + 1}, {"head", e.head + 1}});
        }
        doc["groupEdges"] = ge;
    }
    return doc.dump(2);
}

Digraph NetworkFile::digraph() const {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const NetworkFileEdge& e : edges) {
        es.push_back(Edge{e.tail, e.head});
    }
    return Digraph(node_count(), std::move(es));
}

WeightedDigraph NetworkFile::weighted() const {
    std::vector<double> weights;
    weights.reserve(edges.size());
    for (const NetworkFileEdge& e : edges) {
        if (e.weight) {
            weights.push_back(*e.weight);
        } else if (e.sign) {
            weights.push_back(static_cast<double>(*e.sign));
        } else {
            weights.push_back(1.0);
        }
    }
    return WeightedDigraph(digraph(), std::move(weights));
}

SignedDigraph NetworkFile::signed_digraph() const {
    std::vector<int> signs;
    signs.reserve(edges.size());
    for (size_t j = 0; j < edges.size(); ++j) {
        const NetworkFileEdge& e = edges[j];
        if (e.sign) {
            signs.push_back(*e.sign);
        } else if (!e.weight) {
            signs.push_back(1);
        } else if (*e.weight == 1.0 || *e.weight == -1.0) {
            signs.push_back(static_cast<int>(*e.weight));
        } else {
            throw ValidationError("edge " + std::to_string(j + 1) + " has weight " +
                                  std::to_string(*e.weight) + "; a signed graph needs +1/-1");
        }
    }
    return SignedDigraph(digraph(), std::move(signs));
}

PotentialFlow NetworkFile::flow() const { return PotentialFlow::linear(weighted(), alpha); }

HeterogeneousNetwork NetworkFile::heterogeneous() const {
    if (!type_one_count) {
        throw ModelMismatchError("heterogeneous model requires \"typeOneCount\"");
    }
    return HeterogeneousNetwork(digraph(), *type_one_count);
}

TwoLevelNetwork NetworkFile::two_level() const {
    if (groups.empty()) {
        throw ModelMismatchError("two-level model requires \"groups\"");
    }
    std::vector<int> membership(static_cast<size_t>(node_count()), -1);
    for (size_t j = 0; j < groups.size(); ++j) {
        for (int member : groups[j]) {
            membership[static_cast<size_t>(member)] = static_cast<int>(j);
        }
    }
    Digraph group_graph(static_cast<int>(groups.size()), group_edges);
    return TwoLevelNetwork(digraph(), std::move(group_graph), std::move(membership));
}

}  // namespace netdyn
