#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bnec/errors.hpp"

namespace bnec {

struct Edge {
    std::string id;
    std::string from, to;
    double p_err = 0.0;
    double p_ers = 0.0;
    bool is_virtual = false;  // noise-free source-augmentation edge
};

// Directed acyclic multicast network with a single source and a receiver set.
// Immutable after construction.
struct NetworkGraph {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;  // declaration order (ties in topological edge order)
    std::string source;
    std::vector<std::string> receivers;

    const Edge& edge(const std::string& id) const;
    bool has_node(const std::string& id) const;
};

// Parses and validates the network JSON document. Throws ParseError,
// CycleDetected, UnreachableReceiver, BadProbability.
NetworkGraph load_network(const std::string& document);
NetworkGraph load_network_file(const std::string& path);

// Topologically consistent numbering of the active edges: if a path runs from
// end(l_i) to start(l_j) then l_j gets a larger index. Indices are 0-based in
// memory; file formats use 1-based values.
struct EdgeIndexing {
    std::vector<std::string> order;                    // position i -> edge id
    std::map<std::string, int> index_of;               // edge id -> position
    std::map<std::string, std::vector<int>> receiver_edges;  // receiver -> sorted active-edge indices
    std::vector<std::vector<int>> in_sets;             // per edge: indices of active in-edges

    int size() const { return int(order.size()); }
};

EdgeIndexing index_active_edges(const NetworkGraph& g);

// Returns a copy of g with a virtual node upstream of the source and
// `edge_count` noise-free unit edges into the old source. The virtual edges
// sort first in every edge indexing.
NetworkGraph add_virtual_source(const NetworkGraph& g, int edge_count);
bool is_virtual_id(const std::string& id);

// Max-flow value from the source to t under unit edge capacities.
int min_cut(const NetworkGraph& g, const std::string& t);

// `count` pairwise edge-disjoint source->t paths from a flow decomposition.
struct PathSet {
    std::string receiver;
    std::vector<std::vector<int>> paths;  // edge indices along each path, source first
    std::map<int, int> prev;              // edge index -> predecessor edge index on its path
};

PathSet edge_disjoint_paths(const NetworkGraph& g, const EdgeIndexing& idx, const std::string& t, int count);

}  // namespace bnec
