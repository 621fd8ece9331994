#include "bnec/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace bnec {

using nlohmann::json;

const Edge& NetworkGraph::edge(const std::string& id) const {
    for (const Edge& e : edges)
        if (e.id == id) return e;
    throw Error("unknown edge id '" + id + "'");
}

bool NetworkGraph::has_node(const std::string& id) const {
    return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

bool is_virtual_id(const std::string& id) { return !id.empty() && id[0] == '$'; }

namespace {

std::map<std::string, int> node_index(const NetworkGraph& g) {
    std::map<std::string, int> m;
    for (int i = 0; i < int(g.nodes.size()); ++i) m[g.nodes[i]] = i;
    return m;
}

// Topological node order; throws CycleDetected. Ties resolved by node
// declaration order so runs are deterministic.
std::vector<int> topo_order(const NetworkGraph& g, const std::map<std::string, int>& ni) {
    int n = int(g.nodes.size());
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> succ(n);
    for (const Edge& e : g.edges) {
        succ[ni.at(e.from)].push_back(ni.at(e.to));
        ++indeg[ni.at(e.to)];
    }
    std::vector<int> pos(n, -1), ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int filled = 0;
    while (!ready.empty()) {
        int v = ready.front();
        ready.erase(ready.begin());
        pos[v] = filled++;
        for (int w : succ[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    if (filled != n) throw CycleDetected("network graph contains a directed cycle");
    return pos;
}

std::vector<bool> reachable_from(const NetworkGraph& g, const std::map<std::string, int>& ni, int start) {
    std::vector<bool> seen(g.nodes.size(), false);
    std::deque<int> work{start};
    seen[start] = true;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (const Edge& e : g.edges)
            if (ni.at(e.from) == v && !seen[ni.at(e.to)]) {
                seen[ni.at(e.to)] = true;
                work.push_back(ni.at(e.to));
            }
    }
    return seen;
}

std::vector<bool> reaches_node(const NetworkGraph& g, const std::map<std::string, int>& ni, int target) {
    std::vector<bool> seen(g.nodes.size(), false);
    std::deque<int> work{target};
    seen[target] = true;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (const Edge& e : g.edges)
            if (ni.at(e.to) == v && !seen[ni.at(e.from)]) {
                seen[ni.at(e.from)] = true;
                work.push_back(ni.at(e.from));
            }
    }
    return seen;
}

void validate(NetworkGraph& g) {
    if (g.nodes.empty()) throw ParseError("network has no nodes");
    std::map<std::string, int> ni;
    for (const std::string& v : g.nodes) {
        if (is_virtual_id(v)) throw ParseError("node id '" + v + "' uses the reserved '$' prefix");
        if (!ni.emplace(v, int(ni.size())).second) throw ParseError("duplicate node id '" + v + "'");
    }
    std::map<std::string, bool> edge_ids;
    for (const Edge& e : g.edges) {
        if (is_virtual_id(e.id)) throw ParseError("edge id '" + e.id + "' uses the reserved '$' prefix");
        if (!edge_ids.emplace(e.id, true).second) throw ParseError("duplicate edge id '" + e.id + "'");
        if (!ni.count(e.from) || !ni.count(e.to))
            throw ParseError("edge '" + e.id + "' references an unknown node");
        for (double p : {e.p_err, e.p_ers})
            if (!(p >= 0.0 && p <= 1.0))  // also rejects NaN
                throw BadProbability("edge '" + e.id + "' has a probability outside [0,1]");
    }
    if (!ni.count(g.source)) throw ParseError("source node '" + g.source + "' not declared");
    if (g.receivers.empty()) throw ParseError("network has no receivers");
    topo_order(g, ni);
    std::vector<bool> reach = reachable_from(g, ni, ni.at(g.source));
    for (const std::string& t : g.receivers) {
        if (!ni.count(t)) throw ParseError("receiver '" + t + "' not declared");
        if (!reach[ni.at(t)]) throw UnreachableReceiver("receiver '" + t + "' is unreachable from the source");
    }
}

}  // namespace

NetworkGraph load_network(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid network JSON: ") + e.what());
    }
    NetworkGraph g;
    try {
        for (const auto& n : doc.at("nodes")) g.nodes.push_back(n.get<std::string>());
        for (const auto& je : doc.at("edges")) {
            Edge e;
            e.id = je.at("id").get<std::string>();
            e.from = je.at("from").get<std::string>();
            e.to = je.at("to").get<std::string>();
            e.p_err = je.value("p_err", 0.0);
            e.p_ers = je.value("p_ers", 0.0);
            g.edges.push_back(e);
        }
        g.source = doc.at("source").get<std::string>();
        for (const auto& t : doc.at("receivers")) g.receivers.push_back(t.get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("network document malformed: ") + e.what());
    }
    validate(g);
    return g;
}

NetworkGraph load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open network file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_network(ss.str());
}

EdgeIndexing index_active_edges(const NetworkGraph& g) {
    std::map<std::string, int> ni = node_index(g);
    std::vector<int> pos = topo_order(g, ni);
    std::vector<bool> from_source = reachable_from(g, ni, ni.at(g.source));

    std::vector<std::vector<bool>> to_receiver;
    for (const std::string& t : g.receivers) to_receiver.push_back(reaches_node(g, ni, ni.at(t)));

    // active: start reachable from the source and end on a path to some receiver
    std::vector<int> active;  // positions into g.edges
    for (int e = 0; e < int(g.edges.size()); ++e) {
        if (!from_source[ni.at(g.edges[e].from)]) continue;
        bool feeds = false;
        for (const auto& tr : to_receiver)
            if (tr[ni.at(g.edges[e].to)]) { feeds = true; break; }
        if (feeds) active.push_back(e);
    }
    std::stable_sort(active.begin(), active.end(),
                     [&](int a, int b) { return pos[ni.at(g.edges[a].from)] < pos[ni.at(g.edges[b].from)]; });

    EdgeIndexing idx;
    for (int e : active) {
        idx.index_of[g.edges[e].id] = int(idx.order.size());
        idx.order.push_back(g.edges[e].id);
    }
    idx.in_sets.resize(active.size());
    for (int i = 0; i < int(active.size()); ++i) {
        const Edge& ei = g.edges[active[i]];
        for (int j = 0; j < int(active.size()); ++j)
            if (g.edges[active[j]].to == ei.from) idx.in_sets[i].push_back(j);
    }
    for (int r = 0; r < int(g.receivers.size()); ++r) {
        std::vector<int>& et = idx.receiver_edges[g.receivers[r]];
        for (int i = 0; i < int(active.size()); ++i)
            if (to_receiver[r][ni.at(g.edges[active[i]].to)]) et.push_back(i);
    }
    return idx;
}

NetworkGraph add_virtual_source(const NetworkGraph& g, int edge_count) {
    NetworkGraph a = g;
    a.nodes.insert(a.nodes.begin(), "$s");
    std::vector<Edge> ve;
    for (int i = 1; i <= edge_count; ++i) {
        Edge e;
        e.id = "$v" + std::to_string(i);
        e.from = "$s";
        e.to = g.source;
        e.is_virtual = true;
        ve.push_back(e);
    }
    a.edges.insert(a.edges.begin(), ve.begin(), ve.end());
    a.source = "$s";
    return a;
}

namespace {

struct FlowNet {
    struct Arc {
        int to, cap, rev;
        int edge;  // original edge position, -1 for reverse arcs
    };
    std::vector<std::vector<Arc>> adj;

    void add(int u, int v, int edge) {
        adj[u].push_back({v, 1, int(adj[v].size()), edge});
        adj[v].push_back({u, 0, int(adj[u].size()) - 1, -1});
    }
};

int max_flow(const NetworkGraph& g, const std::string& t, FlowNet& net) {
    std::map<std::string, int> ni = node_index(g);
    if (!ni.count(t)) throw UnknownReceiver("unknown receiver '" + t + "'");
    int n = int(g.nodes.size());
    net.adj.assign(n, {});
    for (int e = 0; e < int(g.edges.size()); ++e) net.add(ni.at(g.edges[e].from), ni.at(g.edges[e].to), e);
    int s = ni.at(g.source), sink = ni.at(t);
    if (s == sink) return 0;
    int flow = 0;
    while (true) {
        std::vector<std::pair<int, int>> via(n, {-1, -1});  // node -> (prev node, arc idx)
        std::deque<int> work{s};
        via[s] = {s, -1};
        while (!work.empty() && via[sink].first < 0) {
            int v = work.front();
            work.pop_front();
            for (int i = 0; i < int(net.adj[v].size()); ++i) {
                const FlowNet::Arc& a = net.adj[v][i];
                if (a.cap > 0 && via[a.to].first < 0) {
                    via[a.to] = {v, i};
                    work.push_back(a.to);
                }
            }
        }
        if (via[sink].first < 0) break;
        for (int v = sink; v != s;) {
            auto [pv, ai] = via[v];
            FlowNet::Arc& a = net.adj[pv][ai];
            --a.cap;
            ++net.adj[v][a.rev].cap;
            v = pv;
        }
        ++flow;
    }
    return flow;
}

}  // namespace

int min_cut(const NetworkGraph& g, const std::string& t) {
    FlowNet net;
    return max_flow(g, t, net);
}

PathSet edge_disjoint_paths(const NetworkGraph& g, const EdgeIndexing& idx, const std::string& t, int count) {
    FlowNet net;
    int flow = max_flow(g, t, net);
    if (count > flow)
        throw InsufficientCut("requested " + std::to_string(count) + " disjoint paths, min-cut is " +
                              std::to_string(flow));

    std::map<std::string, int> ni = node_index(g);
    // edge position -> carries one unit iff its forward arc is saturated
    std::vector<bool> used(g.edges.size(), false);
    for (const auto& arcs : net.adj)
        for (const auto& a : arcs)
            if (a.edge >= 0 && a.cap == 0) used[a.edge] = true;

    int s = ni.at(g.source), sink = ni.at(t);
    PathSet ps;
    ps.receiver = t;
    for (int p = 0; p < flow; ++p) {
        std::vector<int> path;
        int v = s;
        while (v != sink) {
            int chosen = -1;
            for (int e = 0; e < int(g.edges.size()); ++e)
                if (used[e] && ni.at(g.edges[e].from) == v) { chosen = e; break; }
            if (chosen < 0) throw Error("flow decomposition failed");  // conservation guarantees progress
            used[chosen] = false;
            path.push_back(idx.index_of.at(g.edges[chosen].id));
            v = ni.at(g.edges[chosen].to);
        }
        ps.paths.push_back(path);
    }
    std::sort(ps.paths.begin(), ps.paths.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    ps.paths.resize(count);
    for (const auto& path : ps.paths)
        for (std::size_t i = 1; i < path.size(); ++i) ps.prev[path[i]] = path[i - 1];
    return ps;
}

}  // namespace bnec
