#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "bnec/design.hpp"
#include "bnec/json_io.hpp"

namespace bnec::test {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string network_path(const std::string& name) {
    return std::string(BNEC_SOURCE_DIR) + "/networks/" + name;
}

inline NetworkGraph three_path() { return load_network_file(network_path("threepath.json")); }
inline NetworkGraph butterfly() { return load_network_file(network_path("butterfly.json")); }
inline NetworkGraph four_path() { return load_network_file(network_path("fourpath.json")); }

// Two receivers fed by three 2-hop relay chains: |E^a| = 12, h_t = 3 each.
inline NetworkGraph two_receiver_chains() {
    return load_network(R"({
      "nodes": ["s","x1","x2","x3","y1","y2","y3","t1","t2"],
      "edges": [
        {"id":"c1","from":"s","to":"x1","p_err":0.05,"p_ers":0.0},
        {"id":"c2","from":"s","to":"x2","p_err":0.05,"p_ers":0.0},
        {"id":"c3","from":"s","to":"x3","p_err":0.05,"p_ers":0.0},
        {"id":"m1","from":"x1","to":"y1","p_err":0.05,"p_ers":0.0},
        {"id":"m2","from":"x2","to":"y2","p_err":0.05,"p_ers":0.0},
        {"id":"m3","from":"x3","to":"y3","p_err":0.05,"p_ers":0.0},
        {"id":"d11","from":"y1","to":"t1","p_err":0.05,"p_ers":0.0},
        {"id":"d21","from":"y2","to":"t1","p_err":0.05,"p_ers":0.0},
        {"id":"d31","from":"y3","to":"t1","p_err":0.05,"p_ers":0.0},
        {"id":"d12","from":"y1","to":"t2","p_err":0.05,"p_ers":0.0},
        {"id":"d22","from":"y2","to":"t2","p_err":0.05,"p_ers":0.0},
        {"id":"d32","from":"y3","to":"t2","p_err":0.05,"p_ers":0.0}
      ],
      "source": "s",
      "receivers": ["t1","t2"]
    })");
}

// The hand-built repetition instance on the 3-path network: G = (1,1,1)^T,
// K columns are unit coordinate vectors pairwise shared by serial edges, and
// H^T = [[1, q-1, 0], [0, 1, q-1]].
inline BnecCode repetition_code(unsigned q = 7) {
    NetworkGraph g = three_path();
    FieldPtr f = Field::make(q);
    std::map<std::string, std::vector<Symbol>> levs = {
        {"e1", {1, 0, 0}}, {"e2", {0, 1, 0}}, {"e3", {0, 0, 1}},
        {"e4", {1}},       {"e5", {1}},       {"e6", {1}},
    };
    Symbol neg1 = f->neg(1);
    Matrix h(f, {{1, 0}, {neg1, 1}, {0, neg1}});
    return assemble_code(g, 1, f, levs, {{"t", h}});
}

// noise index of an edge id within a code
inline int noise_index_of(const BnecCode& code, const std::string& id) {
    for (int pos = 0; pos < int(code.edges.size()); ++pos)
        if (code.edges[pos].id == id) return code.noise_index(pos);
    FAIL("unknown edge id ", id);
    return -1;
}

inline NoiseVector errors_only(const BnecCode& code, std::initializer_list<std::pair<const char*, Symbol>> errs) {
    NoiseVector nv;
    nv.errors.assign(code.n_real(), 0);
    for (const auto& [id, val] : errs) nv.errors[noise_index_of(code, id)] = val;
    return nv;
}

}  // namespace bnec::test
