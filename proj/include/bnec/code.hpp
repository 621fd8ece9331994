#pragma once

#include <map>
#include <string>
#include <vector>

#include "bnec/matrix.hpp"
#include "bnec/network.hpp"

namespace bnec {

// One edge of the designed code, in topological index order. Virtual
// source-augmentation edges come first and carry no noise slot; real active
// edge i (0-based over the real edges) owns noise slot i.
struct CodeEdge {
    std::string id;
    std::string from, to;
    double p_err = 0.0;
    double p_ers = 0.0;
    bool is_virtual = false;
    std::vector<int> in_edges;   // indices (into BnecCode::edges) of active in-edges
    std::vector<Symbol> lev;     // local encoding coefficients, aligned with in_edges
    std::vector<Symbol> gev;     // k input coords + one noise coord per real edge
};

// Receiver-side view: the rows of [G | K] are the global encoding vectors of
// the receiver's input edges (the terminal edges of its disjoint paths).
struct ReceiverCode {
    std::string id;
    int h = 0;       // min-cut / number of input symbols
    int delta = 0;   // h - k redundancy
    std::vector<int> input_edges;   // indices into BnecCode::edges, one per row
    std::vector<int> active_edges;  // sorted noise indices of E_t (real edges only)
    Matrix G;  // h x k   data transformation
    Matrix K;  // h x n   noise transformation
    Matrix H;  // h x delta  parity check, H^T G = 0
    Matrix D;  // delta x n  syndrome map, H^T K

    bool in_receiver_set(int noise_idx) const;
};

struct BnecCode {
    FieldPtr field;
    int k = 0;
    int n_virtual = 0;
    std::vector<CodeEdge> edges;         // n_virtual + n_real entries, index order
    std::vector<ReceiverCode> receivers;

    int n_real() const { return int(edges.size()) - n_virtual; }
    // noise slot of edge position e (real edges only)
    int noise_index(int e) const { return e - n_virtual; }
    int edge_position(int noise_idx) const { return noise_idx + n_virtual; }

    const ReceiverCode& receiver(const std::string& id) const;
    bool operator==(const BnecCode& o) const;
};

}  // namespace bnec
