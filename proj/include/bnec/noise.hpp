#pragma once

#include <algorithm>
#include <vector>

#include "bnec/field.hpp"

namespace bnec {

// Additive noise realization over the real active edges: per-edge error
// values (0 = clean) plus the set of erased edges. Erasure forces the edge
// output to zero regardless of the error value.
struct NoiseVector {
    std::vector<Symbol> errors;  // length = number of real active edges
    std::vector<int> erased;     // sorted noise indices

    int hamming_weight() const {
        int w = 0;
        for (Symbol e : errors) w += e != 0;
        return w;
    }
    bool is_erased(int noise_idx) const {
        return std::binary_search(erased.begin(), erased.end(), noise_idx);
    }
};

// Per-edge channel parameters, aligned with noise indices.
struct NoiseModel {
    std::vector<double> p_err;
    std::vector<double> p_ers;
    unsigned q = 0;

    bool errors_only() const {
        for (double p : p_ers)
            if (p > 0.0) return false;
        return true;
    }
    bool uniform() const {
        for (double p : p_err)
            if (p != p_err.front()) return false;
        for (double p : p_ers)
            if (p != p_ers.front()) return false;
        return !p_err.empty();
    }
};

}  // namespace bnec
