#pragma once

#include <cstdint>

#include "bnec/code.hpp"

namespace bnec {

struct DesignConfig {
    unsigned q = 0;                 // 0 = smallest supported size satisfying the sufficiency bound
    std::uint64_t seed = 0;
    int max_retries_per_edge = 0;   // 0 = 64 * |receivers|
    int max_restarts = 16;          // full-design restarts after an edge exhausts its retries;
                                    // below the sufficiency bound a run can reach a dead end
                                    // that no draw for the current edge repairs
    bool check_up_to_delta = false; // paranoid: verify erasure patterns of every size <= delta
    bool allow_large = false;       // lift the |E^a| <= 24, delta <= 6 enumeration guardrails
};

// Sufficient field size for the randomized design to succeed:
// sum over receivers of C(|E^a|, delta_t) * C(h_t, k), counting real active
// edges only. Callers round up to the next supported prime power.
unsigned long long required_field_size(const NetworkGraph& g, int k);

// Randomized preservative construction of a BNEC(h+, k) code. Deterministic
// for a fixed seed. Throws DesignFailed when an edge exhausts its retry
// budget (field size likely below the sufficiency bound) and InfeasibleRate
// when k exceeds some receiver min-cut.
BnecCode design_code(const NetworkGraph& g, int k, const DesignConfig& cfg = {});

// Deterministic assembly from explicit local encoding vectors; used for
// hand-built codes and tests. `levs` maps edge id -> coefficients over the
// edge's in-set (in index order); `parity` optionally overrides the computed
// H_t per receiver id.
BnecCode assemble_code(const NetworkGraph& g, int k, FieldPtr field,
                       const std::map<std::string, std::vector<Symbol>>& levs,
                       const std::map<std::string, Matrix>& parity = {});

// Parity check matrix of a full-column-rank G_t: h x delta with H^T G = 0.
Matrix parity_check_matrix(const Matrix& g_t);

struct ValidationEntry {
    std::string receiver;
    std::vector<int> pattern;  // noise indices
    bool pass = false;
};

struct ValidationReport {
    bool ok = true;
    int patterns_checked = 0;
    std::vector<ValidationEntry> failures;
    std::vector<std::string> structural_failures;  // parity / rank defects
};

// Checks the erasure-solvability criterion for every receiver and every
// erasure pattern of size delta_t inside E_t, plus H^T G = 0 and
// rank(G) = k.
ValidationReport validate_code(const BnecCode& code);

}  // namespace bnec
