#pragma once

#include <optional>

#include "bnec/channel.hpp"

namespace bnec {

enum class DecodeStatus { clean, corrected, detected_uncorrectable };

struct DecodeOutcome {
    DecodeStatus status = DecodeStatus::detected_uncorrectable;
    std::optional<InputVector> u_hat;                 // clean / corrected
    std::optional<std::vector<Symbol>> coded_error;   // clean (zero) / corrected
    std::optional<std::vector<int>> pattern;          // diagnostic: canonical pattern used

    bool decoded() const { return status != DecodeStatus::detected_uncorrectable; }
};

const char* to_string(DecodeStatus s);

// True iff the syndrome of z is nonzero.
bool detect(const BnecCode& code, const std::string& t, const ReceivedVector& z);

// Bounded-distance look-up tables, one per erasure pattern of size <= delta_t
// inside E_t. Keys are syndromes reduced by the pattern parity matrix of the
// erasure pattern, so the erased edges' unknown values drop out; the stored
// vector is the coded effect of the error part. Entry counts then respect
// the closed-form table-size bound for each pattern.
struct BdPatternTable {
    std::vector<int> pattern;  // sorted noise indices
    Matrix reducer;            // pattern parity of the erasure pattern (delta x dhat)
    std::map<std::vector<Symbol>, std::vector<Symbol>> entries;  // reduced syndrome -> coded error part
};

struct BdTable {
    std::map<std::vector<int>, BdPatternTable> by_pattern;
    std::size_t table_count() const { return by_pattern.size(); }
};

// Enumerates, for every erasure pattern of size alpha <= delta_t, all error
// parts of weight <= floor((delta_t - alpha)/2) in E_t. Throws CodeDefect if
// two entries with the same key have coded effects that do not agree modulo
// the erasure columns' span.
BdTable build_bd_tables(const BnecCode& code, const std::string& t);

// Three-step syndrome decoding: reject oversize erasure sets, look up the
// reduced syndrome, then solve jointly for the input and the erasure values.
DecodeOutcome decode_bd(const BnecCode& code, const std::string& t, const ReceivedVector& z,
                        const BdTable& tables);

// Errors-only three-stage decoding: zero-syndrome accept, error-pattern
// search over patterns of size floor(delta_t/2), then error-value solve.
DecodeOutcome decode_three_stage(const BnecCode& code, const std::string& t, const ReceivedVector& z);

// Ground-truth decoder: enumerates every noise configuration inside the
// correctable budget (erasure positions fixed to the known set) and returns
// the unique consistent input. Throws Ambiguous if two distinct inputs
// explain z within budget, which a valid code never allows.
DecodeOutcome decode_exhaustive(const BnecCode& code, const std::string& t, const ReceivedVector& z);

// True iff the K_t column spans of the two patterns coincide.
bool patterns_equivalent(const BnecCode& code, const std::string& t, const std::vector<int>& phi1,
                         const std::vector<int>& phi2);

// Probability of an errors-only noise vector: product of p_err(l)/(q-1) over
// errored edges and (1 - p_err(l)) over clean edges, so that the total mass
// over all error vectors is 1.
double error_vector_probability(const NoiseModel& model, const NoiseVector& e);

// Mass of a coded error vector: sum of error_vector_probability over the
// error vectors supported in E_t that map to c, truncated at hamming weight
// weight_cap. Edges outside E_t never influence receiver t and are
// marginalized out exactly. Terms accumulate in the canonical enumeration
// order (weight ascending, support lexicographic over E_t, values counting
// up), which pins the floating-point result bit for bit.
double coded_error_probability(const BnecCode& code, const std::string& t, const std::vector<Symbol>& c,
                               const NoiseModel& model, int weight_cap);

// Complete ML look-up table: for every reachable syndrome, the coded error
// vector maximizing the truncated posterior mass over explanations of weight
// <= delta_t. Ties break toward the smaller minimum explaining weight, then
// the lexicographically smallest vector.
struct MlEntry {
    std::vector<Symbol> c;
    double prob = 0.0;
    int min_weight = 0;
};

struct MlTable {
    std::map<std::vector<Symbol>, MlEntry> by_syndrome;
};

MlTable build_ml_table(const BnecCode& code, const std::string& t, const NoiseModel& model,
                       bool allow_large = false);

DecodeOutcome decode_complete_ml_basic(const BnecCode& code, const std::string& t, const ReceivedVector& z,
                                       const MlTable& table);

// Table-free variant: checks error patterns of size delta_t - 1 with the
// pattern parity indicator, falls back to the most likely size-delta_t
// pattern, and returns the candidate maximizing the coded error mass.
DecodeOutcome decode_complete_ml_threestage(const BnecCode& code, const std::string& t,
                                            const ReceivedVector& z, const NoiseModel& model);

}  // namespace bnec
