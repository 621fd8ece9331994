#pragma once

#include "bnec/analysis.hpp"
#include "bnec/design.hpp"

namespace bnec {

struct CheckResult {
    std::string name;
    bool pass = false;
    long long checked = 0;
    long long failures = 0;
    std::string detail;
};

// Enumerates, per receiver, every noise configuration with alpha erasures and
// beta errors inside E_t satisfying alpha + 2*beta <= delta_t, paired with
// every input vector, and verifies that decode_bd returns the transmitted
// input. Exhaustive: erasure values are materialized by propagation, error
// values sweep all q-1 nonzero symbols.
CheckResult check_singleton_budget(const BnecCode& code);

// Every error vector with <= delta_t errors in E_t and a nonzero coded
// effect must be flagged by detect.
CheckResult check_detection(const BnecCode& code);

// decode_bd against decode_exhaustive on the full singleton-budget sweep,
// and decode_three_stage against decode_bd on the errors-only part.
CheckResult check_decoder_equivalence(const BnecCode& code);

// H^T G = 0, rank(G) = k, syndrome input-independence, gev consistency with
// the local encoding vectors, and edge-by-edge propagation against the
// [G | K] matrix route on random inputs.
CheckResult check_structural(const BnecCode& code, std::uint64_t seed, int samples = 20);

// Lemma-style solution counting on random delta-independent column sets.
CheckResult check_solution_counts(std::uint64_t seed, int instances = 200);

// Monte Carlo detection / correction rates against their closed-form lower
// bounds minus 3 binomial sigma.
CheckResult check_monte_carlo_bounds(const BnecCode& code, const NoiseModel& model, long long trials,
                                     std::uint64_t seed);

std::vector<CheckResult> run_standard_checks(const BnecCode& code, long long trials, std::uint64_t seed);

}  // namespace bnec
