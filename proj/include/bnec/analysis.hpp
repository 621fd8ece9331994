#pragma once

#include <optional>
#include <string>

#include "bnec/decode.hpp"

namespace bnec {

struct BoundReport {
    enum class Direction { lower_bound, upper_bound, exact };

    std::string formula;
    std::map<std::string, double> parameters;
    std::optional<double> bound;
    std::optional<double> measured;
    std::optional<std::pair<double, double>> ci;  // Wilson 99%
    Direction direction = Direction::lower_bound;
    long long trials = 0;
    bool clamped = false;
    std::string note;
};

// Error detection probability lower bound on a uniform network:
// sum_{i<=delta} C(|E_t|, i) rho1^i (1-rho1)^(|E_t|-i).
double detection_prob_bound(int et, int delta, double rho1);

// General (non-uniform) form of the detection lower bound: the probability
// mass of error vectors with at most delta errored edges inside E_t. Exact
// support enumeration when |E_t| <= 12, Monte Carlo over supports otherwise.
double detection_prob_general(const NoiseModel& model, const std::vector<int>& et, int delta,
                              std::uint64_t seed = 0, long long samples = 200000);

// Bounded-distance correction probability lower bound on a uniform network
// with erasures: independent binomial counts of erasures (a <= delta) and of
// errors (b <= floor((delta-a)/2)) among the remaining edges. With rho2 = 0
// this reduces to the errors-only form.
double bd_correction_bound(int et, int delta, double rho1, double rho2);

// Complete-decoding correction bound: the bounded-distance term plus the
// per-weight improvement for weights floor(delta/2)+1 .. delta-1. The
// improvement factor 1 - C(|E^a|, i) q^(i-delta) is clamped at 0; a bound
// below zero is vacuous, and `clamped` reports when that happened.
double complete_correction_bound(int ea, int et, int delta, double rho1, unsigned q,
                                 bool* clamped = nullptr);

struct TableCounts {
    unsigned long long ncn_phi = 0;   // correctable coded noise vectors for one erasure pattern
    unsigned long long ncn = 0;       // over all erasure patterns
    unsigned long long nrec_phi = 0;  // decodable received vectors for one pattern (q^k factor)
    unsigned long long nrec = 0;
    unsigned long long ns_phi = 0;    // syndromes per pattern (= ncn_phi)
    std::vector<unsigned long long> nerror;  // coded error vectors with <= r errors, r = 0..delta
};

TableCounts table_counts(int et, int delta, unsigned q, int k, int alpha);

// Brute-force count of solutions to sum_i d_i e_i = 0 over F_q^m, where the
// columns of `vectors` (delta x m) form a delta-independent set. Must come
// out as 1 when m <= delta and at most q^(m-delta) otherwise.
unsigned long long lemma1_count(const Matrix& vectors);

std::pair<double, double> wilson_interval(long long successes, long long trials, double z = 2.5758293035489004);

// Samples noise from the model, decodes with the named decoder
// (exhaustive | bd | three-stage | ml-basic | ml-3stage), and reports
// empirical detection / correction rates paired with their closed-form
// bounds when the model is uniform.
std::vector<BoundReport> monte_carlo(const BnecCode& code, const std::string& t, const NoiseModel& model,
                                     const std::string& decoder_id, long long trials, std::uint64_t seed);

}  // namespace bnec
