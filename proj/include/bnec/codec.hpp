#pragma once

#include <map>
#include <string>
#include <vector>

#include "bnec/code.hpp"
#include "bnec/noise.hpp"

namespace bnec {

using InputVector = std::vector<Symbol>;  // k input symbols
using Syndrome = std::vector<Symbol>;     // delta_t entries

struct ReceivedVector {
    std::string receiver;
    std::vector<Symbol> values;     // h_t symbols, one per input edge row
    std::vector<int> known_erasures;  // sorted noise indices of erased edges inside E_t
};

struct PropagateResult {
    std::vector<Symbol> edge_symbols;     // per edge position (virtual + real)
    std::vector<Symbol> effective_noise;  // per noise index; erasures materialized as the
                                          // additive value that zeroes the edge output
    std::map<std::string, ReceivedVector> received;

    const ReceivedVector& at(const std::string& t) const { return received.at(t); }
};

// Edge-by-edge forward propagation of inputs and noise through the local
// encoding vectors. An erased edge outputs zero and its position is carried
// to every downstream receiver whose set E_t contains it.
PropagateResult propagate(const BnecCode& code, const InputVector& u, const NoiseVector& noise);

// s_t = H_t^T z_t; independent of the input vector.
Syndrome syndrome(const BnecCode& code, const std::string& t, const ReceivedVector& z);
Syndrome syndrome_of_values(const BnecCode& code, const std::string& t, const std::vector<Symbol>& values);

// Parity check matrix of the error pattern phi (noise indices): columns span
// the dual of span{D_t columns in phi}; column count = delta_t - rank(D^phi).
Matrix pattern_parity(const BnecCode& code, const std::string& t, const std::vector<int>& phi);

// The unique u with G_t u = corrected; throws NotInCodeSpace otherwise.
InputVector recover_input(const BnecCode& code, const std::string& t, const std::vector<Symbol>& corrected);

}  // namespace bnec
