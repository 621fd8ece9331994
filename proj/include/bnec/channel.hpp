#pragma once

#include <optional>

#include "bnec/codec.hpp"
#include "bnec/rng.hpp"

namespace bnec {

// Per-receiver view of one simulated packet: the erasure positions relevant
// to the receiver (at most delta_t by construction) and K received symbol
// vectors.
struct Packet {
    std::string receiver;
    std::vector<int> header_erasures;        // sorted noise indices, <= delta_t entries
    std::vector<ReceivedVector> payload;     // one entry per symbol time
};

struct PacketSim {
    std::vector<int> erased;                  // packet-level erasure pattern (noise indices)
    std::vector<NoiseVector> symbol_noise;    // per symbol time
    std::map<std::string, Packet> packets;
};

NoiseModel noise_model_from(const BnecCode& code);
NoiseModel noise_model_from(const NetworkGraph& g, const EdgeIndexing& idx, unsigned q);
NoiseModel uniform_noise_model(int edges, unsigned q, double p_err, double p_ers = 0.0);

// One channel realization: per edge independently, erasure with p_ers and an
// additive error with p_err, uniform over the q-1 nonzero values. Error and
// erasure stages are independent; on an erased edge the erasure wins and the
// output is zero.
NoiseVector sample_noise(const NoiseModel& model, const Field& field, Rng& rng);
NoiseVector sample_noise(const NetworkGraph& g, const EdgeIndexing& idx, const Field& field, Rng& rng);

// Simulates one packet: a single erasure pattern for the whole packet and an
// independent error realization per symbol time. Stream split rule: the
// erasure draw uses split(seed, {0}), the errors of symbol s use
// split(seed, {1, s}). Throws HeaderOverflow when more than delta_t erasures
// land inside some receiver's edge set.
PacketSim simulate_packet(const BnecCode& code, const std::vector<InputVector>& payload, std::uint64_t seed,
                          const std::optional<std::vector<int>>& forced_erasures = std::nullopt);

}  // namespace bnec
