#include "bnec/channel.hpp"

namespace bnec {

NoiseModel noise_model_from(const BnecCode& code) {
    NoiseModel m;
    m.q = code.field->q();
    for (const CodeEdge& e : code.edges)
        if (!e.is_virtual) {
            m.p_err.push_back(e.p_err);
            m.p_ers.push_back(e.p_ers);
        }
    return m;
}

NoiseModel noise_model_from(const NetworkGraph& g, const EdgeIndexing& idx, unsigned q) {
    NoiseModel m;
    m.q = q;
    for (const std::string& id : idx.order) {
        const Edge& e = g.edge(id);
        if (e.is_virtual) continue;
        m.p_err.push_back(e.p_err);
        m.p_ers.push_back(e.p_ers);
    }
    return m;
}

NoiseModel uniform_noise_model(int edges, unsigned q, double p_err, double p_ers) {
    NoiseModel m;
    m.q = q;
    m.p_err.assign(edges, p_err);
    m.p_ers.assign(edges, p_ers);
    return m;
}

NoiseVector sample_noise(const NoiseModel& model, const Field& field, Rng& rng) {
    NoiseVector nv;
    nv.errors.assign(model.p_err.size(), 0);
    for (std::size_t i = 0; i < model.p_err.size(); ++i) {
        if (rng.bernoulli(model.p_err[i])) nv.errors[i] = rng.nonzero_symbol(field);
        if (rng.bernoulli(model.p_ers[i])) nv.erased.push_back(int(i));
    }
    return nv;
}

NoiseVector sample_noise(const NetworkGraph& g, const EdgeIndexing& idx, const Field& field, Rng& rng) {
    NoiseModel m = noise_model_from(g, idx, field.q());
    return sample_noise(m, field, rng);
}

PacketSim simulate_packet(const BnecCode& code, const std::vector<InputVector>& payload, std::uint64_t seed,
                          const std::optional<std::vector<int>>& forced_erasures) {
    if (payload.empty()) throw Error("packet payload must contain at least one symbol vector");
    const Field& field = *code.field;
    NoiseModel model = noise_model_from(code);
    Rng master(seed);

    PacketSim sim;
    if (forced_erasures) {
        sim.erased = *forced_erasures;
    } else {
        Rng ers = master.split({0});
        for (std::size_t i = 0; i < model.p_ers.size(); ++i)
            if (ers.bernoulli(model.p_ers[i])) sim.erased.push_back(int(i));
    }

    // header budget check before any symbol is produced
    for (const ReceiverCode& rc : code.receivers) {
        int inside = 0;
        for (int ni : sim.erased) inside += rc.in_receiver_set(ni);
        if (inside > rc.delta)
            throw HeaderOverflow("receiver '" + rc.id + "': " + std::to_string(inside) +
                                 " erasures exceed the delta_t=" + std::to_string(rc.delta) + " header budget");
    }

    for (const ReceiverCode& rc : code.receivers) {
        Packet p;
        p.receiver = rc.id;
        for (int ni : sim.erased)
            if (rc.in_receiver_set(ni)) p.header_erasures.push_back(ni);
        sim.packets.emplace(rc.id, std::move(p));
    }

    for (std::size_t s = 0; s < payload.size(); ++s) {
        Rng err = master.split({1, s});
        NoiseVector nv;
        nv.erased = sim.erased;
        nv.errors.assign(model.p_err.size(), 0);
        for (std::size_t i = 0; i < model.p_err.size(); ++i)
            if (err.bernoulli(model.p_err[i])) nv.errors[i] = err.nonzero_symbol(field);
        PropagateResult pr = propagate(code, payload[s], nv);
        for (auto& [t, z] : pr.received) sim.packets.at(t).payload.push_back(std::move(z));
        sim.symbol_noise.push_back(std::move(nv));
    }
    return sim;
}

}  // namespace bnec
