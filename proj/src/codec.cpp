#include "bnec/codec.hpp"

namespace bnec {

PropagateResult propagate(const BnecCode& code, const InputVector& u, const NoiseVector& noise) {
    const Field& f = *code.field;
    if (int(u.size()) != code.k) throw DimensionMismatch("input vector length != k");
    if (int(noise.errors.size()) != code.n_real())
        throw DimensionMismatch("noise vector length != number of real active edges");

    PropagateResult res;
    res.edge_symbols.assign(code.edges.size(), 0);
    res.effective_noise.assign(code.n_real(), 0);

    for (int pos = 0; pos < int(code.edges.size()); ++pos) {
        const CodeEdge& e = code.edges[pos];
        if (e.is_virtual) {
            Symbol y = 0;
            for (int c = 0; c < code.k; ++c) y = f.add(y, f.mul(e.gev[c], u[c]));
            res.edge_symbols[pos] = y;
            continue;
        }
        int ni = code.noise_index(pos);
        Symbol incoming = 0;
        for (std::size_t j = 0; j < e.in_edges.size(); ++j)
            incoming = f.add(incoming, f.mul(e.lev[j], res.edge_symbols[e.in_edges[j]]));
        if (noise.is_erased(ni)) {
            res.edge_symbols[pos] = 0;
            res.effective_noise[ni] = f.neg(incoming);
        } else {
            res.edge_symbols[pos] = f.add(incoming, noise.errors[ni]);
            res.effective_noise[ni] = noise.errors[ni];
        }
    }

    for (const ReceiverCode& rc : code.receivers) {
        ReceivedVector z;
        z.receiver = rc.id;
        z.values.reserve(rc.h);
        for (int e : rc.input_edges) z.values.push_back(res.edge_symbols[e]);
        for (int ni : noise.erased)
            if (rc.in_receiver_set(ni)) z.known_erasures.push_back(ni);
        res.received.emplace(rc.id, std::move(z));
    }
    return res;
}

Syndrome syndrome_of_values(const BnecCode& code, const std::string& t, const std::vector<Symbol>& values) {
    const ReceiverCode& rc = code.receiver(t);
    if (int(values.size()) != rc.h) throw DimensionMismatch("received vector length != h_t");
    return mat_vec(rc.H.transposed(), values);
}

Syndrome syndrome(const BnecCode& code, const std::string& t, const ReceivedVector& z) {
    return syndrome_of_values(code, t, z.values);
}

Matrix pattern_parity(const BnecCode& code, const std::string& t, const std::vector<int>& phi) {
    const ReceiverCode& rc = code.receiver(t);
    // dual of the column span: nullspace of (D^phi)^T
    return nullspace_basis(rc.D.select_cols(phi).transposed());
}

InputVector recover_input(const BnecCode& code, const std::string& t, const std::vector<Symbol>& corrected) {
    const ReceiverCode& rc = code.receiver(t);
    SolveResult sr = solve_linear(rc.G, corrected);
    if (sr.kind != SolveResult::Kind::unique)
        throw NotInCodeSpace("corrected vector is not in the code space of receiver '" + t + "'");
    return sr.solution;
}

}  // namespace bnec
