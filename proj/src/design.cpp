#include "bnec/design.hpp"

#include <algorithm>

#include "bnec/combin.hpp"
#include "bnec/rng.hpp"

namespace bnec {

bool ReceiverCode::in_receiver_set(int noise_idx) const {
    return std::binary_search(active_edges.begin(), active_edges.end(), noise_idx);
}

const ReceiverCode& BnecCode::receiver(const std::string& id) const {
    for (const ReceiverCode& r : receivers)
        if (r.id == id) return r;
    throw UnknownReceiver("unknown receiver '" + id + "'");
}

bool BnecCode::operator==(const BnecCode& o) const {
    if (k != o.k || n_virtual != o.n_virtual || edges.size() != o.edges.size() ||
        receivers.size() != o.receivers.size() || field->q() != o.field->q() ||
        field->generator_poly() != o.field->generator_poly())
        return false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const CodeEdge &a = edges[i], &b = o.edges[i];
        if (a.id != b.id || a.from != b.from || a.to != b.to || a.p_err != b.p_err || a.p_ers != b.p_ers ||
            a.is_virtual != b.is_virtual || a.in_edges != b.in_edges || a.lev != b.lev || a.gev != b.gev)
            return false;
    }
    for (std::size_t i = 0; i < receivers.size(); ++i) {
        const ReceiverCode &a = receivers[i], &b = o.receivers[i];
        if (a.id != b.id || a.h != b.h || a.delta != b.delta || a.input_edges != b.input_edges ||
            a.active_edges != b.active_edges || !(a.G == b.G) || !(a.K == b.K) || !(a.H == b.H) ||
            !(a.D == b.D))
            return false;
    }
    return true;
}

unsigned long long required_field_size(const NetworkGraph& g, int k) {
    EdgeIndexing idx = index_active_edges(g);
    unsigned long long total = 0;
    for (const std::string& t : g.receivers) {
        int h = min_cut(g, t);
        if (k > h)
            throw KTooLarge("rate k=" + std::to_string(k) + " exceeds min-cut " + std::to_string(h) +
                            " of receiver '" + t + "'");
        total += binomial(idx.size(), h - k) * binomial(h, k);
    }
    return total;
}

Matrix parity_check_matrix(const Matrix& g_t) {
    int k = g_t.cols();
    if (rank(g_t) < k) throw RankDeficient("data transformation matrix is rank deficient");
    return nullspace_basis(g_t.transposed());  // h x (h - k), columns span the dual space
}

namespace {

constexpr int kMaxRealEdges = 24;
constexpr int kMaxDelta = 6;

// Seed rows for the virtual edges: Vandermonde rows over distinct field
// elements, every k-subset of which is independent (needs q >= count). For
// k = 1 the all-ones seed works at any field size.
std::vector<std::vector<Symbol>> seed_rows(const Field& f, int count, int k) {
    std::vector<std::vector<Symbol>> rows(count, std::vector<Symbol>(k, 0));
    if (k == 1) {
        for (auto& r : rows) r[0] = 1;
        return rows;
    }
    if (unsigned(count) > f.q())
        throw GuardrailExceeded("field size " + std::to_string(f.q()) +
                                " is below the max min-cut " + std::to_string(count) +
                                "; no k-independent seed rows");
    for (int i = 0; i < count; ++i) {
        Symbol a = Symbol(i);
        Symbol v = 1;
        for (int j = 0; j < k; ++j) {
            rows[i][j] = v;
            v = f.mul(v, a);
        }
    }
    return rows;
}

struct ReceiverState {
    std::string id;
    int h = 0, delta = 0;
    std::vector<int> frontier;            // edge positions, one per path row
    std::map<int, int> row_of;            // edge position -> row
    std::map<int, int> prev;              // from PathSet
    std::vector<int> et_noise;            // sorted E_t noise indices
    std::vector<std::vector<int>> patterns;  // erasure patterns to verify (noise indices)
    Matrix G, K;
};

struct Builder {
    const NetworkGraph& plain;
    int k;
    FieldPtr field;
    NetworkGraph aug;
    EdgeIndexing idx;
    int n_virtual = 0;
    int n_real = 0;
    std::vector<std::vector<Symbol>> gev;       // per edge position
    std::vector<std::vector<int>> users;        // edge position -> receiver ordinals on whose path it lies
    std::vector<ReceiverState> recv;

    Builder(const NetworkGraph& g, int k_, FieldPtr f, bool build_patterns, bool up_to_delta, bool allow_large)
        : plain(g), k(k_), field(std::move(f)) {
        std::vector<int> hs;
        int h_max = 0;
        for (const std::string& t : g.receivers) {
            int h = min_cut(g, t);
            if (k > h)
                throw InfeasibleRate("rate k=" + std::to_string(k) + " exceeds min-cut " +
                                     std::to_string(h) + " of receiver '" + t + "'");
            hs.push_back(h);
            h_max = std::max(h_max, h);
        }
        aug = add_virtual_source(g, h_max);
        idx = index_active_edges(aug);
        n_virtual = h_max;
        n_real = idx.size() - h_max;

        int delta_max = 0;
        for (std::size_t r = 0; r < g.receivers.size(); ++r) delta_max = std::max(delta_max, hs[r] - k);
        if (!allow_large && (n_real > kMaxRealEdges || delta_max > kMaxDelta))
            throw GuardrailExceeded("instance too large for pattern enumeration (|E^a|=" +
                                    std::to_string(n_real) + ", delta_max=" + std::to_string(delta_max) +
                                    "); pass allow_large to override");

        gev.assign(idx.size(), {});
        std::vector<std::vector<Symbol>> seeds = seed_rows(*field, h_max, k);
        for (int v = 0; v < h_max; ++v) {
            gev[v].assign(k + n_real, 0);
            std::copy(seeds[v].begin(), seeds[v].end(), gev[v].begin());
        }
        users.assign(idx.size(), {});

        for (std::size_t r = 0; r < g.receivers.size(); ++r) {
            ReceiverState rs;
            rs.id = g.receivers[r];
            rs.h = hs[r];
            rs.delta = hs[r] - k;
            PathSet ps = edge_disjoint_paths(aug, idx, rs.id, rs.h);
            rs.prev = ps.prev;
            for (int row = 0; row < rs.h; ++row) {
                int first = ps.paths[row].front();
                rs.frontier.push_back(first);
                rs.row_of[first] = row;
                for (int e : ps.paths[row]) users[e].push_back(int(r));
            }
            for (int e : idx.receiver_edges.at(rs.id))
                if (e >= n_virtual) rs.et_noise.push_back(e - n_virtual);
            if (build_patterns) {
                int lo = up_to_delta ? 0 : rs.delta;
                for (int size = lo; size <= rs.delta; ++size)
                    for_each_subset(int(rs.et_noise.size()), size, [&](const std::vector<int>& sub) {
                        std::vector<int> phi(sub.size());
                        for (std::size_t i = 0; i < sub.size(); ++i) phi[i] = rs.et_noise[sub[i]];
                        rs.patterns.push_back(std::move(phi));
                    });
            }
            // rows are the gevs of the initial (virtual) frontier edges
            rs.G = Matrix(field, rs.h, k);
            rs.K = Matrix(field, rs.h, n_real);
            for (int row = 0; row < rs.h; ++row) {
                const std::vector<Symbol>& gv = gev[rs.frontier[row]];
                for (int c = 0; c < k; ++c) rs.G.at(row, c) = gv[c];
                for (int c = 0; c < n_real; ++c) rs.K.at(row, c) = gv[k + c];
            }
            recv.push_back(std::move(rs));
        }
    }

    std::vector<Symbol> combine(int pos, const std::vector<Symbol>& lev) const {
        const Field& f = *field;
        std::vector<Symbol> g(k + n_real, 0);
        const std::vector<int>& in = idx.in_sets[pos];
        for (std::size_t j = 0; j < in.size(); ++j) {
            Symbol m = lev[j];
            if (m == 0) continue;
            const std::vector<Symbol>& gin = gev[in[j]];
            for (int c = 0; c < k + n_real; ++c) g[c] = f.add(g[c], f.mul(m, gin[c]));
        }
        g[k + (pos - n_virtual)] = f.add(g[k + (pos - n_virtual)], 1);
        return g;
    }

    // Preservative verification: with the candidate row in place, every
    // erasure pattern's shortened matrix [G | K^phi] must contain
    // k + rank(K^phi) independent rows, i.e. the frontier symbols keep the
    // input solvable when the pattern's edges are erased.
    bool verify_candidate(const ReceiverState& rs, int row, const std::vector<Symbol>& cand) const {
        Matrix G = rs.G, K = rs.K;
        for (int c = 0; c < k; ++c) G.at(row, c) = cand[c];
        for (int c = 0; c < n_real; ++c) K.at(row, c) = cand[k + c];
        for (const std::vector<int>& phi : rs.patterns) {
            Matrix kphi = K.select_cols(phi);
            if (rank(G.hstack(kphi)) != k + rank(kphi)) return false;
        }
        return true;
    }

    void commit(int pos, const std::vector<Symbol>& g) {
        gev[pos] = g;
        for (int r : users[pos]) {
            ReceiverState& rs = recv[r];
            int prev_edge = rs.prev.at(pos);
            int row = rs.row_of.at(prev_edge);
            rs.row_of.erase(prev_edge);
            rs.row_of[pos] = row;
            rs.frontier[row] = pos;
            for (int c = 0; c < k; ++c) rs.G.at(row, c) = g[c];
            for (int c = 0; c < n_real; ++c) rs.K.at(row, c) = g[k + c];
        }
    }

    BnecCode finish(const std::vector<std::vector<Symbol>>& levs,
                    const std::map<std::string, Matrix>& parity) {
        BnecCode code;
        code.field = field;
        code.k = k;
        code.n_virtual = n_virtual;
        for (int pos = 0; pos < idx.size(); ++pos) {
            const Edge& e = aug.edge(idx.order[pos]);
            CodeEdge ce;
            ce.id = e.id;
            ce.from = e.from;
            ce.to = e.to;
            ce.p_err = e.p_err;
            ce.p_ers = e.p_ers;
            ce.is_virtual = e.is_virtual;
            ce.in_edges = idx.in_sets[pos];
            ce.lev = pos < n_virtual ? std::vector<Symbol>{} : levs[pos - n_virtual];
            ce.gev = gev[pos];
            code.edges.push_back(std::move(ce));
        }
        for (ReceiverState& rs : recv) {
            ReceiverCode rc;
            rc.id = rs.id;
            rc.h = rs.h;
            rc.delta = rs.delta;
            rc.input_edges = rs.frontier;
            rc.active_edges = rs.et_noise;
            rc.G = rs.G;
            rc.K = rs.K;
            auto it = parity.find(rs.id);
            if (it != parity.end()) {
                const Matrix& h = it->second;
                if (h.rows() != rs.h || h.cols() != rs.delta || rank(h) != rs.delta)
                    throw RankDeficient("parity override for '" + rs.id + "' has wrong shape or rank");
                Matrix prod = mat_mul(h.transposed(), rc.G);
                for (int r = 0; r < prod.rows(); ++r)
                    for (int c = 0; c < prod.cols(); ++c)
                        if (prod.at(r, c) != 0)
                            throw RankDeficient("parity override for '" + rs.id + "' does not annihilate G");
                rc.H = h;
            } else {
                rc.H = parity_check_matrix(rc.G);
            }
            rc.D = mat_mul(rc.H.transposed(), rc.K);
            code.receivers.push_back(std::move(rc));
        }
        return code;
    }
};

}  // namespace

BnecCode design_code(const NetworkGraph& g, int k, const DesignConfig& cfg) {
    unsigned q = cfg.q;
    if (q == 0) {
        try {
            q = Field::next_supported_size(required_field_size(g, k));
        } catch (const KTooLarge& e) {
            throw InfeasibleRate(e.what());
        }
    }
    FieldPtr field = Field::make(q);

    int max_retries = cfg.max_retries_per_edge > 0 ? cfg.max_retries_per_edge : 64 * int(g.receivers.size());
    int restarts = std::max(cfg.max_restarts, 1);

    Rng master(cfg.seed);
    for (int attempt_round = 0; attempt_round < restarts; ++attempt_round) {
        Builder b(g, k, field, /*build_patterns=*/true, cfg.check_up_to_delta, cfg.allow_large);
        std::vector<std::vector<Symbol>> levs(b.n_real);
        std::string stuck_edge;
        for (int i = 0; i < b.n_real && stuck_edge.empty(); ++i) {
            int pos = b.n_virtual + i;
            const std::vector<int>& in = b.idx.in_sets[pos];
            Rng stream = master.split({std::uint64_t(attempt_round), std::uint64_t(i)});
            bool done = false;
            for (int attempt = 0; attempt < max_retries && !done; ++attempt) {
                std::vector<Symbol> lev(in.size());
                for (auto& m : lev) m = stream.symbol(*field);
                std::vector<Symbol> cand = b.combine(pos, lev);
                bool ok = true;
                for (int r : b.users[pos]) {
                    const ReceiverState& rs = b.recv[r];
                    if (!b.verify_candidate(rs, rs.row_of.at(rs.prev.at(pos)), cand)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    b.commit(pos, cand);
                    levs[i] = std::move(lev);
                    done = true;
                }
            }
            if (!done) stuck_edge = b.idx.order[pos];
        }
        if (stuck_edge.empty()) return b.finish(levs, {});
        if (attempt_round + 1 == restarts) throw DesignFailed(stuck_edge, max_retries);
    }
    throw DesignFailed("?", max_retries);  // unreachable
}

BnecCode assemble_code(const NetworkGraph& g, int k, FieldPtr field,
                       const std::map<std::string, std::vector<Symbol>>& levs,
                       const std::map<std::string, Matrix>& parity) {
    Builder b(g, k, std::move(field), /*build_patterns=*/false, false, true);
    std::vector<std::vector<Symbol>> lev_list(b.n_real);
    for (int i = 0; i < b.n_real; ++i) {
        int pos = b.n_virtual + i;
        const std::string& id = b.idx.order[pos];
        auto it = levs.find(id);
        if (it == levs.end()) throw Error("assemble_code: no local encoding vector for edge '" + id + "'");
        if (it->second.size() != b.idx.in_sets[pos].size())
            throw DimensionMismatch("assemble_code: lev length mismatch for edge '" + id + "'");
        std::vector<Symbol> cand = b.combine(pos, it->second);
        b.commit(pos, cand);
        lev_list[i] = it->second;
    }
    return b.finish(lev_list, parity);
}

ValidationReport validate_code(const BnecCode& code) {
    ValidationReport rep;
    for (const ReceiverCode& rc : code.receivers) {
        if (rank(rc.G) != code.k) {
            rep.ok = false;
            rep.structural_failures.push_back("receiver '" + rc.id + "': rank(G) != k");
        }
        Matrix prod = mat_mul(rc.H.transposed(), rc.G);
        for (int r = 0; r < prod.rows(); ++r)
            for (int c = 0; c < prod.cols(); ++c)
                if (prod.at(r, c) != 0) {
                    rep.ok = false;
                    rep.structural_failures.push_back("receiver '" + rc.id + "': H^T G != 0");
                    r = prod.rows();
                    break;
                }
        if (rc.delta == 0) continue;  // nothing to erase; rank(G) = k is the whole criterion
        for_each_subset(int(rc.active_edges.size()), rc.delta, [&](const std::vector<int>& sub) {
            std::vector<int> phi(sub.size());
            for (std::size_t i = 0; i < sub.size(); ++i) phi[i] = rc.active_edges[sub[i]];
            Matrix kphi = rc.K.select_cols(phi);
            bool pass = rank(rc.G.hstack(kphi)) == code.k + rank(kphi);
            ++rep.patterns_checked;
            if (!pass) {
                rep.ok = false;
                rep.failures.push_back({rc.id, phi, false});
            }
        });
    }
    return rep;
}

}  // namespace bnec
