#include "bnec/decode.hpp"

#include <algorithm>

#include "bnec/combin.hpp"

namespace bnec {

const char* to_string(DecodeStatus s) {
    switch (s) {
        case DecodeStatus::clean: return "clean";
        case DecodeStatus::corrected: return "corrected";
        case DecodeStatus::detected_uncorrectable: return "detected_uncorrectable";
    }
    return "?";
}

bool detect(const BnecCode& code, const std::string& t, const ReceivedVector& z) {
    return !is_zero(syndrome(code, t, z));
}

namespace {

// Enumerates errors-only noise configurations with support inside `universe`
// (sorted noise indices) of weight lo..hi, in canonical order: weight
// ascending, support lexicographic, values counting up with the last support
// position fastest. fn(support, values).
void for_each_error_config(const std::vector<int>& universe, unsigned q, int lo, int hi,
                           const std::function<void(const std::vector<int>&, const std::vector<Symbol>&)>& fn) {
    for (int w = lo; w <= hi; ++w) {
        for_each_subset(int(universe.size()), w, [&](const std::vector<int>& sub) {
            std::vector<int> support(w);
            for (int i = 0; i < w; ++i) support[i] = universe[sub[i]];
            std::vector<Symbol> vals(w, 1);
            while (true) {
                fn(support, vals);
                int i = w - 1;
                while (i >= 0 && vals[i] == Symbol(q - 1)) --i;
                if (i < 0) break;
                ++vals[i];
                for (int j = i + 1; j < w; ++j) vals[j] = 1;
            }
        });
    }
}

// coded effect of an error part: sum of value * K column
std::vector<Symbol> coded_effect(const ReceiverCode& rc, const Field& f, const std::vector<int>& support,
                                 const std::vector<Symbol>& vals) {
    std::vector<Symbol> c(rc.h, 0);
    for (std::size_t i = 0; i < support.size(); ++i)
        for (int r = 0; r < rc.h; ++r) c[r] = f.add(c[r], f.mul(vals[i], rc.K.at(r, support[i])));
    return c;
}

DecodeOutcome uncorrectable() { return {}; }

DecodeOutcome clean_outcome(const BnecCode& code, const std::string& t, const ReceivedVector& z) {
    DecodeOutcome out;
    out.status = DecodeStatus::clean;
    out.u_hat = recover_input(code, t, z.values);
    out.coded_error = std::vector<Symbol>(z.values.size(), 0);
    return out;
}

}  // namespace

BdTable build_bd_tables(const BnecCode& code, const std::string& t) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    BdTable table;

    for (int alpha = 0; alpha <= rc.delta; ++alpha) {
        for_each_subset(int(rc.active_edges.size()), alpha, [&](const std::vector<int>& sub) {
            BdPatternTable pt;
            pt.pattern.resize(alpha);
            for (int i = 0; i < alpha; ++i) pt.pattern[i] = rc.active_edges[sub[i]];
            pt.reducer = pattern_parity(code, t, pt.pattern);
            Matrix k_phi = rc.K.select_cols(pt.pattern);
            Matrix reducer_t = pt.reducer.transposed();

            std::vector<int> rest;
            for (int e : rc.active_edges)
                if (!std::binary_search(pt.pattern.begin(), pt.pattern.end(), e)) rest.push_back(e);

            int beta = (rc.delta - alpha) / 2;
            for_each_error_config(rest, f.q(), 0, beta, [&](const std::vector<int>& support,
                                                            const std::vector<Symbol>& vals) {
                std::vector<Symbol> c = coded_effect(rc, f, support, vals);
                std::vector<Symbol> key = mat_vec(reducer_t, mat_vec(rc.H.transposed(), c));
                auto [it, inserted] = pt.entries.emplace(std::move(key), c);
                if (!inserted && it->second != c) {
                    // same reduced syndrome: coded effects must agree modulo the
                    // erasure columns' span, otherwise the code is defective
                    std::vector<Symbol> diff = vec_sub(f, c, it->second);
                    if (solve_linear(k_phi, diff).kind == SolveResult::Kind::none)
                        throw CodeDefect("receiver '" + t + "': two correctable error parts share a syndrome");
                }
            });
            table.by_pattern.emplace(pt.pattern, std::move(pt));
        });
    }
    return table;
}

DecodeOutcome decode_bd(const BnecCode& code, const std::string& t, const ReceivedVector& z,
                        const BdTable& tables) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    int alpha = int(z.known_erasures.size());
    if (alpha > rc.delta) return uncorrectable();

    Syndrome s = syndrome(code, t, z);
    if (alpha == 0 && is_zero(s)) return clean_outcome(code, t, z);

    auto pit = tables.by_pattern.find(z.known_erasures);
    if (pit == tables.by_pattern.end()) return uncorrectable();
    const BdPatternTable& pt = pit->second;

    std::vector<Symbol> key = mat_vec(pt.reducer.transposed(), s);
    auto eit = pt.entries.find(key);
    if (eit == pt.entries.end()) return uncorrectable();
    const std::vector<Symbol>& c_err = eit->second;

    // solve [G | K^phi] [u; v] = z - c_err for the input and erasure values
    Matrix sys = rc.G.hstack(rc.K.select_cols(pt.pattern));
    SolveResult sr = solve_linear(sys, vec_sub(f, z.values, c_err));
    if (sr.kind == SolveResult::Kind::none) return uncorrectable();

    DecodeOutcome out;
    out.status = DecodeStatus::corrected;
    out.u_hat = InputVector(sr.solution.begin(), sr.solution.begin() + code.k);
    out.coded_error = vec_sub(f, z.values, mat_vec(rc.G, *out.u_hat));
    out.pattern = pt.pattern;
    return out;
}

DecodeOutcome decode_three_stage(const BnecCode& code, const std::string& t, const ReceivedVector& z) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    if (!z.known_erasures.empty())
        throw ErasuresPresent("three-stage decoding handles errors only");

    // stage 1: error detection
    Syndrome s = syndrome(code, t, z);
    if (is_zero(s)) return clean_outcome(code, t, z);

    // stage 2 + 3: find an accepting error pattern, then solve for values
    int beta = rc.delta / 2;
    std::optional<std::vector<Symbol>> coded;
    std::optional<std::vector<int>> first_pattern;
    for_each_subset(int(rc.active_edges.size()), beta, [&](const std::vector<int>& sub) {
        std::vector<int> phi(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) phi[i] = rc.active_edges[sub[i]];
        Matrix dhat = pattern_parity(code, t, phi);
        if (!is_zero(mat_vec(dhat.transposed(), s))) return;
        Matrix d_phi = rc.D.select_cols(phi);
        SolveResult sr = solve_linear(d_phi, s);
        if (sr.kind == SolveResult::Kind::none) return;  // cannot happen when the indicator passed
        std::vector<Symbol> c(rc.h, 0);
        for (std::size_t i = 0; i < phi.size(); ++i)
            for (int r = 0; r < rc.h; ++r) c[r] = f.add(c[r], f.mul(sr.solution[i], rc.K.at(r, phi[i])));
        if (!coded) {
            coded = c;
            first_pattern = phi;
        } else if (*coded != c) {
            throw CodeDefect("receiver '" + t + "': accepting patterns disagree on the coded error");
        }
    });
    if (!coded) return uncorrectable();

    DecodeOutcome out;
    out.status = DecodeStatus::corrected;
    out.u_hat = recover_input(code, t, vec_sub(f, z.values, *coded));
    out.coded_error = *coded;
    out.pattern = *first_pattern;
    return out;
}

DecodeOutcome decode_exhaustive(const BnecCode& code, const std::string& t, const ReceivedVector& z) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    int alpha = int(z.known_erasures.size());
    if (alpha > rc.delta) return uncorrectable();
    if (alpha == 0 && is_zero(syndrome(code, t, z))) return clean_outcome(code, t, z);

    std::vector<int> rest;
    for (int e : rc.active_edges)
        if (!std::binary_search(z.known_erasures.begin(), z.known_erasures.end(), e)) rest.push_back(e);

    Matrix sys = rc.G.hstack(rc.K.select_cols(z.known_erasures));
    std::optional<InputVector> found;
    int beta = (rc.delta - alpha) / 2;
    for_each_error_config(rest, f.q(), 0, beta,
                          [&](const std::vector<int>& support, const std::vector<Symbol>& vals) {
                              std::vector<Symbol> rhs = vec_sub(f, z.values, coded_effect(rc, f, support, vals));
                              SolveResult sr = solve_linear(sys, rhs);
                              if (sr.kind == SolveResult::Kind::none) return;
                              InputVector u(sr.solution.begin(), sr.solution.begin() + code.k);
                              if (!found)
                                  found = u;
                              else if (*found != u)
                                  throw Ambiguous("receiver '" + t +
                                                  "': two inputs explain the received vector within budget");
                          });
    if (!found) return uncorrectable();

    DecodeOutcome out;
    out.status = DecodeStatus::corrected;
    out.u_hat = *found;
    out.coded_error = vec_sub(f, z.values, mat_vec(rc.G, *found));
    return out;
}

bool patterns_equivalent(const BnecCode& code, const std::string& t, const std::vector<int>& phi1,
                         const std::vector<int>& phi2) {
    const ReceiverCode& rc = code.receiver(t);
    Matrix a = rc.K.select_cols(phi1);
    Matrix b = rc.K.select_cols(phi2);
    int ra = rank(a), rb = rank(b);
    return ra == rb && rank(a.hstack(b)) == ra;
}

double error_vector_probability(const NoiseModel& model, const NoiseVector& e) {
    if (!e.erased.empty()) throw ErasuresPresent("error_vector_probability expects an errors-only vector");
    if (e.errors.size() != model.p_err.size()) throw DimensionMismatch("noise vector / model size mismatch");
    double p = 1.0;
    for (std::size_t i = 0; i < e.errors.size(); ++i)
        p *= e.errors[i] != 0 ? model.p_err[i] / double(model.q - 1) : 1.0 - model.p_err[i];
    return p;
}

namespace {

// probability of an error part over the receiver's edge set E_t; edges
// outside E_t marginalize to a factor of 1
double support_probability(const NoiseModel& model, const std::vector<int>& et,
                           const std::vector<int>& support) {
    double p = 1.0;
    std::size_t si = 0;
    for (int e : et) {
        if (si < support.size() && support[si] == e) {
            p *= model.p_err[e] / double(model.q - 1);
            ++si;
        } else {
            p *= 1.0 - model.p_err[e];
        }
    }
    return p;
}

void check_model(const BnecCode& code, const NoiseModel& model) {
    if (int(model.p_err.size()) != code.n_real() || model.q != code.field->q())
        throw DimensionMismatch("noise model does not match the code");
}

}  // namespace

double coded_error_probability(const BnecCode& code, const std::string& t, const std::vector<Symbol>& c,
                               const NoiseModel& model, int weight_cap) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    check_model(code, model);
    if (weight_cap > int(rc.active_edges.size()))
        throw KTooLarge("weight cap exceeds |E_t|");
    double total = 0.0;
    for_each_error_config(rc.active_edges, f.q(), 0, weight_cap,
                          [&](const std::vector<int>& support, const std::vector<Symbol>& vals) {
                              if (coded_effect(rc, f, support, vals) == c)
                                  total += support_probability(model, rc.active_edges, support);
                          });
    return total;
}

MlTable build_ml_table(const BnecCode& code, const std::string& t, const NoiseModel& model,
                       bool allow_large) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    check_model(code, model);

    double syndromes = 1.0;
    for (int i = 0; i < rc.delta; ++i) syndromes *= f.q();
    if (!allow_large && syndromes > double(1 << 24))
        throw GuardrailExceeded("ML table would exceed 2^24 syndromes; pass allow_large to override");

    // per syndrome, per candidate coded error: accumulated mass and minimum
    // explaining weight, in canonical enumeration order
    std::map<std::vector<Symbol>, std::map<std::vector<Symbol>, MlEntry>> acc;
    Matrix ht = rc.H.transposed();
    for_each_error_config(rc.active_edges, f.q(), 0, rc.delta,
                          [&](const std::vector<int>& support, const std::vector<Symbol>& vals) {
                              std::vector<Symbol> c = coded_effect(rc, f, support, vals);
                              std::vector<Symbol> s = mat_vec(ht, c);
                              MlEntry& e = acc[s][c];
                              if (e.c.empty()) {
                                  e.c = c;
                                  e.min_weight = int(support.size());
                              }
                              e.prob += support_probability(model, rc.active_edges, support);
                          });

    MlTable table;
    for (auto& [s, cands] : acc) {
        const MlEntry* best = nullptr;
        for (auto& [c, e] : cands) {
            if (!best || e.prob > best->prob ||
                (e.prob == best->prob &&
                 (e.min_weight < best->min_weight || (e.min_weight == best->min_weight && e.c < best->c))))
                best = &e;
        }
        table.by_syndrome.emplace(s, *best);
    }
    return table;
}

DecodeOutcome decode_complete_ml_basic(const BnecCode& code, const std::string& t, const ReceivedVector& z,
                                       const MlTable& table) {
    const Field& f = *code.field;
    if (!z.known_erasures.empty()) throw ErasuresPresent("complete ML decoding handles errors only");
    Syndrome s = syndrome(code, t, z);
    if (is_zero(s)) return clean_outcome(code, t, z);
    auto it = table.by_syndrome.find(s);
    if (it == table.by_syndrome.end()) return uncorrectable();

    DecodeOutcome out;
    out.status = DecodeStatus::corrected;
    out.coded_error = it->second.c;
    out.u_hat = recover_input(code, t, vec_sub(f, z.values, it->second.c));
    return out;
}

DecodeOutcome decode_complete_ml_threestage(const BnecCode& code, const std::string& t,
                                            const ReceivedVector& z, const NoiseModel& model) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    check_model(code, model);
    if (!z.known_erasures.empty()) throw ErasuresPresent("complete ML decoding handles errors only");
    Syndrome s = syndrome(code, t, z);
    if (is_zero(s)) return clean_outcome(code, t, z);

    struct Candidate {
        std::vector<Symbol> c;
        std::vector<int> pattern;
        int weight = 0;
    };
    std::vector<Candidate> candidates;
    std::vector<std::vector<int>> accepted_patterns;

    auto try_pattern = [&](const std::vector<int>& phi, bool use_indicator) {
        if (use_indicator) {
            Matrix dhat = pattern_parity(code, t, phi);
            if (!is_zero(mat_vec(dhat.transposed(), s))) return;
        }
        SolveResult sr = solve_linear(rc.D.select_cols(phi), s);
        if (sr.kind == SolveResult::Kind::none) return;
        for (const auto& seen : accepted_patterns)
            if (patterns_equivalent(code, t, seen, phi)) return;
        accepted_patterns.push_back(phi);
        Candidate cand;
        cand.pattern = phi;
        cand.c.assign(rc.h, 0);
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (sr.solution[i] != 0) ++cand.weight;
            for (int r = 0; r < rc.h; ++r)
                cand.c[r] = f.add(cand.c[r], f.mul(sr.solution[i], rc.K.at(r, phi[i])));
        }
        for (const Candidate& existing : candidates)
            if (existing.c == cand.c) return;
        candidates.push_back(std::move(cand));
    };

    int primary = std::max(rc.delta - 1, 0);
    for_each_subset(int(rc.active_edges.size()), std::min(primary, int(rc.active_edges.size())),
                    [&](const std::vector<int>& sub) {
                        std::vector<int> phi(sub.size());
                        for (std::size_t i = 0; i < sub.size(); ++i) phi[i] = rc.active_edges[sub[i]];
                        try_pattern(phi, true);
                    });
    if (candidates.empty()) {
        // fall back to the most likely pattern of size delta_t
        for_each_subset(int(rc.active_edges.size()), std::min(rc.delta, int(rc.active_edges.size())),
                        [&](const std::vector<int>& sub) {
                            std::vector<int> phi(sub.size());
                            for (std::size_t i = 0; i < sub.size(); ++i) phi[i] = rc.active_edges[sub[i]];
                            try_pattern(phi, false);
                        });
    }
    if (candidates.empty()) return uncorrectable();

    const Candidate* best = nullptr;
    double best_prob = -1.0;
    for (const Candidate& cand : candidates) {
        double p = coded_error_probability(code, t, cand.c, model, rc.delta);
        if (!best || p > best_prob ||
            (p == best_prob && (cand.weight < best->weight || (cand.weight == best->weight && cand.c < best->c)))) {
            best = &cand;
            best_prob = p;
        }
    }

    DecodeOutcome out;
    out.status = DecodeStatus::corrected;
    out.coded_error = best->c;
    out.u_hat = recover_input(code, t, vec_sub(f, z.values, best->c));
    out.pattern = best->pattern;
    return out;
}

}  // namespace bnec
