#include "bnec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bnec/combin.hpp"
#include "bnec/rng.hpp"

namespace bnec {

namespace {

// All (erasure pattern, error support, error values) triples inside E_t with
// alpha + 2*beta <= delta_t. fn(erased, support, values).
void for_each_budget_noise(const ReceiverCode& rc, unsigned q,
                           const std::function<void(const std::vector<int>&, const std::vector<int>&,
                                                    const std::vector<Symbol>&)>& fn) {
    const std::vector<int>& et = rc.active_edges;
    for (int alpha = 0; alpha <= rc.delta; ++alpha) {
        for_each_subset(int(et.size()), alpha, [&](const std::vector<int>& esub) {
            std::vector<int> erased(alpha);
            for (int i = 0; i < alpha; ++i) erased[i] = et[esub[i]];
            std::vector<int> rest;
            for (int e : et)
                if (!std::binary_search(erased.begin(), erased.end(), e)) rest.push_back(e);
            int beta_max = (rc.delta - alpha) / 2;
            for (int beta = 0; beta <= beta_max; ++beta) {
                for_each_subset(int(rest.size()), beta, [&](const std::vector<int>& ssub) {
                    std::vector<int> support(beta);
                    for (int i = 0; i < beta; ++i) support[i] = rest[ssub[i]];
                    std::vector<Symbol> vals(beta, 1);
                    while (true) {
                        fn(erased, support, vals);
                        int i = beta - 1;
                        while (i >= 0 && vals[i] == Symbol(q - 1)) --i;
                        if (i < 0) break;
                        ++vals[i];
                        for (int j = i + 1; j < beta; ++j) vals[j] = 1;
                    }
                });
            }
        });
    }
}

void for_each_input(const Field& f, int k, const std::function<void(const InputVector&)>& fn) {
    InputVector u(k, 0);
    while (true) {
        fn(u);
        int i = k - 1;
        while (i >= 0 && u[i] == Symbol(f.q() - 1)) --i;
        if (i < 0) return;
        ++u[i];
        for (int j = i + 1; j < k; ++j) u[j] = 0;
    }
}

NoiseVector make_noise(int n_real, const std::vector<int>& erased, const std::vector<int>& support,
                       const std::vector<Symbol>& vals) {
    NoiseVector nv;
    nv.errors.assign(n_real, 0);
    for (std::size_t i = 0; i < support.size(); ++i) nv.errors[support[i]] = vals[i];
    nv.erased = erased;
    return nv;
}

}  // namespace

CheckResult check_singleton_budget(const BnecCode& code) {
    CheckResult res{"singleton_budget", true, 0, 0, ""};
    const Field& f = *code.field;
    for (const ReceiverCode& rc : code.receivers) {
        BdTable tables = build_bd_tables(code, rc.id);
        for_each_budget_noise(rc, f.q(), [&](const std::vector<int>& erased, const std::vector<int>& support,
                                             const std::vector<Symbol>& vals) {
            NoiseVector nv = make_noise(code.n_real(), erased, support, vals);
            for_each_input(f, code.k, [&](const InputVector& u) {
                PropagateResult pr = propagate(code, u, nv);
                DecodeOutcome out = decode_bd(code, rc.id, pr.at(rc.id), tables);
                ++res.checked;
                if (!out.decoded() || *out.u_hat != u) ++res.failures;
            });
        });
    }
    res.pass = res.failures == 0;
    std::ostringstream d;
    d << res.checked << " (input, noise) pairs within budget, " << res.failures << " decode failures";
    res.detail = d.str();
    return res;
}

CheckResult check_detection(const BnecCode& code) {
    CheckResult res{"detection", true, 0, 0, ""};
    const Field& f = *code.field;
    for (const ReceiverCode& rc : code.receivers) {
        // fixed arbitrary input; the syndrome is input-independent
        InputVector u(code.k, 0);
        if (code.k > 0) u[0] = Symbol(1 % f.q());
        std::vector<Symbol> v = mat_vec(rc.G, u);
        Matrix ht = rc.H.transposed();
        for (int w = 1; w <= rc.delta; ++w) {
            for_each_subset(int(rc.active_edges.size()), w, [&](const std::vector<int>& sub) {
                std::vector<int> support(w);
                for (int i = 0; i < w; ++i) support[i] = rc.active_edges[sub[i]];
                std::vector<Symbol> vals(w, 1);
                while (true) {
                    std::vector<Symbol> c(rc.h, 0);
                    for (int i = 0; i < w; ++i)
                        for (int r = 0; r < rc.h; ++r)
                            c[r] = f.add(c[r], f.mul(vals[i], rc.K.at(r, support[i])));
                    if (!is_zero(c)) {
                        ++res.checked;
                        ReceivedVector z{rc.id, vec_add(f, v, c), {}};
                        if (!detect(code, rc.id, z)) ++res.failures;
                    }
                    int i = w - 1;
                    while (i >= 0 && vals[i] == Symbol(f.q() - 1)) --i;
                    if (i < 0) break;
                    ++vals[i];
                    for (int j = i + 1; j < w; ++j) vals[j] = 1;
                }
            });
        }
    }
    res.pass = res.failures == 0;
    std::ostringstream d;
    d << res.checked << " error vectors with nonzero coded effect, " << res.failures << " detection misses";
    res.detail = d.str();
    return res;
}

CheckResult check_decoder_equivalence(const BnecCode& code) {
    CheckResult res{"decoder_equivalence", true, 0, 0, ""};
    const Field& f = *code.field;
    for (const ReceiverCode& rc : code.receivers) {
        BdTable tables = build_bd_tables(code, rc.id);
        for_each_budget_noise(rc, f.q(), [&](const std::vector<int>& erased, const std::vector<int>& support,
                                             const std::vector<Symbol>& vals) {
            NoiseVector nv = make_noise(code.n_real(), erased, support, vals);
            for_each_input(f, code.k, [&](const InputVector& u) {
                PropagateResult pr = propagate(code, u, nv);
                const ReceivedVector& z = pr.at(rc.id);
                DecodeOutcome bd = decode_bd(code, rc.id, z, tables);
                DecodeOutcome ex = decode_exhaustive(code, rc.id, z);
                ++res.checked;
                bool same = bd.status == ex.status && bd.u_hat == ex.u_hat;
                if (erased.empty()) {
                    DecodeOutcome ts = decode_three_stage(code, rc.id, z);
                    same = same && ts.status == bd.status && ts.u_hat == bd.u_hat &&
                           ts.coded_error == bd.coded_error;
                }
                if (!same) ++res.failures;
            });
        });
    }
    res.pass = res.failures == 0;
    std::ostringstream d;
    d << res.checked << " decoder comparisons, " << res.failures << " disagreements";
    res.detail = d.str();
    return res;
}

CheckResult check_structural(const BnecCode& code, std::uint64_t seed, int samples) {
    CheckResult res{"structural_invariants", true, 0, 0, ""};
    const Field& f = *code.field;
    std::ostringstream why;

    for (const ReceiverCode& rc : code.receivers) {
        Matrix prod = mat_mul(rc.H.transposed(), rc.G);
        for (int r = 0; r < prod.rows(); ++r)
            for (int c = 0; c < prod.cols(); ++c)
                if (prod.at(r, c) != 0) {
                    ++res.failures;
                    why << "H^T G != 0 at '" << rc.id << "'; ";
                    r = prod.rows();
                    break;
                }
        if (rank(rc.G) != code.k) {
            ++res.failures;
            why << "rank(G) != k at '" << rc.id << "'; ";
        }
        ++res.checked;
    }

    // gev consistency with the local encoding vectors
    for (int pos = code.n_virtual; pos < int(code.edges.size()); ++pos) {
        const CodeEdge& e = code.edges[pos];
        std::vector<Symbol> expect(code.k + code.n_real(), 0);
        for (std::size_t j = 0; j < e.in_edges.size(); ++j) {
            const std::vector<Symbol>& gin = code.edges[e.in_edges[j]].gev;
            for (std::size_t c = 0; c < expect.size(); ++c)
                expect[c] = f.add(expect[c], f.mul(e.lev[j], gin[c]));
        }
        expect[code.k + code.noise_index(pos)] = f.add(expect[code.k + code.noise_index(pos)], 1);
        ++res.checked;
        if (expect != e.gev) {
            ++res.failures;
            why << "gev inconsistent at edge '" << e.id << "'; ";
        }
    }

    // rows of [G | K] are the gevs of the receiver input edges
    for (const ReceiverCode& rc : code.receivers) {
        for (int row = 0; row < rc.h; ++row) {
            const std::vector<Symbol>& gv = code.edges[rc.input_edges[row]].gev;
            bool same = true;
            for (int c = 0; c < code.k; ++c) same = same && rc.G.at(row, c) == gv[c];
            for (int c = 0; c < code.n_real(); ++c) same = same && rc.K.at(row, c) == gv[code.k + c];
            ++res.checked;
            if (!same) {
                ++res.failures;
                why << "[G|K] row " << row << " != gev at '" << rc.id << "'; ";
            }
        }
    }

    // propagate vs matrix route; syndrome input-independence
    Rng rng(seed);
    NoiseModel model = noise_model_from(code);
    for (int s = 0; s < samples; ++s) {
        Rng stream = rng.split({std::uint64_t(s)});
        InputVector u1(code.k), u2(code.k);
        for (auto& v : u1) v = stream.symbol(f);
        for (auto& v : u2) v = stream.symbol(f);
        NoiseVector nv;
        nv.errors.assign(code.n_real(), 0);
        for (auto& v : nv.errors)
            if (stream.bernoulli(0.3)) v = stream.nonzero_symbol(f);
        for (int i = 0; i < code.n_real(); ++i)
            if (stream.bernoulli(0.15)) nv.erased.push_back(i);

        PropagateResult p1 = propagate(code, u1, nv);
        PropagateResult p2 = propagate(code, u2, nv);
        for (const ReceiverCode& rc : code.receivers) {
            std::vector<Symbol> viaMatrix =
                vec_add(f, mat_vec(rc.G, u1), mat_vec(rc.K, p1.effective_noise));
            ++res.checked;
            if (viaMatrix != p1.at(rc.id).values) {
                ++res.failures;
                why << "propagate != matrix route at '" << rc.id << "'; ";
            }
            if (nv.erased.empty()) {
                ++res.checked;
                if (syndrome(code, rc.id, p1.at(rc.id)) != syndrome(code, rc.id, p2.at(rc.id))) {
                    ++res.failures;
                    why << "syndrome depends on input at '" << rc.id << "'; ";
                }
            }
        }
    }

    res.pass = res.failures == 0;
    res.detail = res.pass ? std::to_string(res.checked) + " structural checks" : why.str();
    return res;
}

CheckResult check_solution_counts(std::uint64_t seed, int instances) {
    CheckResult res{"solution_counts", true, 0, 0, ""};
    Rng rng(seed);
    int made = 0;
    std::uint64_t attempt = 0;
    while (made < instances) {
        Rng stream = rng.split({attempt++});
        unsigned qs[] = {2, 3, 5};
        unsigned q = qs[stream.below(3)];
        int delta = 1 + int(stream.below(3));
        int m = 1 + int(stream.below(6));
        FieldPtr f = Field::make(q);
        Matrix cols(f, delta, m);
        for (int r = 0; r < delta; ++r)
            for (int c = 0; c < m; ++c) cols.at(r, c) = Symbol(stream.below(q));
        try {
            unsigned long long eta = lemma1_count(cols);
            ++made;
            ++res.checked;
            if (m <= delta) {
                if (eta != 1) ++res.failures;
            } else {
                unsigned long long cap = 1;
                for (int i = 0; i < m - delta; ++i) cap *= q;
                if (eta > cap) ++res.failures;
            }
        } catch (const NotIndependent&) {
            // redraw until the column set is delta-independent
        }
    }
    res.pass = res.failures == 0;
    std::ostringstream d;
    d << res.checked << " random delta-independent instances, " << res.failures << " bound violations";
    res.detail = d.str();
    return res;
}

CheckResult check_monte_carlo_bounds(const BnecCode& code, const NoiseModel& model, long long trials,
                                     std::uint64_t seed) {
    CheckResult res{"monte_carlo_bounds", true, 0, 0, ""};
    std::ostringstream d;
    for (const ReceiverCode& rc : code.receivers) {
        std::vector<BoundReport> reports = monte_carlo(code, rc.id, model, "bd", trials, seed);
        for (const BoundReport& r : reports) {
            if (!r.bound || !r.measured) continue;
            ++res.checked;
            double sigma = std::sqrt(std::max(*r.measured * (1.0 - *r.measured), 0.0) / double(trials));
            bool ok = *r.measured >= *r.bound - 3.0 * sigma;
            if (!ok) ++res.failures;
            d << rc.id << "/" << r.formula << ": measured " << *r.measured << " vs bound " << *r.bound
              << (ok ? " ok; " : " VIOLATED; ");
        }
    }
    res.pass = res.failures == 0;
    res.detail = d.str();
    return res;
}

std::vector<CheckResult> run_standard_checks(const BnecCode& code, long long trials, std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            out.push_back(fn());
        } catch (const Error& e) {
            out.push_back({name, false, 0, 1, std::string("aborted: ") + e.what()});
        }
    };

    guarded("erasure_solvability", [&] {
        ValidationReport vr = validate_code(code);
        CheckResult val{"erasure_solvability", vr.ok, vr.patterns_checked, (long long)vr.failures.size(), ""};
        std::ostringstream vd;
        vd << vr.patterns_checked << " erasure patterns checked, " << vr.failures.size() << " unsolvable";
        for (const std::string& s : vr.structural_failures) vd << "; " << s;
        val.detail = vd.str();
        return val;
    });
    guarded("structural_invariants", [&] { return check_structural(code, seed); });
    guarded("detection", [&] { return check_detection(code); });
    guarded("singleton_budget", [&] { return check_singleton_budget(code); });
    guarded("decoder_equivalence", [&] { return check_decoder_equivalence(code); });
    guarded("solution_counts", [&] { return check_solution_counts(seed, 200); });
    if (trials > 0)
        guarded("monte_carlo_bounds",
                [&] { return check_monte_carlo_bounds(code, noise_model_from(code), trials, seed); });
    return out;
}

}  // namespace bnec
