// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured numbers. Exhaustive sweeps use desk-scale fixtures;
// every tolerance is pinned in code.

#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "bnec/combin.hpp"
#include "bnec/verify.hpp"
#include "fixtures.hpp"

using namespace bnec;
using namespace bnec::test;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(const std::string& criterion, bool pass, const std::string& detail) {
    std::printf("[acceptance] %-34s %s  (%s)\n", criterion.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
}

BnecCode designed(const NetworkGraph& g, int k, unsigned q, std::uint64_t seed) {
    DesignConfig cfg;
    cfg.q = q;
    cfg.seed = seed;
    return design_code(g, k, cfg);
}

// fixture codes used by the exhaustive criteria
std::vector<BnecCode> sweep_codes() {
    std::vector<BnecCode> codes;
    codes.push_back(designed(three_path(), 1, 47, 7));   // delta = 2
    codes.push_back(designed(three_path(), 2, 47, 7));   // delta = 1, k = 2
    codes.push_back(designed(four_path(), 1, 47, 7));    // delta = 3
    return codes;
}

}  // namespace

TEST_CASE("criterion 1: refined Singleton budget (exhaustive)") {
    Timer timer;
    long long checked = 0, failures = 0;
    for (const BnecCode& code : sweep_codes()) {
        CheckResult res = check_singleton_budget(code);
        checked += res.checked;
        failures += res.failures;
    }
    double secs = timer.seconds();
    bool pass = failures == 0 && secs <= 300.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%lld cases, %lld failures, %.1fs", checked, failures, secs);
    report("1 singleton budget", pass, buf);
    CHECK(failures == 0);
    CHECK(secs <= 300.0);
    CHECK(checked > 150000);
}

TEST_CASE("criterion 2: detection of every nonzero coded effect") {
    long long checked = 0, misses = 0;
    for (const BnecCode& code : sweep_codes()) {
        CheckResult res = check_detection(code);
        checked += res.checked;
        misses += res.failures;
    }
    BnecCode bf = designed(butterfly(), 1, 37, 11);
    CheckResult res = check_detection(bf);
    checked += res.checked;
    misses += res.failures;
    report("2 detection", misses == 0, std::to_string(checked) + " error vectors, " +
                                           std::to_string(misses) + " misses");
    CHECK(misses == 0);
}

TEST_CASE("criterion 3: decoder equivalence") {
    long long checked = 0, disagreements = 0;
    for (const BnecCode& code : sweep_codes()) {
        CheckResult res = check_decoder_equivalence(code);
        checked += res.checked;
        disagreements += res.failures;
    }
    report("3 decoder equivalence", disagreements == 0,
           std::to_string(checked) + " comparisons, " + std::to_string(disagreements) + " disagreements");
    CHECK(disagreements == 0);
}

namespace {

// Complete-decoding success on weight-b error vectors, measured by brute
// force: map each syndrome to the set of distinct coded error vectors
// reachable at weight <= b; a weight-b vector is decodable iff its syndrome
// set is a singleton. Independent of the decoder implementations.
struct CompleteCount {
    long long total = 0;
    long long failures = 0;
    double failure_fraction() const { return total ? double(failures) / double(total) : 0.0; }
};

CompleteCount complete_decoder_failures(const BnecCode& code, const std::string& t, int b) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    std::map<std::vector<Symbol>, std::set<std::vector<Symbol>>> reachable;

    std::vector<std::pair<std::vector<Symbol>, std::vector<Symbol>>> weight_b;  // (syndrome, c)
    for (int w = 0; w <= b; ++w) {
        for_each_subset(int(rc.active_edges.size()), w, [&](const std::vector<int>& sub) {
            std::vector<int> support(w);
            for (int i = 0; i < w; ++i) support[i] = rc.active_edges[sub[i]];
            std::vector<Symbol> vals(w, 1);
            while (true) {
                std::vector<Symbol> c(rc.h, 0);
                for (int i = 0; i < w; ++i)
                    for (int r = 0; r < rc.h; ++r)
                        c[r] = f.add(c[r], f.mul(vals[i], rc.K.at(r, support[i])));
                std::vector<Symbol> s = mat_vec(rc.H.transposed(), c);
                reachable[s].insert(c);
                if (w == b) weight_b.emplace_back(std::move(s), std::move(c));
                int i = w - 1;
                while (i >= 0 && vals[i] == Symbol(f.q() - 1)) --i;
                if (i < 0) break;
                ++vals[i];
                for (int j = i + 1; j < w; ++j) vals[j] = 1;
            }
        });
    }
    CompleteCount cc;
    for (const auto& [s, c] : weight_b) {
        ++cc.total;
        cc.failures += reachable.at(s).size() != 1;
    }
    return cc;
}

}  // namespace

TEST_CASE("criterion 4: complete-decoder bound and field-size trend") {
    BnecCode c64 = designed(four_path(), 1, 64, 3);
    BnecCode c128 = designed(four_path(), 1, 128, 3);
    int ea = c64.n_real();
    REQUIRE(ea == 8);

    CompleteCount m64 = complete_decoder_failures(c64, "t", 2);
    CompleteCount m128 = complete_decoder_failures(c128, "t", 2);
    double bound64 = double(binomial(ea, 2)) / 64.0;
    double bound128 = double(binomial(ea, 2)) / 128.0;

    bool pass = m64.failure_fraction() <= bound64 && m128.failure_fraction() <= bound128 &&
                bound128 == bound64 / 2.0 && m128.failure_fraction() <= m64.failure_fraction();
    char buf[200];
    std::snprintf(buf, sizeof buf, "fail q64 %.5f <= %.5f, q128 %.5f <= %.5f, trend ok=%d",
                  m64.failure_fraction(), bound64, m128.failure_fraction(), bound128,
                  int(m128.failure_fraction() <= m64.failure_fraction()));
    report("4 complete-decoder bound", pass, buf);

    CHECK(m64.failure_fraction() <= bound64);
    CHECK(m128.failure_fraction() <= bound128);
    CHECK(bound128 == bound64 / 2.0);
    CHECK(m128.failure_fraction() <= m64.failure_fraction());
    CHECK(m64.total == 28 * 63 * 63);
}

TEST_CASE("criterion 5: solution-count lemma on 200 random instances") {
    CheckResult res = check_solution_counts(424242, 200);
    report("5 solution counts", res.pass, res.detail);
    CHECK(res.pass);
    CHECK(res.checked == 200);
}

namespace {

double detection_bound_oracle(int et, int delta, double rho) {
    double sum = 0;
    for (unsigned long long mask = 0; mask < (1ull << et); ++mask) {
        int errs = __builtin_popcountll(mask);
        if (errs <= delta) sum += std::pow(rho, errs) * std::pow(1 - rho, et - errs);
    }
    return sum;
}

double bd_bound_oracle_errors_only(int et, int delta, double rho) {
    double sum = 0;
    for (unsigned long long mask = 0; mask < (1ull << et); ++mask) {
        int errs = __builtin_popcountll(mask);
        if (errs <= delta / 2) sum += std::pow(rho, errs) * std::pow(1 - rho, et - errs);
    }
    return sum;
}

}  // namespace

TEST_CASE("criterion 6: closed-form bound values to 5 decimals") {
    double eq33 = detection_prob_bound(6, 2, 0.1);
    double eq35 = bd_correction_bound(5, 2, 0.1, 0.0);
    TableCounts tc = table_counts(6, 2, 7, 1, 0);

    bool pass = std::abs(eq33 - 0.98415) < 5e-6 && std::abs(eq35 - 0.91854) < 5e-6 && tc.ncn_phi == 37 &&
                tc.nrec_phi == 259;
    // independent two-path evaluation
    pass = pass && std::abs(eq33 - detection_bound_oracle(6, 2, 0.1)) < 1e-12 &&
           std::abs(eq35 - bd_bound_oracle_errors_only(5, 2, 0.1)) < 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof buf, "eq33=%.5f eq35=%.5f ncn=37? %d nrec=259? %d", eq33, eq35,
                  int(tc.ncn_phi == 37), int(tc.nrec_phi == 259));
    report("6 bound formulas", pass, buf);

    CHECK(std::abs(eq33 - 0.98415) < 5e-6);
    CHECK(std::abs(eq35 - 0.91854) < 5e-6);
    CHECK(tc.ncn_phi == 37);
    CHECK(tc.nrec_phi == 259);
    CHECK(std::abs(eq33 - detection_bound_oracle(6, 2, 0.1)) < 1e-12);
    CHECK(std::abs(eq35 - bd_bound_oracle_errors_only(5, 2, 0.1)) < 1e-12);
}

TEST_CASE("criterion 7: Monte Carlo rates vs bounds at 1e5 trials") {
    struct Fixture {
        const char* name;
        BnecCode code;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({"threepath", designed(three_path(), 1, 47, 7)});
    fixtures.push_back({"butterfly", designed(butterfly(), 1, 37, 11)});
    fixtures.push_back({"fourpath", designed(four_path(), 1, 47, 7)});

    bool all = true;
    for (const Fixture& fx : fixtures) {
        Timer timer;
        NoiseModel model = noise_model_from(fx.code);
        for (auto& p : model.p_err) p = 0.05;
        for (auto& p : model.p_ers) p = 0.0;
        for (const ReceiverCode& rc : fx.code.receivers) {
            std::vector<BoundReport> reports = monte_carlo(fx.code, rc.id, model, "bd", 100000, 2024);
            for (const BoundReport& r : reports) {
                REQUIRE(r.bound);
                double sigma = std::sqrt(*r.measured * (1.0 - *r.measured) / double(r.trials));
                bool ok = *r.measured >= *r.bound - 3.0 * sigma;
                all = all && ok;
                char buf[200];
                std::snprintf(buf, sizeof buf, "%s/%s/%s measured %.5f bound %.5f", fx.name, rc.id.c_str(),
                              r.formula.c_str(), *r.measured, *r.bound);
                report("7 monte carlo", ok, buf);
                CHECK(ok);
            }
        }
        double secs = timer.seconds();
        CHECK(secs <= 120.0);
        all = all && secs <= 120.0;
    }
    CHECK(all);
}

TEST_CASE("criterion 8: design success over 50 seeds at the sufficient field size") {
    struct Fixture {
        const char* name;
        NetworkGraph g;
        int k;
        unsigned q;  // next supported prime power >= the sufficiency bound
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({"threepath", three_path(), 1, 47});
    fixtures.push_back({"butterfly", butterfly(), 1, 37});
    fixtures.push_back({"fourpath", four_path(), 1, 227});

    bool all = true;
    for (Fixture& fx : fixtures) {
        REQUIRE(Field::next_supported_size(required_field_size(fx.g, fx.k)) == fx.q);
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            try {
                BnecCode code = designed(fx.g, fx.k, fx.q, seed);
                ok += validate_code(code).ok;
            } catch (const DesignFailed&) {
            }
        }
        bool pass = ok == 50;
        all = all && pass;
        report("8 design success", pass,
               std::string(fx.name) + ": " + std::to_string(ok) + "/50 seeds designed and validated");
        CHECK(ok == 50);
    }
    CHECK(all);
}

namespace {

// Independent ML oracle: same canonical enumeration order (weight ascending,
// support lexicographic over E_t, values counting up), own probability and
// argmax logic.
std::map<std::vector<Symbol>, std::pair<std::vector<Symbol>, std::pair<double, int>>> ml_oracle(
    const BnecCode& code, const std::string& t, const NoiseModel& model) {
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    const std::vector<int>& et = rc.active_edges;

    struct Cand {
        double prob = 0;
        int minw = 0;
        bool seen = false;
    };
    std::map<std::vector<Symbol>, std::map<std::vector<Symbol>, Cand>> acc;

    for (int w = 0; w <= rc.delta; ++w) {
        for_each_subset(int(et.size()), w, [&](const std::vector<int>& sub) {
            std::vector<int> support(w);
            for (int i = 0; i < w; ++i) support[i] = et[sub[i]];
            std::vector<Symbol> vals(w, 1);
            while (true) {
                std::vector<Symbol> c(rc.h, 0);
                for (int i = 0; i < w; ++i)
                    for (int r = 0; r < rc.h; ++r)
                        c[r] = f.add(c[r], f.mul(vals[i], rc.K.at(r, support[i])));
                std::vector<Symbol> s = mat_vec(rc.H.transposed(), c);
                double prob = 1.0;
                std::size_t si = 0;
                for (int e : et) {
                    if (si < support.size() && support[si] == e) {
                        prob *= model.p_err[e] / double(model.q - 1);
                        ++si;
                    } else {
                        prob *= 1.0 - model.p_err[e];
                    }
                }
                Cand& cand = acc[s][c];
                if (!cand.seen) {
                    cand.seen = true;
                    cand.minw = w;
                }
                cand.prob += prob;
                int i = w - 1;
                while (i >= 0 && vals[i] == Symbol(f.q() - 1)) --i;
                if (i < 0) break;
                ++vals[i];
                for (int j = i + 1; j < w; ++j) vals[j] = 1;
            }
        });
    }

    std::map<std::vector<Symbol>, std::pair<std::vector<Symbol>, std::pair<double, int>>> best;
    for (const auto& [s, cands] : acc) {
        const std::vector<Symbol>* bc = nullptr;
        const Cand* b = nullptr;
        for (const auto& [c, cand] : cands) {
            if (!b || cand.prob > b->prob ||
                (cand.prob == b->prob && (cand.minw < b->minw || (cand.minw == b->minw && c < *bc)))) {
                b = &cand;
                bc = &c;
            }
        }
        best[s] = {*bc, {b->prob, b->minw}};
    }
    return best;
}

}  // namespace

TEST_CASE("criterion 9: complete ML argmax matches the brute-force posterior") {
    BnecCode code = repetition_code();
    NoiseModel skew = noise_model_from(code);
    skew.p_err[noise_index_of(code, "e1")] = 0.01;
    skew.p_err[noise_index_of(code, "e4")] = 0.2;
    for (const char* id : {"e2", "e3", "e5", "e6"}) skew.p_err[noise_index_of(code, id)] = 0.05;

    MlTable table = build_ml_table(code, "t", skew);
    auto oracle = ml_oracle(code, "t", skew);

    long long agree = 0, total = 0, mismatches = 0;
    for (unsigned s0 = 0; s0 < 7; ++s0)
        for (unsigned s1 = 0; s1 < 7; ++s1) {
            std::vector<Symbol> s{Symbol(s0), Symbol(s1)};
            ++total;
            auto it = table.by_syndrome.find(s);
            auto ot = oracle.find(s);
            if ((it == table.by_syndrome.end()) != (ot == oracle.end())) {
                ++mismatches;
                continue;
            }
            if (it == table.by_syndrome.end()) {
                ++agree;
                continue;
            }
            if (it->second.c == ot->second.first && it->second.prob == ot->second.second.first)
                ++agree;
            else
                ++mismatches;
        }
    bool pass = mismatches == 0 && total == 49;
    report("9 ML argmax", pass,
           std::to_string(agree) + "/" + std::to_string(total) + " syndromes agree with the oracle");
    CHECK(mismatches == 0);
    CHECK(total == 49);

    // the skewed scenario: syndrome (2,0) must decode to c = (2,0,0), whose mass
    // sums both single-edge explanations
    const MlEntry& e = table.by_syndrome.at({2, 0});
    CHECK(e.c == std::vector<Symbol>{2, 0, 0});
    CHECK(e.prob == coded_error_probability(code, "t", {2, 0, 0}, skew, 2));
    double single1 = (0.01 / 6.0) * (1 - 0.2) * std::pow(1 - 0.05, 4);
    double single4 = (0.2 / 6.0) * (1 - 0.01) * std::pow(1 - 0.05, 4);
    CHECK(e.prob >= single1 + single4);
}

TEST_CASE("criterion 10: structural invariants across 50 seeds") {
    long long failures = 0, checked = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        BnecCode code = designed(three_path(), 1, 47, seed);
        CheckResult res = check_structural(code, seed ^ 0xabcdef, 10);
        checked += res.checked;
        failures += res.failures;
    }
    report("10 structural invariants", failures == 0,
           std::to_string(checked) + " checks across 50 seeds, " + std::to_string(failures) + " failures");
    CHECK(failures == 0);
}
