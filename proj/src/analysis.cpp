#include "bnec/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "bnec/combin.hpp"

namespace bnec {

namespace {

double binom_term(int n, int i, double p) {
    return double(binomial(n, i)) * std::pow(p, i) * std::pow(1.0 - p, n - i);
}

}  // namespace

double detection_prob_bound(int et, int delta, double rho1) {
    double sum = 0.0;
    for (int i = 0; i <= std::min(delta, et); ++i) sum += binom_term(et, i, rho1);
    return sum;
}

double detection_prob_general(const NoiseModel& model, const std::vector<int>& et, int delta,
                              std::uint64_t seed, long long samples) {
    int n = int(et.size());
    if (n <= 12) {
        // error values never matter: the mass of a support set is the product
        // of per-edge error / no-error probabilities
        double sum = 0.0;
        for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
            if (__builtin_popcountll(mask) > delta) continue;
            double p = 1.0;
            for (int i = 0; i < n; ++i)
                p *= (mask >> i & 1) ? model.p_err[et[i]] : 1.0 - model.p_err[et[i]];
            sum += p;
        }
        return sum;
    }
    Rng master(seed);
    long long hits = 0;
    for (long long s = 0; s < samples; ++s) {
        Rng stream = master.split({std::uint64_t(s)});
        int errs = 0;
        for (int i = 0; i < n && errs <= delta; ++i) errs += stream.bernoulli(model.p_err[et[i]]);
        hits += errs <= delta;
    }
    return double(hits) / double(samples);
}

double bd_correction_bound(int et, int delta, double rho1, double rho2) {
    double sum = 0.0;
    for (int a = 0; a <= std::min(delta, et); ++a) {
        double inner = 0.0;
        int bmax = std::min((delta - a) / 2, et - a);
        for (int b = 0; b <= bmax; ++b) inner += binom_term(et - a, b, rho1);
        sum += binom_term(et, a, rho2) * inner;
    }
    return sum;
}

double complete_correction_bound(int ea, int et, int delta, double rho1, unsigned q, bool* clamped) {
    if (clamped) *clamped = false;
    double sum = bd_correction_bound(et, delta, rho1, 0.0);
    for (int i = delta / 2 + 1; i <= delta - 1 && i <= et; ++i) {
        double factor = 1.0 - double(binomial(ea, i)) * std::pow(double(q), i - delta);
        if (factor < 0.0) {
            factor = 0.0;
            if (clamped) *clamped = true;
        }
        sum += factor * binom_term(et, i, rho1);
    }
    return sum;
}

TableCounts table_counts(int et, int delta, unsigned q, int k, int alpha) {
    TableCounts tc;
    auto cn_for = [&](int a) {
        unsigned long long s = 0;
        for (int i = 0; i <= (delta - a) / 2; ++i) {
            unsigned long long term = binomial(et - a, i);
            for (int j = 0; j < i; ++j) term *= (q - 1);
            s += term;
        }
        return s;
    };
    tc.ncn_phi = cn_for(alpha);
    tc.ns_phi = tc.ncn_phi;
    tc.ncn = 0;
    for (int a = 0; a <= std::min(delta, et); ++a) tc.ncn += binomial(et, a) * cn_for(a);
    unsigned long long qk = 1;
    for (int i = 0; i < k; ++i) qk *= q;
    tc.nrec_phi = qk * tc.ncn_phi;
    tc.nrec = qk * tc.ncn;
    tc.nerror.assign(delta + 1, 0);
    for (int r = 0; r <= delta; ++r) {
        unsigned long long s = 0;
        for (int i = 1; i <= std::min(r, et); ++i) {
            unsigned long long term = binomial(et, i);
            for (int j = 0; j < i; ++j) term *= (q - 1);
            s += term;
        }
        tc.nerror[r] = s;
    }
    return tc;
}

unsigned long long lemma1_count(const Matrix& vectors) {
    const Field& f = *vectors.field();
    int delta = vectors.rows();
    int m = vectors.cols();
    if (!is_k_independent(vectors.transposed(), std::min(delta, m)))
        throw NotIndependent("column set is not delta-independent");

    double space = std::pow(double(f.q()), m);
    if (space > double(1 << 24)) throw GuardrailExceeded("lemma1_count: q^m too large to enumerate");

    unsigned long long solutions = 0;
    std::vector<Symbol> e(m, 0);
    while (true) {
        std::vector<Symbol> acc(delta, 0);
        for (int j = 0; j < m; ++j)
            if (e[j] != 0)
                for (int r = 0; r < delta; ++r) acc[r] = f.add(acc[r], f.mul(vectors.at(r, j), e[j]));
        if (is_zero(acc)) ++solutions;
        int i = m - 1;
        while (i >= 0 && e[i] == Symbol(f.q() - 1)) --i;
        if (i < 0) break;
        ++e[i];
        for (int j = i + 1; j < m; ++j) e[j] = 0;
    }
    return solutions;
}

std::pair<double, double> wilson_interval(long long successes, long long trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    double n = double(trials);
    double p = double(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<BoundReport> monte_carlo(const BnecCode& code, const std::string& t, const NoiseModel& model,
                                     const std::string& decoder_id, long long trials, std::uint64_t seed) {
    if (trials < 1) throw Error("monte_carlo: trials must be at least 1");
    const ReceiverCode& rc = code.receiver(t);
    const Field& f = *code.field;
    if (int(model.p_err.size()) != code.n_real() || model.q != f.q())
        throw DimensionMismatch("noise model does not match the code");

    bool errors_only = model.errors_only();
    bool needs_errors_only = decoder_id == "three-stage" || decoder_id == "ml-basic" || decoder_id == "ml-3stage";
    if (needs_errors_only && !errors_only)
        throw ErasuresPresent("decoder '" + decoder_id + "' handles errors only");

    BdTable bd;
    MlTable ml;
    if (decoder_id == "bd")
        bd = build_bd_tables(code, t);
    else if (decoder_id == "ml-basic")
        ml = build_ml_table(code, t, model);
    else if (decoder_id != "exhaustive" && decoder_id != "three-stage" && decoder_id != "ml-3stage")
        throw BadDecoder("unknown decoder '" + decoder_id + "'");

    Rng master(seed);
    long long det_ok = 0, cor_ok = 0;
    for (long long trial = 0; trial < trials; ++trial) {
        Rng stream = master.split({std::uint64_t(trial)});
        InputVector u(code.k);
        for (auto& v : u) v = stream.symbol(f);
        NoiseVector noise = sample_noise(model, f, stream);
        PropagateResult pr = propagate(code, u, noise);
        const ReceivedVector& z = pr.at(t);

        if (errors_only) {
            std::vector<Symbol> c = mat_vec(rc.K, pr.effective_noise);
            bool miss = !is_zero(c) && !detect(code, t, z);
            det_ok += !miss;
        }

        DecodeOutcome out;
        if (decoder_id == "bd")
            out = decode_bd(code, t, z, bd);
        else if (decoder_id == "exhaustive")
            out = decode_exhaustive(code, t, z);
        else if (decoder_id == "three-stage")
            out = decode_three_stage(code, t, z);
        else if (decoder_id == "ml-basic")
            out = decode_complete_ml_basic(code, t, z, ml);
        else
            out = decode_complete_ml_threestage(code, t, z, model);
        cor_ok += out.decoded() && *out.u_hat == u;
    }

    int et = int(rc.active_edges.size());
    std::vector<BoundReport> reports;

    if (errors_only) {
        BoundReport det;
        det.formula = "detection";
        det.parameters = {{"E_t", double(et)}, {"delta", double(rc.delta)}};
        det.direction = BoundReport::Direction::lower_bound;
        det.trials = trials;
        det.measured = double(det_ok) / double(trials);
        det.ci = wilson_interval(det_ok, trials);
        if (model.uniform()) {
            det.parameters["rho1"] = model.p_err[0];
            det.bound = detection_prob_bound(et, rc.delta, model.p_err[0]);
        }
        reports.push_back(std::move(det));
    }

    BoundReport cor;
    cor.formula = errors_only ? "bd_correction_errors_only" : "bd_correction";
    cor.parameters = {{"E_t", double(et)}, {"delta", double(rc.delta)}};
    cor.direction = BoundReport::Direction::lower_bound;
    cor.trials = trials;
    cor.measured = double(cor_ok) / double(trials);
    cor.ci = wilson_interval(cor_ok, trials);
    if (model.uniform()) {
        cor.parameters["rho1"] = model.p_err[0];
        cor.parameters["rho2"] = model.p_ers[0];
        cor.bound = bd_correction_bound(et, rc.delta, model.p_err[0], model.p_ers[0]);
        cor.note = decoder_id == "bd" || decoder_id == "exhaustive"
                       ? ""
                       : "bound applies to bounded-distance decoding; complete decoders only improve on it";
    }
    reports.push_back(std::move(cor));
    return reports;
}

}  // namespace bnec
