#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bnec/json_io.hpp"
#include "bnec/verify.hpp"
#include "bnec/version.hpp"

namespace {

using namespace bnec;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json run_metadata(std::uint64_t seed, const std::string& net_text, const std::string& code_text) {
    nlohmann::json meta;
    meta["tool_version"] = kVersion;
    meta["seed"] = seed;
    if (!net_text.empty()) meta["network_hash"] = content_hash(net_text);
    if (!code_text.empty()) meta["code_hash"] = content_hash(code_text);
    return meta;
}

struct DesignArgs {
    std::string net_path, out_path = "code.json";
    int k = 1;
    unsigned q = 0;
    std::uint64_t seed = 0;
    bool allow_large = false;
};

int cmd_design(const DesignArgs& a) {
    std::string net_text = slurp(a.net_path);
    NetworkGraph g = load_network(net_text);
    DesignConfig cfg;
    cfg.q = a.q;
    cfg.seed = a.seed;
    cfg.allow_large = a.allow_large;
    BnecCode code = design_code(g, a.k, cfg);
    ValidationReport vr = validate_code(code);
    std::string code_text = code_to_json(code);
    save_code(code, a.out_path);

    nlohmann::json summary = run_metadata(a.seed, net_text, code_text);
    summary["q"] = code.field->q();
    summary["k"] = code.k;
    summary["field_size_bound"] = required_field_size(g, a.k);
    summary["validation"] = {{"ok", vr.ok}, {"patterns_checked", vr.patterns_checked}};
    summary["out"] = a.out_path;
    std::cout << summary.dump(2) << '\n';
    if (!vr.ok) {
        std::cerr << "designed code failed validation\n";
        return 1;
    }
    return 0;
}

struct SimArgs {
    std::string code_path, out_path;
    int packets = 100;
    int packet_len = 4;
    std::uint64_t seed = 0;
    std::string decoder = "bd";
};

int cmd_simulate(const SimArgs& a) {
    BnecCode code = code_from_json(slurp(a.code_path));
    std::string code_text = code_to_json(code);  // canonical form, hashed below
    const Field& f = *code.field;
    NoiseModel model = noise_model_from(code);

    std::map<std::string, BdTable> bd;
    std::map<std::string, MlTable> ml;
    for (const ReceiverCode& rc : code.receivers) {
        if (a.decoder == "bd") bd.emplace(rc.id, build_bd_tables(code, rc.id));
        if (a.decoder == "ml-basic") ml.emplace(rc.id, build_ml_table(code, rc.id, model));
    }

    std::ofstream trace;
    if (!a.out_path.empty()) {
        trace.open(a.out_path);
        if (!trace) throw Error("cannot write trace file '" + a.out_path + "'");
    }

    Rng master(a.seed);
    std::map<std::string, long long> symbol_ok, symbol_total;
    long long overflow_packets = 0;
    for (int p = 0; p < a.packets; ++p) {
        Rng stream = master.split({std::uint64_t(p)});
        std::vector<InputVector> payload(a.packet_len, InputVector(code.k));
        for (auto& u : payload)
            for (auto& v : u) v = stream.symbol(f);
        PacketSim sim;
        try {
            sim = simulate_packet(code, payload, stream.next());
        } catch (const HeaderOverflow&) {
            ++overflow_packets;
            for (const ReceiverCode& rc : code.receivers) symbol_total[rc.id] += a.packet_len;
            continue;
        }
        for (const ReceiverCode& rc : code.receivers) {
            const Packet& pkt = sim.packets.at(rc.id);
            if (trace.is_open()) {
                TraceRecord rec;
                rec.packet = p;
                rec.receiver = rc.id;
                for (int ni : pkt.header_erasures) rec.header.push_back(ni + 1);
                for (const ReceivedVector& z : pkt.payload) rec.payload.push_back(z.values);
                trace << trace_record_to_json(rec) << '\n';
            }
            for (int s = 0; s < a.packet_len; ++s) {
                const ReceivedVector& z = pkt.payload[s];
                DecodeOutcome out;
                if (a.decoder == "bd")
                    out = decode_bd(code, rc.id, z, bd.at(rc.id));
                else if (a.decoder == "exhaustive")
                    out = decode_exhaustive(code, rc.id, z);
                else if (a.decoder == "three-stage")
                    out = decode_three_stage(code, rc.id, z);
                else if (a.decoder == "ml-basic")
                    out = decode_complete_ml_basic(code, rc.id, z, ml.at(rc.id));
                else if (a.decoder == "ml-3stage")
                    out = decode_complete_ml_threestage(code, rc.id, z, model);
                else
                    throw BadDecoder("unknown decoder '" + a.decoder + "'");
                ++symbol_total[rc.id];
                symbol_ok[rc.id] += out.decoded() && *out.u_hat == payload[s];
            }
        }
    }

    nlohmann::json summary = run_metadata(a.seed, "", code_text);
    summary["packets"] = a.packets;
    summary["packet_len"] = a.packet_len;
    summary["decoder"] = a.decoder;
    summary["header_overflow_packets"] = overflow_packets;
    nlohmann::json rates = nlohmann::json::object();
    for (const auto& [t, total] : symbol_total)
        rates[t] = {{"symbols", total}, {"decoded_ok", symbol_ok[t]},
                    {"rate", total ? double(symbol_ok[t]) / double(total) : 0.0}};
    summary["receivers"] = std::move(rates);
    std::cout << summary.dump(2) << '\n';
    return 0;
}

struct AnalyzeArgs {
    std::string code_path, out_path, format = "text";
    long long trials = 100000;
    std::uint64_t seed = 0;
    std::string decoder = "bd";
};

int cmd_analyze(const AnalyzeArgs& a) {
    BnecCode code = code_from_json(slurp(a.code_path));
    std::string code_text = code_to_json(code);
    NoiseModel model = noise_model_from(code);

    std::vector<BoundReport> reports;
    for (const ReceiverCode& rc : code.receivers) {
        int et = int(rc.active_edges.size());
        if (model.uniform()) {
            BoundReport det;
            det.formula = "detection_bound[" + rc.id + "]";
            det.parameters = {{"E_t", double(et)}, {"delta", double(rc.delta)}, {"rho1", model.p_err[0]}};
            det.bound = detection_prob_bound(et, rc.delta, model.p_err[0]);
            det.direction = BoundReport::Direction::lower_bound;
            reports.push_back(det);

            BoundReport cc;
            cc.formula = "complete_correction_bound[" + rc.id + "]";
            bool clamped = false;
            cc.bound = complete_correction_bound(code.n_real(), et, rc.delta, model.p_err[0],
                                                 code.field->q(), &clamped);
            cc.clamped = clamped;
            cc.direction = BoundReport::Direction::lower_bound;
            reports.push_back(cc);
        }
        std::vector<BoundReport> mc = monte_carlo(code, rc.id, model, a.decoder, a.trials, a.seed);
        for (BoundReport& r : mc) {
            r.formula += "[" + rc.id + "]";
            reports.push_back(std::move(r));
        }
    }

    std::string body = a.format == "json" ? reports_to_json(reports) : reports_to_text(reports);
    if (!a.out_path.empty()) {
        std::ofstream out(a.out_path);
        if (!out) throw Error("cannot write report file '" + a.out_path + "'");
        out << body << '\n';
    }
    nlohmann::json meta = run_metadata(a.seed, "", code_text);
    std::cout << meta.dump(2) << '\n' << body;
    return 0;
}

struct VerifyArgs {
    std::string net_path, code_path;
    int k = 1;
    unsigned q = 0;
    std::uint64_t seed = 0;
    long long trials = 20000;
};

int cmd_verify(const VerifyArgs& a) {
    std::string net_text, code_text;
    BnecCode code;
    if (!a.code_path.empty()) {
        code = code_from_json(slurp(a.code_path));
        code_text = code_to_json(code);
    } else {
        net_text = slurp(a.net_path);
        NetworkGraph g = load_network(net_text);
        DesignConfig cfg;
        cfg.q = a.q;
        cfg.seed = a.seed;
        code = design_code(g, a.k, cfg);
        code_text = code_to_json(code);
    }

    nlohmann::json meta = run_metadata(a.seed, net_text, code_text);
    std::cout << meta.dump(2) << '\n';

    std::vector<CheckResult> checks = run_standard_checks(code, a.trials, a.seed);
    bool all = true;
    for (const CheckResult& c : checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        all = all && c.pass;
    }
    std::cout << (all ? "verification passed" : "verification FAILED") << '\n';
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block network error control codes: design, simulation, decoding, verification"};
    app.set_version_flag("--version", bnec::kVersion);
    app.require_subcommand(1);

    DesignArgs da;
    CLI::App* design = app.add_subcommand("design", "design a code from a network file");
    design->add_option("--net", da.net_path, "network JSON file")->required();
    design->add_option("--k", da.k, "input symbols per network use");
    design->add_option("--q", da.q, "field size (0 = auto from the sufficiency bound)");
    design->add_option("--seed", da.seed, "RNG seed");
    design->add_option("--out", da.out_path, "code dump path");
    design->add_flag("--allow-large", da.allow_large, "lift enumeration guardrails");

    SimArgs sa;
    CLI::App* sim = app.add_subcommand("simulate", "run packet simulations against a designed code");
    sim->add_option("--code", sa.code_path, "code dump")->required();
    sim->add_option("--packets", sa.packets, "number of packets");
    sim->add_option("--packet-len", sa.packet_len, "symbols per packet");
    sim->add_option("--seed", sa.seed, "RNG seed");
    sim->add_option("--decoder", sa.decoder, "exhaustive|bd|three-stage|ml-basic|ml-3stage");
    sim->add_option("--out", sa.out_path, "packet trace output (JSON lines)");

    AnalyzeArgs aa;
    CLI::App* ana = app.add_subcommand("analyze", "closed-form bounds and Monte Carlo comparison");
    ana->add_option("--code", aa.code_path, "code dump")->required();
    ana->add_option("--trials", aa.trials, "Monte Carlo trials");
    ana->add_option("--seed", aa.seed, "RNG seed");
    ana->add_option("--decoder", aa.decoder, "decoder for the Monte Carlo runs");
    ana->add_option("--out", aa.out_path, "report output path");
    ana->add_option("--format", aa.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    VerifyArgs va;
    CLI::App* ver = app.add_subcommand("verify", "run the property suite against a network or code dump");
    ver->add_option("--net", va.net_path, "network JSON file");
    ver->add_option("--code", va.code_path, "existing code dump to verify");
    ver->add_option("--k", va.k, "input symbols per network use");
    ver->add_option("--q", va.q, "field size (0 = auto)");
    ver->add_option("--seed", va.seed, "RNG seed");
    ver->add_option("--trials", va.trials, "Monte Carlo trials (0 disables)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (*design) return cmd_design(da);
        if (*sim) return cmd_simulate(sa);
        if (*ana) return cmd_analyze(aa);
        if (*ver) {
            if (va.net_path.empty() && va.code_path.empty()) {
                std::cerr << "verify needs --net or --code\n";
                return 2;
            }
            return cmd_verify(va);
        }
    } catch (const bnec::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
