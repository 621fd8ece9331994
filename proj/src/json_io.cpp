#include "bnec/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace bnec {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix matrix_from_json(const FieldPtr& f, const json& j) {
    Matrix m(f, j.at("rows").get<int>(), j.at("cols").get<int>());
    const json& rows = j.at("data");
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows.at(r).at(c).get<Symbol>();
    return m;
}

std::vector<int> to_one_based(const std::vector<int>& v) {
    std::vector<int> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] + 1;
    return r;
}

std::vector<int> to_zero_based(const json& j) {
    std::vector<int> r;
    for (const auto& x : j) r.push_back(x.get<int>() - 1);
    return r;
}

}  // namespace

std::string code_to_json(const BnecCode& code) {
    json j;
    j["format_version"] = 1;
    json fld;
    fld["q"] = code.field->q();
    fld["characteristic"] = code.field->characteristic();
    fld["degree"] = code.field->degree();
    json poly = json::array();
    if (code.field->is_extension())
        for (unsigned b = 0; b <= code.field->degree(); ++b)
            poly.push_back((code.field->generator_poly() >> b) & 1u);
    fld["generator_poly"] = std::move(poly);
    j["field"] = std::move(fld);
    j["k"] = code.k;
    j["n_virtual"] = code.n_virtual;

    json edges = json::array();
    for (const CodeEdge& e : code.edges) {
        json je;
        je["id"] = e.id;
        je["from"] = e.from;
        je["to"] = e.to;
        je["p_err"] = e.p_err;
        je["p_ers"] = e.p_ers;
        je["virtual"] = e.is_virtual;
        je["in"] = to_one_based(e.in_edges);
        je["lev"] = e.lev;
        je["gev"] = e.gev;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);

    json recvs = json::array();
    for (const ReceiverCode& rc : code.receivers) {
        json jr;
        jr["id"] = rc.id;
        jr["h"] = rc.h;
        jr["delta"] = rc.delta;
        jr["input_edges"] = to_one_based(rc.input_edges);
        jr["active_edges"] = to_one_based(rc.active_edges);
        jr["G"] = matrix_to_json(rc.G);
        jr["K"] = matrix_to_json(rc.K);
        jr["H"] = matrix_to_json(rc.H);
        jr["D"] = matrix_to_json(rc.D);
        recvs.push_back(std::move(jr));
    }
    j["receivers"] = std::move(recvs);
    return j.dump(2);
}

BnecCode code_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid code JSON: ") + e.what());
    }
    try {
        BnecCode code;
        const json& fld = j.at("field");
        unsigned q = fld.at("q").get<unsigned>();
        unsigned degree = fld.at("degree").get<unsigned>();
        if (degree > 1) {
            std::uint32_t poly = 0;
            const json& coeffs = fld.at("generator_poly");
            for (std::size_t b = 0; b < coeffs.size(); ++b)
                if (coeffs.at(b).get<int>()) poly |= 1u << b;
            code.field = Field::make_ext(degree, poly);
        } else {
            code.field = Field::make(q);
        }
        if (code.field->q() != q) throw ParseError("field size mismatch in code dump");
        code.k = j.at("k").get<int>();
        code.n_virtual = j.at("n_virtual").get<int>();
        for (const auto& je : j.at("edges")) {
            CodeEdge e;
            e.id = je.at("id").get<std::string>();
            e.from = je.at("from").get<std::string>();
            e.to = je.at("to").get<std::string>();
            e.p_err = je.at("p_err").get<double>();
            e.p_ers = je.at("p_ers").get<double>();
            e.is_virtual = je.at("virtual").get<bool>();
            e.in_edges = to_zero_based(je.at("in"));
            e.lev = je.at("lev").get<std::vector<Symbol>>();
            e.gev = je.at("gev").get<std::vector<Symbol>>();
            code.edges.push_back(std::move(e));
        }
        for (const auto& jr : j.at("receivers")) {
            ReceiverCode rc;
            rc.id = jr.at("id").get<std::string>();
            rc.h = jr.at("h").get<int>();
            rc.delta = jr.at("delta").get<int>();
            rc.input_edges = to_zero_based(jr.at("input_edges"));
            rc.active_edges = to_zero_based(jr.at("active_edges"));
            rc.G = matrix_from_json(code.field, jr.at("G"));
            rc.K = matrix_from_json(code.field, jr.at("K"));
            rc.H = matrix_from_json(code.field, jr.at("H"));
            rc.D = matrix_from_json(code.field, jr.at("D"));
            code.receivers.push_back(std::move(rc));
        }
        return code;
    } catch (const json::exception& e) {
        throw ParseError(std::string("code dump malformed: ") + e.what());
    }
}

void save_code(const BnecCode& code, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write code file '" + path + "'");
    out << code_to_json(code) << '\n';
}

BnecCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open code file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return code_from_json(ss.str());
}

std::string trace_record_to_json(const TraceRecord& r) {
    json j;
    j["format_version"] = 1;
    j["packet"] = r.packet;
    j["receiver"] = r.receiver;
    j["header"] = r.header;
    j["payload"] = r.payload;
    return j.dump();
}

TraceRecord trace_record_from_json(const std::string& line) {
    try {
        json j = json::parse(line);
        TraceRecord r;
        r.packet = j.at("packet").get<int>();
        r.receiver = j.at("receiver").get<std::string>();
        r.header = j.at("header").get<std::vector<int>>();
        r.payload = j.at("payload").get<std::vector<std::vector<Symbol>>>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("trace record malformed: ") + e.what());
    }
}

namespace {

const char* direction_name(BoundReport::Direction d) {
    switch (d) {
        case BoundReport::Direction::lower_bound: return "lower_bound";
        case BoundReport::Direction::upper_bound: return "upper_bound";
        case BoundReport::Direction::exact: return "exact";
    }
    return "?";
}

BoundReport::Direction direction_from(const std::string& s) {
    if (s == "lower_bound") return BoundReport::Direction::lower_bound;
    if (s == "upper_bound") return BoundReport::Direction::upper_bound;
    if (s == "exact") return BoundReport::Direction::exact;
    throw ParseError("unknown bound direction '" + s + "'");
}

json report_to_json_obj(const BoundReport& r) {
    json j;
    j["format_version"] = 1;
    j["formula"] = r.formula;
    j["parameters"] = r.parameters;
    if (r.bound) j["bound"] = *r.bound;
    if (r.measured) j["measured"] = *r.measured;
    if (r.ci) j["ci"] = {r.ci->first, r.ci->second};
    j["direction"] = direction_name(r.direction);
    j["trials"] = r.trials;
    if (r.clamped) j["clamped"] = true;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

BoundReport report_from_json_obj(const json& j) {
    BoundReport r;
    r.formula = j.at("formula").get<std::string>();
    for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it)
        r.parameters[it.key()] = it.value().get<double>();
    if (j.contains("bound")) r.bound = j.at("bound").get<double>();
    if (j.contains("measured")) r.measured = j.at("measured").get<double>();
    if (j.contains("ci")) r.ci = std::make_pair(j.at("ci").at(0).get<double>(), j.at("ci").at(1).get<double>());
    r.direction = direction_from(j.at("direction").get<std::string>());
    r.trials = j.value("trials", 0LL);
    r.clamped = j.value("clamped", false);
    r.note = j.value("note", std::string{});
    return r;
}

}  // namespace

std::string report_to_json(const BoundReport& r) { return report_to_json_obj(r).dump(2); }

BoundReport report_from_json(const std::string& text) {
    try {
        return report_from_json_obj(json::parse(text));
    } catch (const json::exception& e) {
        throw ParseError(std::string("report malformed: ") + e.what());
    }
}

std::string reports_to_json(const std::vector<BoundReport>& rs) {
    json arr = json::array();
    for (const BoundReport& r : rs) arr.push_back(report_to_json_obj(r));
    return arr.dump(2);
}

std::string reports_to_text(const std::vector<BoundReport>& rs) {
    std::ostringstream out;
    out << std::left << std::setw(34) << "formula" << std::setw(13) << "bound" << std::setw(13) << "measured"
        << std::setw(26) << "wilson-99%" << "direction\n";
    for (const BoundReport& r : rs) {
        out << std::setw(34) << r.formula;
        if (r.bound)
            out << std::setw(13) << std::setprecision(6) << std::fixed << *r.bound;
        else
            out << std::setw(13) << "-";
        if (r.measured)
            out << std::setw(13) << std::setprecision(6) << std::fixed << *r.measured;
        else
            out << std::setw(13) << "-";
        if (r.ci) {
            std::ostringstream ci;
            ci << "[" << std::setprecision(6) << std::fixed << r.ci->first << ", " << r.ci->second << "]";
            out << std::setw(26) << ci.str();
        } else {
            out << std::setw(26) << "-";
        }
        out << direction_name(r.direction);
        if (r.clamped) out << "  (clamped)";
        out << '\n';
    }
    return out.str();
}

namespace {

// base-q radix encoding of a syndrome vector, little-endian digits, decimal text
std::string radix_key(const std::vector<Symbol>& v, unsigned q) {
    unsigned __int128 acc = 0;
    for (std::size_t i = v.size(); i-- > 0;) acc = acc * q + v[i];
    if (acc == 0) return "0";
    std::string s;
    while (acc > 0) {
        s.push_back(char('0' + int(acc % 10)));
        acc /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::vector<Symbol> radix_decode(const std::string& key, unsigned q, int len) {
    unsigned __int128 acc = 0;
    for (char ch : key) acc = acc * 10 + (ch - '0');
    std::vector<Symbol> v(len, 0);
    for (int i = 0; i < len; ++i) {
        v[i] = Symbol(acc % q);
        acc /= q;
    }
    return v;
}

}  // namespace

std::string bd_table_to_json(const BnecCode& code, const std::string& t, const BdTable& table) {
    unsigned q = code.field->q();
    json j;
    j["format_version"] = 1;
    j["receiver"] = t;
    json pats = json::array();
    for (const auto& [pattern, pt] : table.by_pattern) {
        json jp;
        jp["pattern"] = to_one_based(pattern);
        jp["reduced_dim"] = pt.reducer.cols();
        json entries = json::object();
        for (const auto& [key, c] : pt.entries) entries[radix_key(key, q)] = c;
        jp["entries"] = std::move(entries);
        pats.push_back(std::move(jp));
    }
    j["tables"] = std::move(pats);
    return j.dump(2);
}

BdTable bd_table_from_json(const BnecCode& code, const std::string& t, const std::string& text) {
    unsigned q = code.field->q();
    try {
        json j = json::parse(text);
        BdTable table;
        for (const auto& jp : j.at("tables")) {
            BdPatternTable pt;
            pt.pattern = to_zero_based(jp.at("pattern"));
            pt.reducer = pattern_parity(code, t, pt.pattern);
            int dim = jp.at("reduced_dim").get<int>();
            if (dim != pt.reducer.cols()) throw ParseError("table dump inconsistent with code");
            for (auto it = jp.at("entries").begin(); it != jp.at("entries").end(); ++it)
                pt.entries[radix_decode(it.key(), q, dim)] = it.value().get<std::vector<Symbol>>();
            table.by_pattern.emplace(pt.pattern, std::move(pt));
        }
        return table;
    } catch (const json::exception& e) {
        throw ParseError(std::string("table dump malformed: ") + e.what());
    }
}

std::string ml_table_to_json(const BnecCode& code, const std::string& t, const MlTable& table) {
    const ReceiverCode& rc = code.receiver(t);
    unsigned q = code.field->q();
    json j;
    j["format_version"] = 1;
    j["receiver"] = t;
    j["delta"] = rc.delta;
    json entries = json::object();
    for (const auto& [s, e] : table.by_syndrome) {
        json je;
        je["c"] = e.c;
        je["prob"] = e.prob;
        je["min_weight"] = e.min_weight;
        entries[radix_key(s, q)] = std::move(je);
    }
    j["entries"] = std::move(entries);
    j["q"] = q;
    return j.dump(2);
}

MlTable ml_table_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        unsigned q = j.at("q").get<unsigned>();
        int delta = j.at("delta").get<int>();
        MlTable table;
        for (auto it = j.at("entries").begin(); it != j.at("entries").end(); ++it) {
            MlEntry e;
            e.c = it.value().at("c").get<std::vector<Symbol>>();
            e.prob = it.value().at("prob").get<double>();
            e.min_weight = it.value().at("min_weight").get<int>();
            table.by_syndrome[radix_decode(it.key(), q, delta)] = std::move(e);
        }
        return table;
    } catch (const json::exception& e) {
        throw ParseError(std::string("ML table malformed: ") + e.what());
    }
}

std::string content_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace bnec
