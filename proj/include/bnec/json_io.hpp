#pragma once

#include <iosfwd>
#include <string>

#include "bnec/analysis.hpp"
#include "bnec/code.hpp"

namespace bnec {

// Code dump: field parameters, edge indexing with local/global encoding vectors,
// and per-receiver G/K/H/D matrices as integer element codes. Lossless
// round-trip; edge indices in the file are 1-based.
std::string code_to_json(const BnecCode& code);
BnecCode code_from_json(const std::string& text);
void save_code(const BnecCode& code, const std::string& path);
BnecCode load_code(const std::string& path);

// Packet trace: one JSON line per (packet, receiver) with the header edge
// indices (1-based noise indices) and the payload element codes.
struct TraceRecord {
    int packet = 0;
    std::string receiver;
    std::vector<int> header;                        // 1-based noise indices
    std::vector<std::vector<Symbol>> payload;       // one row per symbol time
};

std::string trace_record_to_json(const TraceRecord& r);
TraceRecord trace_record_from_json(const std::string& line);

std::string report_to_json(const BoundReport& r);
BoundReport report_from_json(const std::string& text);
std::string reports_to_json(const std::vector<BoundReport>& rs);
std::string reports_to_text(const std::vector<BoundReport>& rs);

// BD / ML table dumps keyed by the base-q radix encoding of the (reduced)
// syndrome, rendered in decimal.
std::string bd_table_to_json(const BnecCode& code, const std::string& t, const BdTable& table);
BdTable bd_table_from_json(const BnecCode& code, const std::string& t, const std::string& text);
std::string ml_table_to_json(const BnecCode& code, const std::string& t, const MlTable& table);
MlTable ml_table_from_json(const std::string& text);

// FNV-1a 64 fingerprint of a canonical serialization (not cryptographic).
std::string content_hash(const std::string& text);

}  // namespace bnec
