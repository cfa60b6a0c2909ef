#pragma once
#include <json.hpp>
#include <string>

namespace sseq {

// Command output envelope. Everything inside is deterministic for a fixed
// input and version; elapsed_ms is the single exception and is rendered last
// so it is easy to strip when comparing runs.

enum class ReportFormat { text, json };
ReportFormat parse_format(const std::string& name);  // "text" | "json"

// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

struct Report {
  std::string command;  // subcommand echo with its effective arguments
  std::string digest;   // digest of the canonical input serialization; may be empty
  nlohmann::ordered_json body = nlohmann::ordered_json::object();
  long elapsed_ms = 0;
};

std::string render_report(const Report& r, ReportFormat fmt);

}  // namespace sseq
