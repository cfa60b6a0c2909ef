#include "sseq/report.hpp"

#include <cstdint>
#include <sstream>

#include "sseq/errors.hpp"

namespace sseq {

ReportFormat parse_format(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  throw invalid_error("report: format must be text or json");
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[size_t(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

// one line per leaf, dotted paths for objects and [k] for array slots
void flatten(const nlohmann::ordered_json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    if (j.empty() && !path.empty()) {
      os << path << ": {}\n";
      return;
    }
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(*it, path.empty() ? it.key() : path + "." + it.key(), os);
    return;
  }
  if (j.is_array()) {
    if (j.empty()) {
      os << path << ": []\n";
      return;
    }
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << path << ": ";
  if (j.is_string())
    os << j.get<std::string>();
  else
    os << j.dump();
  os << "\n";
}

}  // namespace

std::string render_report(const Report& r, ReportFormat fmt) {
  if (fmt == ReportFormat::json) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    if (!r.digest.empty()) j["digest"] = r.digest;
    for (auto it = r.body.begin(); it != r.body.end(); ++it) j[it.key()] = *it;
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  if (!r.digest.empty()) os << "digest: " << r.digest << "\n";
  flatten(r.body, "", os);
  os << "elapsed_ms: " << r.elapsed_ms << "\n";
  return os.str();
}

}  // namespace sseq
