#pragma once
#include <stdexcept>
#include <string>

namespace sseq {

// One exception type, tagged so the CLI can map failures to exit codes:
// structural -> 1 (input violates a documented invariant),
// unsupported -> 2 (outside the supported model range),
// invalid/internal -> 1 with the message verbatim.
class error : public std::runtime_error {
 public:
  enum class kind { invalid, structural, unsupported, internal };
  error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

inline error invalid_error(const std::string& msg) { return error(error::kind::invalid, msg); }
inline error structural_error(const std::string& msg) { return error(error::kind::structural, msg); }
inline error unsupported_error(const std::string& msg) { return error(error::kind::unsupported, msg); }
inline error internal_error(const std::string& msg) { return error(error::kind::internal, msg); }

}  // namespace sseq
