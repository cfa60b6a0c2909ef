#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace sseq {

// Full command surface of the sseq binary. The vector form drives the same
// code with captured streams, which is how the tests exercise it; argv[0] is
// not part of args. Returns the process exit code: 0 ok, 1 invalid input or
// violated invariant, 2 unsupported model.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace sseq
