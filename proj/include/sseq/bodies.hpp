#pragma once
#include <optional>
#include <string>
#include <vector>

#include "sseq/instance.hpp"

namespace sseq {

// Report bodies shared by the command line and the python module, as compact
// JSON text. The CLI wraps the same objects in its envelope (command, digest,
// elapsed_ms); here the body stands alone, so the output is fully
// deterministic for a fixed input.

std::string validate_body(const Instance& ins);

// Pages 2..r_max plus the certified stable page and the filtered cohomology.
std::string pages_body(const Instance& ins, int r_max, int threads);

// Successive obstructions of the cocycle; degree defaults to the declared d.
std::string tower_body(const Instance& ins, std::optional<int> degree,
                       const std::vector<long>& cls);

std::string secondary_body(const Instance& ins);

// Squaring operation on a ring spec ("name:bound,..."), twist and class given
// as sums of monomials like "a*b^2 + a^2*b", with "0" and "1" allowed.
std::string sq2_body(const std::string& ring_spec, const std::string& twist_spec,
                     const std::string& class_spec);

}  // namespace sseq
