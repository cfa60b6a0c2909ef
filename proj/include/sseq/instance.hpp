#pragma once
#include <optional>
#include <string>

#include "sseq/complex.hpp"
#include "sseq/obstruction.hpp"

namespace sseq {

// On-disk instances: a filtered complex with optional declared bounds, plus
// an optional secondary-obstruction block. The format is JSON with explicit
// row-major integer matrices and a format_version field; serialization is
// canonical, so schema-valid files round-trip byte for byte.

struct InstanceMetadata {
  std::optional<int> d;  // declared dimension: the degree the tower reads
  std::optional<int> s;  // declared bound on the decisive stages
  std::optional<std::string> twist;

  bool operator==(const InstanceMetadata& o) const {
    return d == o.d && s == o.s && twist == o.twist;
  }
};

struct SecondaryBlock {
  Presentation integral;
  Presentation mod2;
  Presentation target;
  Mat reduction;  // integral -> mod2
  Mat operation;  // mod2 -> target
  Vec lifted;     // element of target

  bool operator==(const SecondaryBlock& o) const;
};

struct Instance {
  std::string format_version;
  InstanceMetadata metadata;
  FilteredComplex filtration;
  std::optional<SecondaryBlock> secondary;

  bool operator==(const Instance& o) const;
};

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& ins);

Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& ins, const std::string& path);

// Checked assembly of the block into the pipeline the library runs.
SecondaryPipeline secondary_pipeline(const SecondaryBlock& b);

// Named instances shipped with the binary: "z4", "killing", "sl3", and
// "secondary" (a plain band whose twisted operation vanishes, leaving the
// whole target as the cokernel).
Instance fixture_instance(const std::string& name);

}  // namespace sseq
