#pragma once

#include "sseq/complex.hpp"

namespace sseq {

// Small named instances used by the tests and shipped by the command line.

// Z --4--> Z with the order-4 abutment spread over levels 0..2:
// F^1 C^1 = 2Z, F^2 C^1 = 4Z.
FilteredComplex z4_fixture();

// Z/2 --id--> Z/2 with the source at level 0 and the target at level 2; the
// whole cohomology dies, so the stable page must vanish.
FilteredComplex killing_fixture();

// The diagonal band at levels 2..3 in degrees 1..2: both graded layers are
// Z/2 and the first page differential between them is an isomorphism.
// Generator labels follow the cycle the band encodes.
FilteredComplex sl3_band();

// Input bundle for comparison_sequences: the full filtration, its truncation
// at level d, the top replacement above the cut at d, and the vertical map.
struct ComparisonFixture {
  FilteredComplex full;
  FilteredComplex trunc;
  FilteredComplex mw;
  ChainMap v;
  int d;
};

ComparisonFixture z4_comparison_fixture();
ComparisonFixture killing_comparison_fixture();
ComparisonFixture sl3_comparison_fixture();

}  // namespace sseq
