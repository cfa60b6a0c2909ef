#pragma once
#include <vector>

#include "sseq/pages.hpp"

namespace sseq {

// A degree-d cohomology class handed over as a cocycle in the generator
// coordinates of that degree.
struct CohomologyClass {
  int degree;
  Vec cocycle;
};

// One stage of the obstruction tower: the image of the class in the graded
// quotient at one filtration level, recorded both in stable-page coordinates
// and as a direct quotient image.  Stage n reads off level p_min + n.
struct ObstructionStage {
  int n;
  int level;
  Vec value;   // coordinates in the stable page entry at this level
  Vec direct;  // the same class in F^level H / F^(level+1) H
  bool zero;
};

// Successive obstructions of a class: stage n is defined once stages
// 0..n-1 vanish, which forces the class into the next filtration level.
// Computation stops at the first nonzero stage.  Stages beyond the
// filtration width are zero (the filtration is exhausted), so a tower that
// runs through every level with all stages zero certifies that the class
// itself is zero; the verdict is checked against the direct test.
struct ObstructionTower {
  int degree;
  Vec alpha;  // the class in cohomology coordinates
  std::vector<ObstructionStage> stages;
  bool vanishes = false;
  int first_nonzero = -1;  // -1 when the tower vanishes
};

ObstructionTower obstruction_tower(const FilteredComplex& f, const CohomologyClass& alpha, int d);
// Same, over convergence data computed once and shared across many classes.
ObstructionTower obstruction_tower(const FilteredComplex& f, const ConvergenceData& cv,
                                   const CohomologyClass& alpha, int d);

// Sweeps classes in degree d and checks (class = 0) <=> (tower vanishes):
// every element when the group is finite of order <= 1024, otherwise a
// seeded sample plus all generators.
struct VanishingReport {
  int degree;
  bool exhaustive;
  long checked;
  bool passed;
};

VanishingReport vanishing_equivalence(const FilteredComplex& f, int d, unsigned seed = 0);

// A declared 2-cohomological dimension s promises that stages n >= s carry
// nothing.  stage_bound returns the last decisive stage, s - 1;
// check_stage_bound verifies the promise against the stable page and
// reports violations instead of trusting the declaration.
int stage_bound(int d, int s);

struct StageBoundCheck {
  int bound;
  bool respected;
  std::vector<int> violations;  // stages n >= s with a nonzero stable entry
};

StageBoundCheck check_stage_bound(const FilteredComplex& f, int d, int s);

// The secondary obstruction pipeline: an integral group reduces onto a mod-2
// group, an operation maps the mod-2 group into the target degree, and the
// obstruction of a lifted class lives in the cokernel of the composite.
struct SecondaryPipeline {
  Presentation integral_group;
  Presentation mod2_group;
  Homo reduction;    // integral_group -> mod2_group
  Homo operation;    // mod2_group -> target
  Vec lifted_class;  // element of operation's target
};

struct SecondaryObstruction {
  Presentation cokernel;
  Vec value;        // class of the lifted element
  Homo projection;  // target ->> cokernel
  bool zero;
};

SecondaryObstruction secondary_obstruction(const SecondaryPipeline& p);

}  // namespace sseq
