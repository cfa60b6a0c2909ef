#pragma once
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "sseq/abelian.hpp"

namespace sseq {

// Bounded cochain complex of presented abelian groups. Groups outside
// [lo, hi] are zero; d^i : C^i -> C^{i+1} and d o d = 0 is verified at
// construction. The zero complex has hi < lo.
class CochainComplex {
 public:
  CochainComplex() : lo_(0) {}
  // differentials[k] is the matrix of d from degree lo+k to degree lo+k+1;
  // exactly groups.size()-1 of them (none for a single-degree complex)
  CochainComplex(int lo, std::vector<Presentation> groups, std::vector<Mat> differentials);

  static CochainComplex zero_complex() { return CochainComplex(); }
  static CochainComplex one_term(int degree, Presentation g);

  int lo() const { return lo_; }
  int hi() const { return lo_ + int(groups_.size()) - 1; }
  bool in_range(int i) const { return i >= lo() && i <= hi(); }
  bool is_zero_complex() const { return groups_.empty(); }
  const Presentation& group(int i) const;
  Homo differential(int i) const;  // zero map outside the range
  Mat differential_matrix(int i) const;

  bool operator==(const CochainComplex& o) const;

 private:
  int lo_ = 0;
  std::vector<Presentation> groups_;
  std::vector<Mat> diffs_;
};

// Degreewise homomorphism commuting with the differentials (verified).
class ChainMap {
 public:
  ChainMap(CochainComplex src, CochainComplex tgt, std::map<int, Mat> components);
  static ChainMap zero(CochainComplex src, CochainComplex tgt);
  static ChainMap identity(const CochainComplex& c);

  const CochainComplex& source() const { return src_; }
  const CochainComplex& target() const { return tgt_; }
  Homo component(int i) const;
  Vec apply(int i, const Vec& x) const { return component(i).apply(x); }
  bool is_injective() const;  // every component injective
  ChainMap compose(const ChainMap& inner) const;

 private:
  CochainComplex src_, tgt_;
  std::map<int, Mat> comps_;
};

// Cohomology of a complex at one degree, with deterministic projection and
// lifting through the stored cocycle subgroup.
class CohomologyData {
 public:
  CohomologyData(int degree, Subgroup cocycles, const Subgroup& boundaries);
  int degree() const { return degree_; }
  const Presentation& group() const { return q_.group(); }
  const Subgroup& cocycles() const { return q_.numerator(); }
  const Subgroup& boundaries() const { return boundaries_; }
  Vec project(const Vec& cocycle) const { return q_.project(cocycle); }
  Vec lift(const Vec& cls) const { return q_.lift(cls); }

 private:
  int degree_;
  Subgroup boundaries_;
  Subquotient q_;
};

CohomologyData cohomology(const CochainComplex& c, int i);

// Decreasing bounded filtration by subcomplexes. Stored levels run over
// [p_min, p_max]; level(p) is clamped to the full complex below p_min and to
// zero above p_max. Construction validates, in order: exhaustiveness
// (F^{p_min} = C), monotonicity (F^{p+1} <= F^p), and d-compatibility
// (d F^p <= F^p), each with its own diagnostic.
class FilteredComplex {
 public:
  struct TruncationProvenance {
    std::shared_ptr<const FilteredComplex> parent;
    std::shared_ptr<const ChainMap> embedding;  // new ambient -> parent ambient
    int j;
  };
  struct MwProvenance {
    std::shared_ptr<const FilteredComplex> source;  // the truncated filtration
    std::shared_ptr<const ChainMap> incl;           // source ambient -> new ambient
    int cut;                                        // levels <= cut are the full new ambient
  };

  FilteredComplex(CochainComplex c, int p_min, int p_max,
                  std::map<std::pair<int, int>, Mat> level_gens);

  // trivial one-level filtration
  static FilteredComplex trivial(CochainComplex c, int level);

  const CochainComplex& complex() const { return c_; }
  int p_min() const { return p_min_; }
  int p_max() const { return p_max_; }
  Subgroup level(int p, int i) const;

  const TruncationProvenance* truncation() const { return trunc_ ? &*trunc_ : nullptr; }
  const MwProvenance* mw() const { return mw_ ? &*mw_ : nullptr; }

 private:
  friend FilteredComplex truncate(const FilteredComplex&, int);
  friend FilteredComplex mw_replace_top(const FilteredComplex&, const CochainComplex&, const ChainMap&, int);
  CochainComplex c_;
  int p_min_, p_max_;
  std::map<std::pair<int, int>, Subgroup> levels_;
  std::optional<TruncationProvenance> trunc_;
  std::optional<MwProvenance> mw_;
};

struct SubcomplexData {
  CochainComplex complex;
  ChainMap inclusion;  // into the ambient complex
};

// The subcomplex F^p C with its inclusion.
SubcomplexData subcomplex_at(const FilteredComplex& f, int p);

// The graded piece F^p / F^{p+1} as a complex, plus the projection from the
// level-p subcomplex.
struct GradedPieceData {
  CochainComplex complex;
  ChainMap projection;  // from subcomplex_at(f, p).complex
};
GradedPieceData graded_piece(const FilteredComplex& f, int p);

// Levels below j are replaced by level j; the ambient complex becomes F^j C.
// Level labels are preserved, so stored levels <= j are full afterwards.
// truncate(truncate(F, j), j') agrees with truncate(F, max(j, j')).
FilteredComplex truncate(const FilteredComplex& f, int j);

// Replace the ambient complex above level j+1: the result has `top` as its
// ambient, levels <= j full, and level p >= j+1 equal to incl(F^p).
// Requires F^p = ambient for every stored p <= j+1 (F built by
// truncate(., j+1)) and incl an injective chain map from F's ambient.
FilteredComplex mw_replace_top(const FilteredComplex& f, const CochainComplex& top,
                               const ChainMap& incl, int j);

// F^p H^n = image(H^n(F^p C) -> H^n(C)) for p in [p_min, p_max+1]; the last
// entry is the zero subgroup. Returned with the ambient cohomology data.
struct CohomologyFiltration {
  CohomologyData h;
  std::map<int, Subgroup> levels;  // subgroups of h.group()
  const Subgroup& level(int p) const;
};
CohomologyFiltration filtration_on_cohomology(const FilteredComplex& f, int n);

}  // namespace sseq
