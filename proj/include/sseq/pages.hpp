#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "sseq/complex.hpp"

namespace sseq {

// Spectral sequence of a bounded filtered cochain complex.
//
// Internal indexing is cohomological: an entry sits at (s, t) where s is the
// filtration level and s + t the total degree, and d_r has bidegree
// (r, 1 - r).  Pages are numbered from r = 1 with E_1^{s,t} = H^{s+t}(gr^s).
// Reports and the recursion below also use the presentation-facing indexing
// in which a spot is written (p, q) = (total degree, level) and pages are
// numbered from 2; the translation helpers keep the two in sync.

inline int display_page(int internal_r) { return internal_r + 1; }
inline int internal_page(int display_n) { return display_n - 1; }
inline std::pair<int, int> internal_position(int p, int q) { return {q, p - q}; }
inline std::pair<int, int> display_position(int s, int t) { return {s + t, s}; }

// Z_r^{s,t} = F^s C^n  ∩  d^{-1}(F^{s+r} C^{n+1}) with n = s + t.  Levels are
// clamped outside [p_min, p_max], so the formula is meaningful for any r >= 0.
Subgroup z_lattice(const FilteredComplex& f, int r, int s, int n);

// Image of d^{n-1} restricted to Z_r^{s, n-1-s}, as a subgroup of C^n.
Subgroup boundary_lattice(const FilteredComplex& f, int r, int s, int n);

// One spot on a page, remembered together with the cocycle lattices that
// present it: classes = numerator / denominator inside C^{s+t}.
struct PageEntry {
  Subgroup numerator;
  Subgroup denominator;
  Subquotient classes;

  const Presentation& group() const { return classes.group(); }
  Vec project(const Vec& ambient) const { return classes.project(ambient); }
  Vec lift(const Vec& cls) const { return classes.lift(cls); }
};

class Page {
 public:
  Page(std::shared_ptr<const FilteredComplex> f, int r);

  int r() const { return r_; }
  int display_r() const { return display_page(r_); }
  const FilteredComplex& filtration() const { return *f_; }
  const std::shared_ptr<const FilteredComplex>& shared_filtration() const { return f_; }

  // Entry at internal position (s, t); spots outside the stored rectangle are
  // zero and get materialized on demand.
  PageEntry entry(int s, int t) const;
  // d_r at (s, t), landing in (s + r, t - r + 1).
  Homo differential(int s, int t) const;

  PageEntry entry_display(int p, int q) const;
  Homo differential_display(int p, int q) const;

  const std::map<std::pair<int, int>, PageEntry>& entries() const { return entries_; }

 private:
  std::shared_ptr<const FilteredComplex> f_;
  int r_;
  std::map<std::pair<int, int>, PageEntry> entries_;
};

Page page(const FilteredComplex& f, int r);

// Pages 1..r_stop sharing one copy of the filtration, so that the maps below
// can connect consecutive pages.
std::vector<Page> pages_up_to(const FilteredComplex& f, int r_stop);

// Given an ambient representative of a d_r-cycle at (s, t), return a
// representative of the same class lying in Z_{r+1}^{s,t}.
Vec adjust_representative(const Page& cur, int s, int t, const Vec& ambient_cycle);

// ker(d_r at (s,t)) -> E_{r+1}^{s,t}, the reindexing that carries a surviving
// class to its avatar on the next page.  Surjective with kernel im(d_r).
Homo survivor_map(const Page& cur, const Page& next, int s, int t);

// Same map on the whole entry; requires the outgoing d_r to vanish there.
Homo transport_map(const Page& cur, const Page& next, int s, int t);

// Composite of transport maps pages[from] -> pages[from+1] -> ... -> pages[to].
Homo transport_to(const std::vector<Page>& pages, size_t from, size_t to, int s, int t);

// E_{r+1} recomputed as ker/im of d_r inside E_r, with the exhibited
// isomorphism onto the lattice-built next page.
struct PageHomology {
  Subgroup cycles;       // inside the page-r entry
  Subgroup boundaries;   // inside the page-r entry
  Subquotient classes;   // cycles / boundaries
  Homo to_page;          // classes.group() -> E_{r+1} entry, an isomorphism
};

PageHomology page_homology(const Page& cur, const Page& next, int s, int t);

struct HomologyPage {
  int r;  // the page being recomputed, internal index
  std::map<std::pair<int, int>, PageHomology> entries;
};

// Page r built by the alternative recursion E_r = H(E_{r-1}, d_{r-1}); every
// entry carries an isomorphism onto the directly built page.
HomologyPage page_by_homology(const FilteredComplex& f, int r);

// Pages up to the certified stable index: the lattices of pages stable_r and
// stable_r + 1 are compared literally, not inferred from invariants.
struct StablePage {
  std::vector<Page> pages;  // internal 1 .. stable_r + 1
  int stable_r;

  const Page& infinity() const { return pages[size_t(stable_r) - 1]; }
  const Page& at(int r) const { return pages[size_t(r) - 1]; }
};

StablePage e_infinity(const FilteredComplex& f);

// Convergence: for every spot, an isomorphism from the stable entry onto the
// corresponding graded piece of the filtration on cohomology, built by
// pushing numerator generators through the projection to cohomology.
struct ConvergenceData {
  StablePage stable;
  std::map<int, CohomologyFiltration> filtrations;      // keyed by total degree
  std::map<std::pair<int, int>, Subquotient> graded;    // F^s H^n / F^{s+1} H^n, key (s, n)
  std::map<std::pair<int, int>, Homo> isos;             // stable entry -> graded piece
};

ConvergenceData verify_convergence(const FilteredComplex& f);

// Map of pages induced by a filtration-compatible chain map g between the
// underlying complexes; src and tgt must be pages of the same index r.
Homo induced_page_map(const Page& src, const Page& tgt, const ChainMap& g, int s, int t);

// The interpolating subgroup tower at the column one step left of the
// diagonal.  Stage n (display numbering, n >= 2) records
//   g     inside E_{n-1} for n >= 3 (inside E_2 for n = 2): the classes still
//         alive before reindexing,
//   gbar  inside E_n: their images on page n.
// Stage 2 is the image of the reduction map; afterwards
// g_{n+1} = gbar_n ∩ ker d_n and gbar_{n+1} is its survivor image.
struct GbarStage {
  int n;
  Subgroup g;
  Subgroup gbar;
};

struct GbarTower {
  int j;         // the tower lives at display spot (j-1, j)
  int stable_n;  // display index of the certified stable page
  std::vector<Page> pages;  // internal 1 .. stable
  std::vector<GbarStage> stages;  // display n = 2 .. stable_n
};

// Core recursion on an already built family of pages of the source filtration.
GbarTower gbar_tower_on(std::vector<Page> pages, int j, const Homo& reduction);

// f_mw must come from mw_replace_top with cut j; the recursion runs in the
// pages of the filtration the replacement was derived from.  reduction must
// land in the page-2 entry at display spot (j-1, j) of those pages.
GbarTower gbar_tower(const FilteredComplex& f_mw, int j, const Homo& reduction);

// Comparison of the three spectral sequences attached to a filtered complex
// concentrated in degrees <= d: the full one, the truncation at level d, and
// the top replacement above the cut at d.  Verifies, with exhibited maps:
//   - the stable diagonal entry of each modified sequence is its page-2 entry;
//   - for 1 <= n and 2 <= m <= n+1 the entries at display (d, d+n) of the
//     modified sequences agree with the full one via the induced page maps;
//   - both rows  E_{n+1}^{(d-1,d)} -> E_{n+1}^{(d,d+n)} -> E_inf(modified) -> 0
//     are exact, the second with the differential restricted to gbar_{n+1};
//   - the vertical map induces epimorphisms E_inf(mw) ->> E_inf(trunc) on the
//     diagonal and at every (d, d+n), commuting with the rows;
//   - whenever every gbar_{n+1} is the whole entry, those epimorphisms are
//     isomorphisms for n >= 1.
struct ComparisonJoint {
  int n;
  Homo ident_trunc;        // page n+1 at (d, d+n): trunc -> full, isomorphism
  Homo ident_mw;           // page n+1 at (d, d+n): mw -> full, isomorphism
  Homo diff;               // d_{n+1}^{(d-1,d)} on the full pages
  Homo restricted_diff;    // the same on gbar_{n+1}
  Homo to_trunc_infinity;  // full page n+1 entry ->> stable trunc entry
  Homo to_mw_infinity;     // full page n+1 entry ->> stable mw entry
  Homo epi;                // stable mw entry ->> stable trunc entry
  bool gbar_full;
  bool epi_iso;
};

struct ComparisonReport {
  int d;
  Homo trunc_diag;  // page 2 -> stable at display (d, d), isomorphism
  Homo mw_diag;     // same for the replacement
  Homo reduction;   // page-2 map mw -> full at display (d-1, d)
  GbarTower tower;
  std::vector<ComparisonJoint> joints;  // n = 1 .. p_max - d
  Homo epi_diag;    // stable mw ->> stable trunc at display (d, d)
};

ComparisonReport comparison_sequences(const FilteredComplex& f_full,
                                      const FilteredComplex& f_trunc,
                                      const FilteredComplex& f_mw, int d,
                                      const ChainMap& v);

}  // namespace sseq
