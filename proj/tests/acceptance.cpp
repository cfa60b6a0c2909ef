// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every check is exact; the stated time budgets are enforced as part of the
// verdict.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "sseq/chow.hpp"
#include "sseq/fixtures.hpp"
#include "sseq/instance.hpp"
#include "sseq/milnor.hpp"
#include "sseq/obstruction.hpp"
#include "sseq/pages.hpp"
#include "support.hpp"

using namespace sseq;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  long count = 0;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
    ++count;
  }
};

long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string spot(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

// shared pool of small random filtered complexes: degrees 0..3, levels 0..2,
// every group on at most three generators, torsion coefficients in [2, 4]
std::vector<FilteredComplex> build_pool(int size) {
  std::mt19937 rng(2026u);
  std::vector<FilteredComplex> pool;
  while (int(pool.size()) < size) {
    FilteredComplex f = sseq_test::random_filtered(rng);
    bool small = true;
    for (int d = f.complex().lo(); d <= f.complex().hi(); ++d)
      small = small && f.complex().group(d).generators() <= 3;
    if (small) pool.push_back(std::move(f));
  }
  return pool;
}

// the stable page entry at every spot against the graded piece of the
// filtration on cohomology, plus the page recursion E_{r+1} = H(E_r, d_r)
void criterion_convergence(const std::vector<FilteredComplex>& pool, Check& c) {
  for (size_t i = 0; i < pool.size(); ++i) {
    const FilteredComplex& f = pool[i];
    ConvergenceData cv = verify_convergence(f);
    for (const auto& [key, piece] : cv.graded) {
      auto [s, n] = key;
      PageEntry entry = cv.stable.infinity().entry(s, n - s);
      c.require(invariants(entry.group()) == invariants(piece.group()),
                "instance " + std::to_string(i) + ": stable entry and graded piece differ at " +
                    spot(s, n));
      auto it = cv.isos.find(key);
      if (it != cv.isos.end())
        c.require(it->second.is_isomorphism(),
                  "instance " + std::to_string(i) + ": comparison map fails at " + spot(s, n));
      else
        c.require(invariants(entry.group()).is_zero(),
                  "instance " + std::to_string(i) + ": nonzero entry without a map at " +
                      spot(s, n));
    }
    for (int r = 2; r <= std::min(cv.stable.stable_r + 1, 5); ++r) {
      HomologyPage hp = page_by_homology(f, r);
      for (const auto& [pos, ph] : hp.entries)
        c.require(ph.to_page.is_isomorphism(),
                  "instance " + std::to_string(i) + ": page " + std::to_string(r) +
                      " is not the homology of its predecessor at " +
                      spot(pos.first, pos.second));
    }
  }
}

// a class is zero exactly when every stage of its tower is zero; exhaustive
// whenever the degree group is finite of order at most 1024
void criterion_vanishing(const std::vector<FilteredComplex>& pool, Check& c) {
  long exhaustive = 0;
  for (size_t i = 0; i < pool.size(); ++i) {
    const FilteredComplex& f = pool[i];
    for (int d = f.complex().lo(); d <= f.complex().hi(); ++d) {
      Invariants inv = invariants(cohomology(f.complex(), d).group());
      bool small = inv.free_rank == 0;
      long order = 1;
      if (small)
        for (const Int& t : inv.torsion) {
          order *= t.get_si();
          if (order > 1024) {
            small = false;
            break;
          }
        }
      VanishingReport rep = vanishing_equivalence(f, d, 7);
      c.require(rep.passed, "instance " + std::to_string(i) + ", degree " + std::to_string(d) +
                                ": a class and its tower disagree");
      c.require(rep.exhaustive == small,
                "instance " + std::to_string(i) + ", degree " + std::to_string(d) +
                    ": small group not swept exhaustively");
      if (rep.exhaustive) ++exhaustive;
    }
  }
  c.require(exhaustive > long(pool.size()),  // well over one exhaustive sweep per instance
            "too few exhaustive sweeps to be meaningful");
}

void check_comparison(const ComparisonFixture& fx, const std::string& name, Check& c) {
  ComparisonReport rep = comparison_sequences(fx.full, fx.trunc, fx.mw, fx.d, fx.v);
  c.require(rep.trunc_diag.is_isomorphism(), name + ": truncated diagonal entry moved");
  c.require(rep.mw_diag.is_isomorphism(), name + ": replaced diagonal entry moved");
  c.require(rep.epi_diag.is_surjective(), name + ": diagonal comparison not onto");
  for (const auto& j : rep.joints) {
    std::string at = name + ", row " + std::to_string(j.n);
    c.require(j.ident_trunc.is_isomorphism(), at + ": truncated entry differs from the full one");
    c.require(j.ident_mw.is_isomorphism(), at + ": replaced entry differs from the full one");
    c.require(j.to_trunc_infinity.is_surjective(), at + ": truncated row not onto");
    c.require(j.to_mw_infinity.is_surjective(), at + ": replaced row not onto");
    c.require(is_exact(j.diff, j.to_trunc_infinity), at + ": truncated row inexact");
    c.require(is_exact(j.restricted_diff, j.to_mw_infinity), at + ": replaced row inexact");
    c.require(j.epi.is_surjective(), at + ": vertical map not onto");
    c.require(j.epi.compose(j.to_mw_infinity).equals(j.to_trunc_infinity),
              at + ": vertical map fails to commute");
    if (j.gbar_full)
      c.require(j.epi_iso && j.epi.is_isomorphism(),
                at + ": full interpolation tower without an isomorphism");
  }
}

void criterion_comparison(Check& c) {
  check_comparison(z4_comparison_fixture(), "extension bundle", c);
  check_comparison(killing_comparison_fixture(), "cancellation bundle", c);
  check_comparison(sl3_comparison_fixture(), "band bundle", c);
  std::mt19937 rng(424242u);
  for (int trial = 0; trial < 50; ++trial)
    check_comparison(sseq_test::random_comparison(rng), "random bundle " + std::to_string(trial),
                     c);
}

void criterion_band(Check& c) {
  FilteredComplex f = sl3_band();
  std::vector<Page> pgs = pages_up_to(f, internal_page(3));
  const Page& p2 = pgs[size_t(internal_page(2)) - 1];
  const Page& p3 = pgs[size_t(internal_page(3)) - 1];
  Invariants two{0, {Int(2)}};
  c.require(invariants(p2.entry_display(1, 2).group()) == two, "page 2 entry (1,2) is not Z/2");
  c.require(invariants(p2.entry_display(2, 3).group()) == two, "page 2 entry (2,3) is not Z/2");
  c.require(p2.differential_display(1, 2).is_isomorphism(),
            "the page 2 differential is not an isomorphism");
  for (const auto& [pos, e] : p3.entries())
    c.require(invariants(e.group()).is_zero(), "page 3 keeps a nonzero entry");
  StablePage st = e_infinity(f);
  for (const auto& [pos, e] : st.infinity().entries())
    c.require(invariants(e.group()).is_zero(), "the stable page keeps a nonzero entry");
}

void criterion_line(Check& c) {
  for (long q : {3L, 5L}) {
    Invariants expect_h0{0, {Int(q - 1)}};  // the constants
    Invariants expect_h1{1, {}};
    Invariants prev_h1;
    int d_top = q == 3 ? 4 : 3;  // at q = 5 the bound-5 residue fields leave the table range;
                                 // the run at D = 3 still certifies the step to D = 4 internally
    for (int d = 1; d <= d_top; ++d) {
      std::string at = "q=" + std::to_string(q) + ", D=" + std::to_string(d);
      GerstenPair gp = gersten_pair(LineSpace::projective, q, 1, d);
      CohomologyData h0 = cohomology(gp.integral.complex, 0);
      CohomologyData h1 = cohomology(gp.integral.complex, 1);
      CohomologyData m1 = cohomology(gp.mod2.complex, 1);
      c.require(invariants(h0.group()) == expect_h0, at + ": degree-0 group is not the constants");
      c.require(invariants(h1.group()) == expect_h1, at + ": degree-1 group is not Z");
      c.require(invariants(m1.group()) == Invariants{0, {Int(2)}},
                at + ": mod-2 degree-1 group is not Z/2");
      if (d > 1)
        c.require(invariants(h1.group()) == prev_h1, at + ": raising the bound moved the group");
      prev_h1 = invariants(h1.group());

      int n = h1.group().generators();
      Mat m = Mat::zero(m1.group().generators(), n);
      for (int j = 0; j < n; ++j) {
        Vec e(size_t(n), Int(0));
        e[size_t(j)] = 1;
        Vec img = m1.project(gp.reduction.apply(1, h1.lift(e)));
        for (int i = 0; i < m1.group().generators(); ++i) m.at(i, j) = img[size_t(i)];
      }
      c.require(Homo(h1.group(), m1.group(), m).is_surjective(),
                at + ": the mod-2 reduction is not onto");
    }
  }
}

void criterion_symbols(Check& c) {
  for (long q : {3L, 5L}) {
    KGroup k2 = kgroup(FieldModel::finite(q), 2, true);
    c.require(invariants(k2.group).is_zero(),
              "the weight-2 group of F" + std::to_string(q) + " mod 2 is nonzero");
    // sweep every symbol through the presented group
    for (long a = 1; a < q; ++a)
      for (long b = 1; b < q; ++b) {
        Symbol s = make_symbol(FieldModel::finite(q), 2, {{elem(a), elem(b)}});
        c.require(k2.group.is_element_zero(k2.coords(normalize(s))),
                  "a symbol escaped the zero group over F" + std::to_string(q));
      }
  }

  for (long q : {3L, 5L}) {
    FieldModel R = FieldModel::rational(q);
    std::vector<Poly> pool;
    for (int d = 1; d <= 2; ++d)
      for (const Poly& p : monic_irreducibles(R.k, d)) pool.push_back(p);
    long units = q - 1;
    for (size_t i = 0; i < pool.size(); ++i) {
      for (long u = 1; u <= units; ++u) {
        RatFunc f = ratfunc(pmul(pool[i], poly_const(R.k, u)), poly_const(R.k, 1));
        c.require(reciprocity_holds(make_symbol(R, 1, {{elem(f)}}), 3),
                  "a weight-1 residue sum missed zero over F" + std::to_string(q));
      }
      for (size_t j = i; j < pool.size() && j < i + 6; ++j) {
        RatFunc f = rf_poly(pool[i]);
        RatFunc g = ratfunc(pool[j], pool[(j + 1) % pool.size()]);
        c.require(reciprocity_holds(make_symbol(R, 2, {{elem(f), elem(g)}}), 3),
                  "a weight-2 residue sum missed zero over F" + std::to_string(q));
      }
    }
  }
}

// the second page differential of the assembled band against the operation,
// column by column in ambient monomial coordinates
void check_band_assembly(const ChowRing& r, const ChowClass& c1, int lo, int hi,
                         const std::string& name, Check& c) {
  FilteredComplex f = diagonal_differential_assembly(r, c1, lo, hi);
  Page p2 = page(f, internal_page(2));
  for (int p = lo; p <= hi; ++p) {
    PageEntry src = p2.entry_display(p, p);
    PageEntry tgt = p2.entry_display(p + 1, p + 1);
    Homo d = p2.differential_display(p, p);
    Mat phim = twisted_phi_matrix(r, c1, p);
    size_t nb = r.basis(p).size();
    for (size_t j = 0; j < nb; ++j) {
      Vec amb(nb, Int(0));
      amb[j] = 1;
      c.require(tgt.group().elements_equal(d.apply(src.project(amb)),
                                           tgt.project(phim.apply(amb))),
                name + ": the page 2 differential differs from the operation at degree " +
                    std::to_string(p));
    }
  }
  for (int p = lo; p <= hi + 1; ++p)
    for (int off = -2; off <= 2; ++off)
      if (off != 0)
        c.require(invariants(p2.entry_display(p, p + off).group()).is_zero(),
                  name + ": an off-diagonal spot carries a group");
}

void criterion_operations(Check& c) {
  for (int n = 1; n <= 8; ++n) {
    ChowRing r = ChowRing::projective(n);
    ChowClass h = chow_var(r, 0);
    for (int i = 0; i <= n; ++i) {
      ChowClass hi = chow_pow(h, i);
      ChowClass expect = i % 2 ? chow_pow(h, i + 1) : chow_zero(r, i + 1);
      c.require(sq2(hi) == expect, "squaring h^" + std::to_string(i) + " on P^" +
                                       std::to_string(n) + " misses the closed form");
    }
    for (const ChowClass& t : {chow_zero(r, 1), h}) {
      for (int p = 0; p <= n; ++p)
        for (const ChowClass& x : {chow_zero(r, p), chow_pow(h, p)}) {
          c.require(twisted_phi(t, twisted_phi(t, x)).is_zero(),
                    "the twisted operation fails to square to zero on P^" + std::to_string(n));
          c.require(twisted_phi(t, x) == chow_add(sq2(x), chow_mul(t, x)),
                    "the twisted operation differs from square plus cup on P^" +
                        std::to_string(n));
        }
    }
  }
  ChowRing p4 = ChowRing::projective(4);
  ChowRing p8 = ChowRing::projective(8);
  check_band_assembly(p4, chow_zero(p4, 1), 1, 1, "plain band on P^4", c);
  check_band_assembly(p4, chow_var(p4, 0), 2, 2, "twisted band on P^4", c);
  check_band_assembly(p8, chow_var(p8, 0), 0, 7, "full band on P^8", c);

  // the long band collapses one step later exactly where the operation has
  // homology: the top monomial of even degree
  StablePage st = e_infinity(diagonal_differential_assembly(p8, chow_var(p8, 0), 0, 7));
  for (const auto& [pos, e] : st.infinity().entries()) {
    Invariants inv = invariants(e.group());
    if (pos == std::pair<int, int>{8, 0})
      c.require(inv == Invariants{0, {Int(2)}}, "the surviving top class is not Z/2");
    else
      c.require(inv.is_zero(), "an unexpected class survives on the long band");
  }
}

void check_secondary_agreement(const ChowRing& r, const ChowClass& c1, int hi,
                               const std::string& name, Check& c) {
  int k = int(r.basis(hi).size());
  int m = int(r.basis(hi + 1).size());
  SecondaryBlock b{Presentation::free_group(k),      chow_group(r, hi), chow_group(r, hi + 1),
                   Mat::identity(k),                 twisted_phi_matrix(r, c1, hi),
                   Vec(size_t(m), Int(0))};
  SecondaryObstruction so = secondary_obstruction(secondary_pipeline(b));
  StablePage st = e_infinity(diagonal_differential_assembly(r, c1, 0, hi));
  PageEntry top = st.infinity().entry_display(hi + 1, hi + 1);
  c.require(invariants(so.cokernel) == invariants(top.group()),
            name + ": cokernel and stable entry differ");
  for (int j = 0; j < m; ++j) {
    Vec e(size_t(m), Int(0));
    e[size_t(j)] = 1;
    c.require(so.cokernel.is_element_zero(so.projection.apply(e)) ==
                  top.group().is_element_zero(top.project(e)),
              name + ": a class dies on one side only");
  }
}

void criterion_secondary(Check& c) {
  for (int n = 1; n <= 6; ++n) {
    ChowRing r = ChowRing::projective(n);
    for (int tw = 0; tw <= 1; ++tw) {
      ChowClass c1 = tw ? chow_var(r, 0) : chow_zero(r, 1);
      for (int hi = 0; hi < n; ++hi)
        check_secondary_agreement(r, c1, hi,
                                  "P^" + std::to_string(n) + (tw ? " twisted" : " plain") +
                                      ", degree " + std::to_string(hi + 1),
                                  c);
    }
  }

  // the shipped instance: both routes see the same Z/2 and the same verdict
  Instance ins = fixture_instance("secondary");
  SecondaryObstruction so = secondary_obstruction(secondary_pipeline(*ins.secondary));
  StablePage st = e_infinity(ins.filtration);
  PageEntry top = st.infinity().entry_display(2, 2);
  c.require(invariants(so.cokernel) == Invariants{0, {Int(2)}},
            "the shipped block yields the wrong cokernel");
  c.require(invariants(so.cokernel) == invariants(top.group()),
            "the shipped block disagrees with its own band");
  c.require(!so.zero && !top.group().is_element_zero(top.project(ins.secondary->lifted)),
            "the shipped class vanished");

  // a dimension-one target leaves no room: the cokernel is the zero group
  ChowRing p1 = ChowRing::projective(1);
  for (int tw = 0; tw <= 1; ++tw) {
    ChowClass c1 = tw ? chow_var(p1, 0) : chow_zero(p1, 1);
    SecondaryBlock b{Presentation::free_group(1), chow_group(p1, 1), chow_group(p1, 2),
                     Mat::identity(1), twisted_phi_matrix(p1, c1, 1), Vec{}};
    SecondaryObstruction so1 = secondary_obstruction(secondary_pipeline(b));
    c.require(invariants(so1.cokernel).is_zero() && so1.zero,
              "the dimension-one cokernel is not the zero group");
    StablePage st1 = e_infinity(diagonal_differential_assembly(p1, c1, 0, 1));
    c.require(invariants(st1.infinity().entry_display(2, 2).group()).is_zero(),
              "the dimension-one stable entry is not zero");
  }
}

void criterion_stage_bounds(const std::vector<FilteredComplex>& pool, Check& c) {
  for (const char* name : {"z4", "killing"}) {
    Instance ins = fixture_instance(name);
    StageBoundCheck chk = check_stage_bound(ins.filtration, *ins.metadata.d, *ins.metadata.s);
    c.require(chk.respected && chk.violations.empty(),
              std::string(name) + ": the declared bound is wrongly flagged");
  }
  StageBoundCheck bad = check_stage_bound(z4_fixture(), 1, 1);
  c.require(!bad.respected && bad.violations == std::vector<int>{1},
            "an undersized declaration slipped through");

  for (size_t i = 0; i < 50 && i < pool.size(); ++i) {
    const FilteredComplex& f = pool[i];
    for (int d = f.complex().lo(); d <= f.complex().hi(); ++d) {
      std::string at = "instance " + std::to_string(i) + ", degree " + std::to_string(d);
      StageBoundCheck base = check_stage_bound(f, d, 0);  // lists every nonzero stage
      c.require(base.respected == base.violations.empty(), at + ": verdict and list disagree");
      int last = base.violations.empty() ? -1 : base.violations.back();
      c.require(check_stage_bound(f, d, last + 1).respected,
                at + ": the true bound is wrongly flagged");
      if (last >= 0) {
        StageBoundCheck tight = check_stage_bound(f, d, last);
        c.require(!tight.respected && !tight.violations.empty() &&
                      tight.violations.back() == last,
                  at + ": an undersized bound escaped unflagged");
      }
    }
  }
}

struct Criterion {
  std::string title;
  long budget_ms;  // 0 = no stated budget
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  std::vector<FilteredComplex> pool = build_pool(200);

  std::vector<Criterion> criteria{
      {"stable page matches graded cohomology, pages are homology of the last, 200 random instances",
       60000, [&](Check& c) { criterion_convergence(pool, c); }},
      {"a class vanishes exactly when its whole tower does, exhaustively on small groups", 30000,
       [&](Check& c) { criterion_vanishing(pool, c); }},
      {"comparison rows exact with onto vertical maps on shipped and 50 random bundles", 0,
       criterion_comparison},
      {"rank-one band: page-2 groups Z/2, differential an isomorphism, page 3 clean", 1000,
       criterion_band},
      {"projective line: degree-1 group Z, constants in degree 0, onto mod-2 reduction, stable bounds",
       10000, criterion_line},
      {"weight-2 symbol groups of F3 and F5 vanish mod 2; residue sums vanish on the line", 0,
       criterion_symbols},
      {"squaring closed form, twisted operation squares to zero, assembled bands round trip", 0,
       criterion_operations},
      {"secondary cokernel agrees with the stable page; dimension-one targets collapse", 0,
       criterion_secondary},
      {"declared stage bounds hold on conforming instances and violations are flagged", 0,
       [&](Check& c) { criterion_stage_bounds(pool, c); }},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = Clock::now();
    try {
      criteria[i].run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("threw: ") + e.what());
    }
    long ms = ms_since(t0);
    if (criteria[i].budget_ms > 0 && ms > criteria[i].budget_ms)
      c.require(false, "exceeded the " + std::to_string(criteria[i].budget_ms) + " ms budget");
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].title << " ("
              << c.count << " checks, " << ms << " ms)";
    if (!c.ok) std::cout << "\n       first failure: " << c.why;
    std::cout << "\n";
    if (!c.ok) ++failed;
  }
  if (failed > 0) {
    std::cout << failed << " of " << criteria.size() << " criteria failed\n";
    return 1;
  }
  std::cout << "all " << criteria.size() << " criteria passed\n";
  return 0;
}
