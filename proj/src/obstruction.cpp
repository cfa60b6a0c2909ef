#include "sseq/obstruction.hpp"

#include <algorithm>
#include <random>

namespace sseq {

ObstructionTower obstruction_tower(const FilteredComplex& f, const CohomologyClass& alpha,
                                   int d) {
  ConvergenceData cv = verify_convergence(f);
  return obstruction_tower(f, cv, alpha, d);
}

ObstructionTower obstruction_tower(const FilteredComplex& f, const ConvergenceData& cv,
                                   const CohomologyClass& alpha, int d) {
  const CochainComplex& c = f.complex();
  if (alpha.degree != d) throw invalid_error("tower: class degree disagrees with the request");
  if (c.is_zero_complex() || d < c.lo() || d > c.hi())
    throw invalid_error("tower: degree out of range");
  if (int(alpha.cocycle.size()) != c.group(d).generators())
    throw structural_error("tower: class vector has the wrong length");

  const CohomologyFiltration& fh = cv.filtrations.at(d);
  if (!fh.h.cocycles().contains(alpha.cocycle))
    throw invalid_error("tower: the class vector is not a cocycle");
  Vec a = fh.h.project(alpha.cocycle);

  ObstructionTower out;
  out.degree = d;
  out.alpha = a;

  const Page& inf = cv.stable.infinity();
  int width = f.p_max() - f.p_min();
  for (int n = 0; n <= width; ++n) {
    int level = f.p_min() + n;
    const Subquotient& q = cv.graded.at({level, d});
    Vec direct = q.project(a);

    // move the class onto a cocycle inside the level: cocycles there span
    // this step of the filtration on cohomology
    Subgroup deep = z_lattice(f, cv.stable.stable_r, level, d);
    Mat m(fh.h.group().generators(), deep.gens().cols());
    for (int k = 0; k < deep.gens().cols(); ++k) {
      Vec cls = fh.h.project(deep.gens().col(k));
      for (int i = 0; i < m.rows(); ++i) m.at(i, k) = cls[size_t(i)];
    }
    LinearSystem sys(Mat::hstack(m, fh.h.group().relations()));
    auto sol = sys.solve(a);
    if (!sol) throw internal_error("tower: no representative at a reached level");
    Vec rep(size_t(c.group(d).generators()), Int(0));
    for (int k = 0; k < deep.gens().cols(); ++k)
      for (size_t i = 0; i < rep.size(); ++i)
        rep[i] += (*sol)[size_t(k)] * deep.gens().at(int(i), k);

    Vec value = inf.entry(level, d - level).project(rep);
    Vec via = cv.isos.at({level, d}).apply(value);
    Vec diff(via.size());
    for (size_t i = 0; i < via.size(); ++i) diff[i] = via[i] - direct[i];
    if (!q.group().is_element_zero(diff))
      throw internal_error("tower: stable-page value disagrees with the graded image");

    bool zero = q.group().is_element_zero(direct);
    out.stages.push_back(ObstructionStage{n, level, std::move(value), std::move(direct), zero});
    if (!zero) {
      out.first_nonzero = n;
      break;
    }
  }
  out.vanishes = (out.first_nonzero == -1);
  if (out.vanishes != fh.h.group().is_element_zero(a))
    throw internal_error("tower: verdict disagrees with the direct vanishing test");
  return out;
}

VanishingReport vanishing_equivalence(const FilteredComplex& f, int d, unsigned seed) {
  const CochainComplex& c = f.complex();
  VanishingReport rep{d, true, 0, true};
  if (c.is_zero_complex() || d < c.lo() || d > c.hi()) return rep;  // nothing in this degree

  ConvergenceData cv = verify_convergence(f);
  CohomologyData h = cohomology(c, d);
  const Presentation& g = h.group();
  SmithForm s = smith_normal_form(g.relations());
  LinearSystem back(s.u);  // diagonal coordinates y = u x

  auto run_one = [&](const Vec& y) {
    auto x = back.solve(y);
    if (!x) throw internal_error("vanishing sweep: basis change failed");
    ObstructionTower t = obstruction_tower(f, cv, CohomologyClass{d, h.lift(*x)}, d);
    if (t.vanishes != g.is_element_zero(*x)) rep.passed = false;
    ++rep.checked;
  };

  int free_dirs = g.generators() - s.rank;
  Int order = 1;
  for (int i = 0; i < s.rank; ++i) order *= s.d.at(i, i);
  if (free_dirs == 0 && order <= 1024) {
    // every element once, in diagonal coordinates
    Vec y(size_t(g.generators()), Int(0));
    while (true) {
      run_one(y);
      int i = 0;
      for (; i < s.rank; ++i) {
        y[size_t(i)] += 1;
        if (y[size_t(i)] < s.d.at(i, i)) break;
        y[size_t(i)] = 0;
      }
      if (i == s.rank) break;
    }
  } else {
    rep.exhaustive = false;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> fr(-4, 4);
    Vec y(size_t(g.generators()), Int(0));
    run_one(y);
    for (int i = 0; i < g.generators(); ++i) {
      std::fill(y.begin(), y.end(), Int(0));
      y[size_t(i)] = 1;
      run_one(y);
    }
    for (int trial = 0; trial < 64; ++trial) {
      for (int i = 0; i < g.generators(); ++i) {
        if (i < s.rank) {
          long m = s.d.at(i, i).get_si();
          y[size_t(i)] = fr(rng) % (m > 0 ? m : 1);
        } else {
          y[size_t(i)] = fr(rng);
        }
      }
      run_one(y);
    }
  }
  return rep;
}

int stage_bound(int d, int s) {
  if (s < 0) throw invalid_error("stage bound: negative cohomological dimension");
  (void)d;
  return s - 1;
}

StageBoundCheck check_stage_bound(const FilteredComplex& f, int d, int s) {
  StageBoundCheck out{stage_bound(d, s), true, {}};
  StablePage st = e_infinity(f);
  int width = f.p_max() - f.p_min();
  for (int n = s; n <= width; ++n) {
    int level = f.p_min() + n;
    if (!invariants(st.infinity().entry(level, d - level).group()).is_zero()) {
      out.respected = false;
      out.violations.push_back(n);
    }
  }
  return out;
}

SecondaryObstruction secondary_obstruction(const SecondaryPipeline& p) {
  if (!(p.reduction.source() == p.integral_group) ||
      !(p.reduction.target() == p.mod2_group) || !(p.operation.source() == p.mod2_group))
    throw structural_error("secondary: ill-composed maps");
  if (int(p.lifted_class.size()) != p.operation.target().generators())
    throw structural_error("secondary: lifted class has the wrong length");
  Homo composite = p.operation.compose(p.reduction);
  QuotientData q = quotient(image(composite));
  Vec value = q.projection.apply(p.lifted_class);
  bool zero = q.group.is_element_zero(value);
  return SecondaryObstruction{q.group, std::move(value), q.projection, zero};
}

}  // namespace sseq
