#include "sseq/pages.hpp"

#include <optional>
#include <string>
#include <utility>

#include "sseq/errors.hpp"

namespace sseq {

namespace {

std::string spot(int s, int t) {
  return "(" + std::to_string(s) + "," + std::to_string(t) + ")";
}

void require_family(const Page& a, const Page& b, const std::string& what) {
  if (a.shared_filtration() != b.shared_filtration())
    throw invalid_error(what + ": pages built over different filtration objects");
}

void require_consecutive(const Page& cur, const Page& next, const std::string& what) {
  require_family(cur, next, what);
  if (next.r() != cur.r() + 1) throw invalid_error(what + ": pages are not consecutive");
}

}  // namespace

Subgroup z_lattice(const FilteredComplex& f, int r, int s, int n) {
  if (r < 0) throw invalid_error("cycle lattice: negative depth");
  return intersect(f.level(s, n),
                   preimage(f.complex().differential(n), f.level(s + r, n + 1)));
}

Subgroup boundary_lattice(const FilteredComplex& f, int r, int s, int n) {
  Subgroup z = z_lattice(f, r, s, n - 1);
  return Subgroup(f.complex().group(n), f.complex().differential_matrix(n - 1) * z.gens());
}

Page::Page(std::shared_ptr<const FilteredComplex> f, int r) : f_(std::move(f)), r_(r) {
  if (r_ < 1) throw invalid_error("page: index below 1");
  const CochainComplex& c = f_->complex();
  if (c.is_zero_complex()) return;
  for (int s = f_->p_min(); s <= f_->p_max(); ++s)
    for (int n = c.lo(); n <= c.hi(); ++n) {
      Subgroup num = z_lattice(*f_, r_, s, n);
      Subgroup den =
          sum(z_lattice(*f_, r_ - 1, s + 1, n), boundary_lattice(*f_, r_ - 1, s - r_ + 1, n));
      Subquotient cls(num, den);
      entries_.emplace(std::make_pair(s, n - s),
                       PageEntry{std::move(num), std::move(den), std::move(cls)});
    }
}

PageEntry Page::entry(int s, int t) const {
  auto it = entries_.find({s, t});
  if (it != entries_.end()) return it->second;
  Subgroup z = zero_subgroup(f_->complex().group(s + t));
  Subquotient cls(z, z);
  return PageEntry{z, z, std::move(cls)};
}

Homo Page::differential(int s, int t) const {
  PageEntry src = entry(s, t);
  PageEntry tgt = entry(s + r_, t - r_ + 1);
  Mat dmat = f_->complex().differential_matrix(s + t);
  Mat m(tgt.group().generators(), src.group().generators());
  for (int k = 0; k < src.numerator.gens().cols(); ++k) {
    Vec cls = tgt.project(dmat.apply(src.numerator.gens().col(k)));
    for (int i = 0; i < m.rows(); ++i) m.at(i, k) = cls[i];
  }
  return Homo(src.group(), tgt.group(), std::move(m));
}

PageEntry Page::entry_display(int p, int q) const {
  auto [s, t] = internal_position(p, q);
  return entry(s, t);
}

Homo Page::differential_display(int p, int q) const {
  auto [s, t] = internal_position(p, q);
  return differential(s, t);
}

Page page(const FilteredComplex& f, int r) {
  return Page(std::make_shared<const FilteredComplex>(f), r);
}

std::vector<Page> pages_up_to(const FilteredComplex& f, int r_stop) {
  auto shared = std::make_shared<const FilteredComplex>(f);
  std::vector<Page> out;
  out.reserve(size_t(r_stop > 0 ? r_stop : 0));
  for (int r = 1; r <= r_stop; ++r) out.emplace_back(shared, r);
  return out;
}

Vec adjust_representative(const Page& cur, int s, int t, const Vec& ambient_cycle) {
  const FilteredComplex& f = cur.filtration();
  int n = s + t;
  int r = cur.r();
  Mat dmat = f.complex().differential_matrix(n);
  // target-entry denominator, split so the F^{s+1} part can be subtracted
  Subgroup za = z_lattice(f, r - 1, s + r + 1, n + 1);
  Subgroup zb = z_lattice(f, r - 1, s + 1, n);
  Mat dwb = dmat * zb.gens();
  LinearSystem sys(Mat::hstack(Mat::hstack(za.gens(), dwb), f.complex().group(n + 1).relations()));
  auto sol = sys.solve(dmat.apply(ambient_cycle));
  if (!sol) throw invalid_error("survivor: representative is not a cycle on this page");
  Vec out = ambient_cycle;
  int off = za.gens().cols();
  for (int k = 0; k < zb.gens().cols(); ++k) {
    const Int& beta = (*sol)[size_t(off + k)];
    if (beta == 0) continue;
    for (size_t i = 0; i < out.size(); ++i) out[i] -= beta * zb.gens().at(int(i), k);
  }
  return out;
}

Homo survivor_map(const Page& cur, const Page& next, int s, int t) {
  require_consecutive(cur, next, "survivor");
  Subgroup cyc = kernel(cur.differential(s, t));
  PageEntry ce = cur.entry(s, t);
  PageEntry ne = next.entry(s, t);
  Mat m(ne.group().generators(), cyc.gens().cols());
  for (int k = 0; k < cyc.gens().cols(); ++k) {
    Vec z = ce.lift(cyc.gens().col(k));
    Vec cls = ne.project(adjust_representative(cur, s, t, z));
    for (int i = 0; i < m.rows(); ++i) m.at(i, k) = cls[i];
  }
  return Homo(cyc.group(), ne.group(), std::move(m));
}

Homo transport_map(const Page& cur, const Page& next, int s, int t) {
  require_consecutive(cur, next, "transport");
  if (!cur.differential(s, t).is_zero_map())
    throw structural_error("transport: outgoing differential is nonzero at " + spot(s, t));
  PageEntry ce = cur.entry(s, t);
  PageEntry ne = next.entry(s, t);
  Mat m(ne.group().generators(), ce.group().generators());
  for (int k = 0; k < ce.group().generators(); ++k) {
    Vec e(size_t(ce.group().generators()), Int(0));
    e[size_t(k)] = 1;
    Vec cls = ne.project(adjust_representative(cur, s, t, ce.lift(e)));
    for (int i = 0; i < m.rows(); ++i) m.at(i, k) = cls[i];
  }
  return Homo(ce.group(), ne.group(), std::move(m));
}

Homo transport_to(const std::vector<Page>& pages, size_t from, size_t to, int s, int t) {
  if (from > to || to >= pages.size()) throw invalid_error("transport: bad page range");
  Homo acc = Homo::identity(pages[from].entry(s, t).group());
  for (size_t i = from; i < to; ++i) acc = transport_map(pages[i], pages[i + 1], s, t).compose(acc);
  return acc;
}

PageHomology page_homology(const Page& cur, const Page& next, int s, int t) {
  require_consecutive(cur, next, "page recursion");
  Subgroup cyc = kernel(cur.differential(s, t));
  Subgroup bnd = image(cur.differential(s - cur.r(), t + cur.r() - 1));
  Subquotient cls(cyc, bnd);
  Homo surv = survivor_map(cur, next, s, t);
  Homo to_page(cls.group(), surv.target(), surv.matrix());
  if (!to_page.is_isomorphism())
    throw internal_error("page recursion: homology does not match the next page at " + spot(s, t));
  return PageHomology{std::move(cyc), std::move(bnd), std::move(cls), std::move(to_page)};
}

HomologyPage page_by_homology(const FilteredComplex& f, int r) {
  if (r < 1) throw invalid_error("page recursion: index below 1");
  std::vector<Page> pgs = pages_up_to(f, r);
  HomologyPage out{r, {}};
  const CochainComplex& c = f.complex();
  if (c.is_zero_complex()) return out;
  for (int s = f.p_min(); s <= f.p_max(); ++s)
    for (int n = c.lo(); n <= c.hi(); ++n) {
      int t = n - s;
      if (r == 1) {
        PageEntry e = pgs[0].entry(s, t);
        Subgroup cyc = full_subgroup(e.group());
        Subgroup bnd = zero_subgroup(e.group());
        Subquotient cls(cyc, bnd);
        Homo to_page(cls.group(), e.group(), Mat::identity(e.group().generators()));
        out.entries.emplace(std::make_pair(s, t),
                            PageHomology{std::move(cyc), std::move(bnd), std::move(cls),
                                         std::move(to_page)});
      } else {
        out.entries.emplace(std::make_pair(s, t), page_homology(pgs[size_t(r) - 2], pgs[size_t(r) - 1], s, t));
      }
    }
  return out;
}

StablePage e_infinity(const FilteredComplex& f) {
  const CochainComplex& c = f.complex();
  int width = f.p_max() - f.p_min();
  int span = c.is_zero_complex() ? 0 : c.hi() - c.lo();
  int stable = width + span + 2;
  StablePage out{pages_up_to(f, stable + 1), stable};
  const Page& a = out.at(stable);
  const Page& b = out.pages.back();
  for (const auto& [key, ea] : a.entries()) {
    PageEntry eb = b.entry(key.first, key.second);
    if (!ea.numerator.equals(eb.numerator) || !ea.denominator.equals(eb.denominator))
      throw internal_error("stable page: lattices still moving at the certified index, spot " +
                           spot(key.first, key.second));
  }
  return out;
}

ConvergenceData verify_convergence(const FilteredComplex& f) {
  ConvergenceData out{e_infinity(f), {}, {}, {}};
  const CochainComplex& c = f.complex();
  if (c.is_zero_complex()) return out;
  const Page& inf = out.stable.infinity();
  for (int n = c.lo(); n <= c.hi(); ++n) out.filtrations.emplace(n, filtration_on_cohomology(f, n));
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const CohomologyFiltration& fh = out.filtrations.at(n);
    for (int s = f.p_min(); s <= f.p_max(); ++s) {
      PageEntry e = inf.entry(s, n - s);
      Subquotient q(fh.level(s), fh.level(s + 1));
      Mat m(q.group().generators(), e.group().generators());
      for (int k = 0; k < e.numerator.gens().cols(); ++k) {
        Vec cls = q.project(fh.h.project(e.numerator.gens().col(k)));
        for (int i = 0; i < m.rows(); ++i) m.at(i, k) = cls[i];
      }
      Homo iso(e.group(), q.group(), std::move(m));
      if (!iso.is_isomorphism())
        throw internal_error("convergence: stable entry does not match the graded piece at " +
                             spot(s, n - s));
      out.graded.emplace(std::make_pair(s, n), std::move(q));
      out.isos.emplace(std::make_pair(s, n), std::move(iso));
    }
  }
  return out;
}

Homo induced_page_map(const Page& src, const Page& tgt, const ChainMap& g, int s, int t) {
  if (src.r() != tgt.r()) throw invalid_error("induced page map: pages have different indices");
  if (!(g.source() == src.filtration().complex()) || !(g.target() == tgt.filtration().complex()))
    throw invalid_error("induced page map: chain map endpoints do not match the pages");
  int n = s + t;
  PageEntry se = src.entry(s, t);
  PageEntry te = tgt.entry(s, t);
  Mat m(te.group().generators(), se.group().generators());
  for (int k = 0; k < se.numerator.gens().cols(); ++k) {
    Vec gz = g.apply(n, se.numerator.gens().col(k));
    if (!te.numerator.contains(gz))
      throw structural_error("induced page map: chain map does not respect the filtration at " +
                             spot(s, t));
    Vec cls = te.project(gz);
    for (int i = 0; i < m.rows(); ++i) m.at(i, k) = cls[i];
  }
  return Homo(se.group(), te.group(), std::move(m));
}

GbarTower gbar_tower_on(std::vector<Page> pages, int j, const Homo& reduction) {
  if (pages.size() < 2) throw invalid_error("tower: need at least two pages");
  if (pages[0].r() != 1) throw invalid_error("tower: pages must start at the first page");
  for (size_t i = 0; i + 1 < pages.size(); ++i)
    require_consecutive(pages[i], pages[i + 1], "tower");
  PageEntry e2 = pages[0].entry(j, -1);
  if (!(reduction.target() == e2.group()))
    throw invalid_error("tower: mismatched ambient groups for the reduction");
  GbarTower out{j, display_page(pages.back().r()), {}, {}};
  Subgroup gbar = image(reduction);
  out.stages.push_back({2, gbar, gbar});
  for (size_t idx = 0; idx + 1 < pages.size(); ++idx) {
    const Page& cur = pages[idx];
    const Page& nxt = pages[idx + 1];
    Subgroup ker_d = kernel(cur.differential(j, -1));
    Subgroup g_next = intersect(gbar, ker_d);
    Homo surv = survivor_map(cur, nxt, j, -1);
    Mat m(surv.target().generators(), g_next.gens().cols());
    for (int k = 0; k < g_next.gens().cols(); ++k) {
      auto co = ker_d.coords(g_next.gens().col(k));
      if (!co) throw internal_error("tower: survivor coordinates missing");
      Vec val = surv.apply(*co);
      for (int i = 0; i < m.rows(); ++i) m.at(i, k) = val[i];
    }
    Subgroup next_gbar(nxt.entry(j, -1).group(), std::move(m));
    out.stages.push_back({int(idx) + 3, std::move(g_next), next_gbar});
    gbar = std::move(next_gbar);
  }
  out.pages = std::move(pages);
  return out;
}

GbarTower gbar_tower(const FilteredComplex& f_mw, int j, const Homo& reduction) {
  const auto* mwp = f_mw.mw();
  if (!mwp) throw invalid_error("tower: filtration was not built by a top replacement");
  if (mwp->cut != j) throw invalid_error("tower: replacement cut disagrees with the requested column");
  const FilteredComplex* full = mwp->source.get();
  if (full->truncation()) full = full->truncation()->parent.get();
  StablePage st = e_infinity(*full);
  st.pages.pop_back();  // drop the certification page; stages end at the stable page
  return gbar_tower_on(std::move(st.pages), j, reduction);
}

namespace {

void require_same_filtration(const FilteredComplex& a, const FilteredComplex& b,
                             const std::string& what) {
  bool ok = a.complex() == b.complex() && a.p_min() == b.p_min() && a.p_max() == b.p_max();
  if (ok && !a.complex().is_zero_complex())
    for (int p = a.p_min(); ok && p <= a.p_max(); ++p)
      for (int i = a.complex().lo(); ok && i <= a.complex().hi(); ++i)
        ok = a.level(p, i).equals(b.level(p, i));
  if (!ok) throw invalid_error(what + " is a different filtration");
}

}  // namespace

ComparisonReport comparison_sequences(const FilteredComplex& f_full,
                                      const FilteredComplex& f_trunc,
                                      const FilteredComplex& f_mw, int d, const ChainMap& v) {
  const CochainComplex& cf = f_full.complex();
  if (cf.is_zero_complex() || cf.hi() != d)
    throw invalid_error("comparison: the complex must be nonzero and end in degree d");
  if (d < f_full.p_min() || d > f_full.p_max())
    throw invalid_error("comparison: d is outside the filtration range");
  const auto* tp = f_trunc.truncation();
  if (!tp || tp->j != d)
    throw invalid_error("comparison: second argument is not the truncation at level d");
  require_same_filtration(*tp->parent, f_full, "comparison: truncation parent");
  const auto* mwp = f_mw.mw();
  if (!mwp || mwp->cut != d)
    throw invalid_error("comparison: third argument is not a top replacement with cut d");
  const auto* midp = mwp->source->truncation();
  if (!midp || midp->j != d + 1)
    throw invalid_error("comparison: replacement source is not the truncation at level d+1");
  require_same_filtration(*midp->parent, f_full, "comparison: replacement parent");
  if (!(v.source() == f_mw.complex()) || !(v.target() == f_trunc.complex()))
    throw invalid_error("comparison: vertical map endpoints do not match");

  const ChainMap& incl = *mwp->incl;
  const ChainMap& emb_mid = *midp->embedding;
  const ChainMap& emb_tr = *tp->embedding;

  // on the inner layers the vertical map must restrict to the inclusion
  std::map<int, Mat> canon;
  for (int i = cf.lo(); i <= cf.hi(); ++i) {
    Subgroup tr_i(cf.group(i), emb_tr.component(i).matrix());
    Mat src = emb_mid.component(i).matrix();
    Mat m(f_trunc.complex().group(i).generators(), src.cols());
    for (int k = 0; k < src.cols(); ++k) {
      auto co = tr_i.coords(src.col(k));
      if (!co) throw structural_error("comparison: inner layers do not embed");
      for (int r = 0; r < m.rows(); ++r) m.at(r, k) = (*co)[r];
    }
    canon.emplace(i, std::move(m));
  }
  ChainMap iota(mwp->source->complex(), f_trunc.complex(), canon);
  ChainMap v_incl = v.compose(incl);
  for (int i = cf.lo(); i <= cf.hi(); ++i)
    if (!v_incl.component(i).equals(iota.component(i)))
      throw structural_error(
          "comparison: vertical map does not restrict to the inclusion of the inner layers");

  ChainMap g = emb_tr.compose(v);

  StablePage full_st = e_infinity(f_full);
  StablePage tr_st = e_infinity(f_trunc);
  StablePage mw_st = e_infinity(f_mw);
  if (tr_st.stable_r != full_st.stable_r || mw_st.stable_r != full_st.stable_r)
    throw internal_error("comparison: stable indices disagree");
  size_t stb = size_t(full_st.stable_r);

  Homo trunc_diag = transport_to(tr_st.pages, 0, stb - 1, d, 0);
  if (!trunc_diag.is_isomorphism())
    throw structural_error(
        "comparison: stable diagonal entry of the truncation is not its page-2 entry");
  Homo mw_diag = transport_to(mw_st.pages, 0, stb - 1, d, 0);
  if (!mw_diag.is_isomorphism())
    throw structural_error(
        "comparison: stable diagonal entry of the replacement is not its page-2 entry");

  Homo rho = induced_page_map(mw_st.pages[0], full_st.pages[0], g, d, -1);
  std::vector<Page> tower_pages(full_st.pages.begin(), full_st.pages.end() - 1);
  GbarTower tower = gbar_tower_on(std::move(tower_pages), d, rho);

  int top_n = f_full.p_max() - d;
  std::vector<ComparisonJoint> joints;
  for (int n = 1; n <= top_n; ++n) {
    int s = d + n, t = -n;
    std::string tag = " at n=" + std::to_string(n);
    std::optional<Homo> id_tr, id_mw;
    for (int rr = 1; rr <= n; ++rr) {
      Homo a = induced_page_map(tr_st.pages[size_t(rr) - 1], full_st.pages[size_t(rr) - 1], emb_tr, s, t);
      Homo b = induced_page_map(mw_st.pages[size_t(rr) - 1], full_st.pages[size_t(rr) - 1], g, s, t);
      if (!a.is_isomorphism() || !b.is_isomorphism())
        throw structural_error("comparison: page identification fails" + tag + ", page " +
                               std::to_string(display_page(rr)));
      if (rr == n) {
        id_tr = std::move(a);
        id_mw = std::move(b);
      }
    }
    Homo diff = full_st.pages[size_t(n) - 1].differential(d, -1);
    Homo w_tr = transport_to(tr_st.pages, size_t(n) - 1, stb - 1, s, t).compose(inverse(*id_tr));
    Homo w_mw = transport_to(mw_st.pages, size_t(n) - 1, stb - 1, s, t).compose(inverse(*id_mw));
    if (!w_tr.is_surjective() || !w_mw.is_surjective())
      throw structural_error("comparison: stable entry is not a quotient of the page" + tag);
    if (!is_exact(diff, w_tr))
      throw structural_error("comparison: truncated row fails exactness" + tag);
    const GbarStage& stage = tower.stages[size_t(n) - 1];
    Homo rd = diff.compose(stage.gbar.inclusion());
    if (!is_exact(rd, w_mw))
      throw structural_error("comparison: replacement row fails exactness" + tag);
    Homo epi = induced_page_map(mw_st.pages[stb - 1], tr_st.pages[stb - 1], v, s, t);
    if (!epi.is_surjective())
      throw structural_error("comparison: stable comparison map is not surjective" + tag);
    if (!epi.compose(w_mw).equals(w_tr))
      throw structural_error("comparison: comparison square does not commute" + tag);
    bool gfull = stage.gbar.is_full();
    bool eiso = epi.is_isomorphism();
    joints.push_back(ComparisonJoint{n, std::move(*id_tr), std::move(*id_mw), std::move(diff),
                                     std::move(rd), std::move(w_tr), std::move(w_mw),
                                     std::move(epi), gfull, eiso});
  }

  Homo epi_diag = induced_page_map(mw_st.pages[stb - 1], tr_st.pages[stb - 1], v, d, 0);
  if (!epi_diag.is_surjective())
    throw structural_error("comparison: stable comparison map is not surjective on the diagonal");

  bool all_full = true;
  for (const auto& jt : joints) all_full = all_full && jt.gbar_full;
  if (all_full)
    for (const auto& jt : joints)
      if (!jt.epi_iso)
        throw structural_error(
            "comparison: full towers must make the comparison maps isomorphisms");

  return ComparisonReport{d,
                          std::move(trunc_diag),
                          std::move(mw_diag),
                          std::move(rho),
                          std::move(tower),
                          std::move(joints),
                          std::move(epi_diag)};
}

}  // namespace sseq
