#include "sseq/complex.hpp"

#include <string>

namespace sseq {

namespace {

std::string at_degree(int i) { return " at degree " + std::to_string(i); }
std::string at_level(int p, int i) {
  return " at level " + std::to_string(p) + ", degree " + std::to_string(i);
}

}  // namespace

CochainComplex::CochainComplex(int lo, std::vector<Presentation> groups,
                               std::vector<Mat> differentials)
    : lo_(lo), groups_(std::move(groups)), diffs_(std::move(differentials)) {
  if (groups_.empty()) {
    if (!diffs_.empty()) throw invalid_error("complex: differentials given for an empty complex");
    lo_ = 0;
    return;
  }
  if (diffs_.size() + 1 != groups_.size())
    throw invalid_error("complex: expected one differential per consecutive degree pair");
  std::vector<Homo> h;
  h.reserve(diffs_.size());
  for (size_t k = 0; k < diffs_.size(); ++k)
    h.emplace_back(groups_[k], groups_[k + 1], diffs_[k]);
  for (size_t k = 0; k + 1 < diffs_.size(); ++k)
    if (!h[k + 1].compose(h[k]).is_zero_map())
      throw structural_error("complex: d o d nonzero" + at_degree(lo_ + int(k)));
}

CochainComplex CochainComplex::one_term(int degree, Presentation g) {
  return CochainComplex(degree, {std::move(g)}, {});
}

const Presentation& CochainComplex::group(int i) const {
  static const Presentation z;
  return in_range(i) ? groups_[i - lo_] : z;
}

Homo CochainComplex::differential(int i) const {
  if (in_range(i) && i < hi()) return Homo(groups_[i - lo_], groups_[i - lo_ + 1], diffs_[i - lo_]);
  return Homo::zero(group(i), group(i + 1));
}

Mat CochainComplex::differential_matrix(int i) const {
  if (in_range(i) && i < hi()) return diffs_[i - lo_];
  return Mat(group(i + 1).generators(), group(i).generators());
}

bool CochainComplex::operator==(const CochainComplex& o) const {
  if (groups_.empty() || o.groups_.empty()) return groups_.empty() && o.groups_.empty();
  return lo_ == o.lo_ && groups_ == o.groups_ && diffs_ == o.diffs_;
}

ChainMap::ChainMap(CochainComplex src, CochainComplex tgt, std::map<int, Mat> components)
    : src_(std::move(src)), tgt_(std::move(tgt)), comps_(std::move(components)) {
  for (const auto& [i, m] : comps_) {
    if (!src_.in_range(i))
      throw invalid_error("chain map: component outside the source range" + at_degree(i));
    if (m.rows() != tgt_.group(i).generators() || m.cols() != src_.group(i).generators())
      throw invalid_error("chain map: component shape mismatch" + at_degree(i));
  }
  for (int i = src_.lo(); i < src_.hi(); ++i) {
    Homo left = tgt_.differential(i).compose(component(i));
    Homo right = component(i + 1).compose(src_.differential(i));
    if (!left.equals(right))
      throw structural_error("chain map: does not commute with the differentials" + at_degree(i));
  }
}

ChainMap ChainMap::zero(CochainComplex src, CochainComplex tgt) {
  return ChainMap(std::move(src), std::move(tgt), {});
}

ChainMap ChainMap::identity(const CochainComplex& c) {
  std::map<int, Mat> comps;
  for (int i = c.lo(); i <= c.hi(); ++i) comps.emplace(i, Mat::identity(c.group(i).generators()));
  CochainComplex copy = c;
  return ChainMap(std::move(copy), c, std::move(comps));
}

Homo ChainMap::component(int i) const {
  auto it = comps_.find(i);
  if (it != comps_.end()) return Homo(src_.group(i), tgt_.group(i), it->second);
  return Homo::zero(src_.group(i), tgt_.group(i));
}

bool ChainMap::is_injective() const {
  for (int i = src_.lo(); i <= src_.hi(); ++i)
    if (!component(i).is_injective()) return false;
  return true;
}

ChainMap ChainMap::compose(const ChainMap& inner) const {
  if (!(inner.tgt_ == src_)) throw invalid_error("chain map: composition with mismatched complexes");
  std::map<int, Mat> comps;
  for (int i = inner.src_.lo(); i <= inner.src_.hi(); ++i)
    comps.emplace(i, component(i).compose(inner.component(i)).matrix());
  return ChainMap(inner.src_, tgt_, std::move(comps));
}

CohomologyData::CohomologyData(int degree, Subgroup cocycles, const Subgroup& boundaries)
    : degree_(degree), boundaries_(boundaries), q_(std::move(cocycles), boundaries) {}

CohomologyData cohomology(const CochainComplex& c, int i) {
  Subgroup z = kernel(c.differential(i));
  Subgroup b = image(c.differential(i - 1));
  return CohomologyData(i, std::move(z), b);
}

FilteredComplex::FilteredComplex(CochainComplex c, int p_min, int p_max,
                                 std::map<std::pair<int, int>, Mat> level_gens)
    : c_(std::move(c)), p_min_(p_min), p_max_(p_max) {
  if (p_max_ < p_min_) throw invalid_error("filtration: p_max below p_min");
  for (const auto& [key, m] : level_gens) {
    auto [p, i] = key;
    if (p < p_min_ || p > p_max_)
      throw invalid_error("filtration: generators outside [p_min, p_max]" + at_level(p, i));
    if (!c_.in_range(i))
      throw invalid_error("filtration: generators outside the complex range" + at_level(p, i));
    if (m.rows() != c_.group(i).generators())
      throw invalid_error("filtration: generator matrix has wrong ambient rank" + at_level(p, i));
  }
  // missing entries: full at p_min, zero above; one extra stored row of zero
  // subgroups at p_max+1 keeps level() allocation-free
  for (int p = p_min_; p <= p_max_ + 1; ++p) {
    for (int i = c_.lo(); i <= c_.hi(); ++i) {
      const Presentation& g = c_.group(i);
      auto it = level_gens.find({p, i});
      Mat gens(g.generators(), 0);
      if (it != level_gens.end())
        gens = it->second;
      else if (p == p_min_)
        gens = Mat::identity(g.generators());
      levels_.emplace(std::make_pair(p, i), Subgroup(g, std::move(gens)));
    }
  }
  for (int i = c_.lo(); i <= c_.hi(); ++i)
    if (!levels_.at({p_min_, i}).is_full())
      throw structural_error("filtration exhaustiveness: the lowest level is a proper subgroup" +
                             at_degree(i));
  for (int p = p_min_; p < p_max_; ++p)
    for (int i = c_.lo(); i <= c_.hi(); ++i)
      if (!levels_.at({p, i}).contains_subgroup(levels_.at({p + 1, i})))
        throw structural_error("filtration monotonicity: level " + std::to_string(p + 1) +
                               " is not contained in level " + std::to_string(p) + at_degree(i));
  for (int p = p_min_; p <= p_max_; ++p)
    for (int i = c_.lo(); i < c_.hi(); ++i) {
      const Subgroup& s = levels_.at({p, i});
      const Subgroup& t = levels_.at({p, i + 1});
      Mat d = c_.differential_matrix(i);
      for (int k = 0; k < s.gens().cols(); ++k)
        if (!t.contains(d.apply(s.gens().col(k))))
          throw structural_error(
              "filtration d-compatibility: the differential leaves the level" + at_level(p, i));
    }
}

FilteredComplex FilteredComplex::trivial(CochainComplex c, int level) {
  return FilteredComplex(std::move(c), level, level, {});
}

Subgroup FilteredComplex::level(int p, int i) const {
  if (!c_.in_range(i)) return zero_subgroup(c_.group(i));
  if (p < p_min_) p = p_min_;
  if (p > p_max_) p = p_max_ + 1;
  return levels_.at({p, i});
}

SubcomplexData subcomplex_at(const FilteredComplex& f, int p) {
  const CochainComplex& c = f.complex();
  if (c.is_zero_complex()) return {c, ChainMap::identity(c)};
  std::vector<Subgroup> levels;
  levels.reserve(size_t(c.hi() - c.lo() + 1));
  for (int i = c.lo(); i <= c.hi(); ++i) levels.push_back(f.level(p, i));
  std::vector<Presentation> groups;
  std::vector<Mat> diffs;
  std::map<int, Mat> incl;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    groups.push_back(levels[i - c.lo()].group());
    incl.emplace(i, levels[i - c.lo()].gens());
  }
  for (int i = c.lo(); i < c.hi(); ++i) {
    const Subgroup& s = levels[i - c.lo()];
    const Subgroup& t = levels[i - c.lo() + 1];
    Mat d = c.differential_matrix(i);
    Mat dm(t.group().generators(), s.group().generators());
    for (int k = 0; k < s.gens().cols(); ++k) {
      auto co = t.coords(d.apply(s.gens().col(k)));
      if (!co) throw internal_error("subcomplex: differential leaves a validated level");
      for (int r = 0; r < dm.rows(); ++r) dm.at(r, k) = (*co)[r];
    }
    diffs.push_back(std::move(dm));
  }
  CochainComplex sub(c.lo(), std::move(groups), std::move(diffs));
  ChainMap inclusion(sub, c, std::move(incl));
  return {std::move(sub), std::move(inclusion)};
}

GradedPieceData graded_piece(const FilteredComplex& f, int p) {
  SubcomplexData sub = subcomplex_at(f, p);
  const CochainComplex& c = f.complex();
  if (c.is_zero_complex()) return {c, ChainMap::identity(c)};
  std::vector<Subquotient> qs;
  qs.reserve(size_t(c.hi() - c.lo() + 1));
  for (int i = c.lo(); i <= c.hi(); ++i) qs.emplace_back(f.level(p, i), f.level(p + 1, i));
  std::vector<Presentation> groups;
  std::vector<Mat> diffs;
  std::map<int, Mat> proj;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    groups.push_back(qs[i - c.lo()].group());
    proj.emplace(i, Mat::identity(qs[i - c.lo()].group().generators()));
  }
  for (int i = c.lo(); i < c.hi(); ++i) {
    const Subquotient& q = qs[i - c.lo() + 1];
    Mat w = f.level(p, i).gens();
    Mat d = c.differential_matrix(i);
    Mat dm(q.group().generators(), w.cols());
    for (int k = 0; k < w.cols(); ++k) {
      Vec cls = q.project(d.apply(w.col(k)));
      for (int r = 0; r < dm.rows(); ++r) dm.at(r, k) = cls[r];
    }
    diffs.push_back(std::move(dm));
  }
  CochainComplex gr(c.lo(), std::move(groups), std::move(diffs));
  ChainMap projection(sub.complex, gr, std::move(proj));
  return {std::move(gr), std::move(projection)};
}

FilteredComplex truncate(const FilteredComplex& f, int j) {
  if (j < f.p_min() || j > f.p_max() + 1)
    throw invalid_error("truncate: cut outside [p_min, p_max+1]");
  SubcomplexData sub = subcomplex_at(f, j);
  const CochainComplex& c = f.complex();
  std::map<std::pair<int, int>, Mat> gens;
  for (int p = f.p_min(); p <= f.p_max(); ++p) {
    int q = std::max(p, j);
    for (int i = c.lo(); i <= c.hi(); ++i) {
      Subgroup fj = f.level(j, i);
      Mat w = f.level(q, i).gens();
      Mat m(fj.group().generators(), w.cols());
      for (int k = 0; k < w.cols(); ++k) {
        auto co = fj.coords(w.col(k));
        if (!co) throw internal_error("truncate: level escapes the cut subcomplex");
        for (int r = 0; r < m.rows(); ++r) m.at(r, k) = (*co)[r];
      }
      gens.emplace(std::make_pair(p, i), std::move(m));
    }
  }
  FilteredComplex out(sub.complex, f.p_min(), f.p_max(), std::move(gens));
  out.trunc_ = FilteredComplex::TruncationProvenance{
      std::make_shared<const FilteredComplex>(f),
      std::make_shared<const ChainMap>(std::move(sub.inclusion)), j};
  return out;
}

FilteredComplex mw_replace_top(const FilteredComplex& f, const CochainComplex& top,
                               const ChainMap& incl, int j) {
  if (!(incl.source() == f.complex()))
    throw invalid_error("replace top: map source is not the filtered complex");
  if (!(incl.target() == top))
    throw invalid_error("replace top: map target is not the replacement complex");
  if (j < f.p_min() || j > f.p_max()) throw invalid_error("replace top: cut outside [p_min, p_max]");
  if (!incl.is_injective()) throw structural_error("replace top: the map is not injective");
  for (int p = f.p_min(); p <= std::min(j + 1, f.p_max()); ++p)
    for (int i = f.complex().lo(); i <= f.complex().hi(); ++i)
      if (!f.level(p, i).is_full())
        throw structural_error("replace top: level " + std::to_string(p) +
                               " is a proper subgroup; truncate at the cut first");
  std::map<std::pair<int, int>, Mat> gens;
  for (int p = f.p_min(); p <= j; ++p)
    for (int i = top.lo(); i <= top.hi(); ++i)
      gens.emplace(std::make_pair(p, i), Mat::identity(top.group(i).generators()));
  for (int p = j + 1; p <= f.p_max(); ++p)
    for (int i = top.lo(); i <= top.hi(); ++i)
      gens.emplace(std::make_pair(p, i), incl.component(i).matrix() * f.level(p, i).gens());
  FilteredComplex out(top, f.p_min(), f.p_max(), std::move(gens));
  out.mw_ = FilteredComplex::MwProvenance{std::make_shared<const FilteredComplex>(f),
                                          std::make_shared<const ChainMap>(incl), j};
  return out;
}

const Subgroup& CohomologyFiltration::level(int p) const {
  if (levels.empty()) throw internal_error("cohomology filtration: no levels");
  if (p < levels.begin()->first) p = levels.begin()->first;
  if (p > levels.rbegin()->first) p = levels.rbegin()->first;
  return levels.at(p);
}

CohomologyFiltration filtration_on_cohomology(const FilteredComplex& f, int n) {
  CohomologyData h = cohomology(f.complex(), n);
  std::map<int, Subgroup> levels;
  for (int p = f.p_min(); p <= f.p_max() + 1; ++p) {
    SubcomplexData sub = subcomplex_at(f, p);
    CohomologyData hp = cohomology(sub.complex, n);
    Mat m(h.group().generators(), hp.group().generators());
    for (int k = 0; k < hp.group().generators(); ++k) {
      Vec e(size_t(hp.group().generators()), 0);
      e[k] = 1;
      Vec cls = h.project(sub.inclusion.apply(n, hp.lift(e)));
      for (int r = 0; r < m.rows(); ++r) m.at(r, k) = cls[r];
    }
    levels.emplace(p, Subgroup(h.group(), std::move(m)));
  }
  return {std::move(h), std::move(levels)};
}

}  // namespace sseq
