#include "sseq/abelian.hpp"

#include <functional>
#include <sstream>

namespace sseq {

Presentation::Presentation(int generators, Mat relations, std::vector<std::string> labels)
    : gens_(generators), rels_(std::move(relations)), labels_(std::move(labels)) {
  if (gens_ < 0) throw invalid_error("presentation: negative generator count");
  if (rels_.rows() != gens_)
    throw structural_error("presentation: relation matrix must have one row per generator");
  if (!labels_.empty() && int(labels_.size()) != gens_)
    throw structural_error("presentation: label count must match generator count");
  init();
}

void Presentation::init() { sys_ = std::make_shared<LinearSystem>(rels_); }

Presentation Presentation::cyclic(const Int& n) {
  Mat r(1, 1);
  r.at(0, 0) = n;
  if (n == 0) r = Mat(1, 0);
  return Presentation(1, r);
}

bool Presentation::is_element_zero(const Vec& x) const {
  if (int(x.size()) != gens_) throw invalid_error("element: wrong coordinate length");
  return sys_->solvable(x);
}

bool Presentation::elements_equal(const Vec& x, const Vec& y) const {
  if (x.size() != y.size()) throw invalid_error("element: wrong coordinate length");
  Vec d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return is_element_zero(d);
}

std::optional<Int> Invariants::order() const {
  if (free_rank > 0) return std::nullopt;
  Int n = 1;
  for (const Int& t : torsion) n *= t;
  return n;
}

std::string Invariants::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Int& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t.get_str();
    first = false;
  }
  if (free_rank == 1) {
    if (!first) os << " + ";
    os << "Z";
  } else if (free_rank > 1) {
    if (!first) os << " + ";
    os << "Z^" << free_rank;
  }
  return os.str();
}

Invariants invariants(const Presentation& g) {
  const SmithForm& s = smith_normal_form(g.relations());
  Invariants inv;
  inv.free_rank = g.generators() - s.rank;
  for (int i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) >= 2) inv.torsion.push_back(s.d.at(i, i));
  return inv;
}

Homo::Homo(Presentation source, Presentation target, Mat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
  if (m_.rows() != tgt_.generators() || m_.cols() != src_.generators())
    throw structural_error("homo: matrix shape does not match presentations");
  // well-definedness: every source relation must die in the target
  Mat moved = m_ * src_.relations();
  for (int j = 0; j < moved.cols(); ++j)
    if (!tgt_.relation_system().solvable(moved.col(j)))
      throw structural_error("homo: matrix does not send source relations into target relations");
}

Homo Homo::zero(Presentation source, Presentation target) {
  Mat m(target.generators(), source.generators());
  return Homo(std::move(source), std::move(target), std::move(m));
}

Homo Homo::identity(Presentation g) {
  Presentation copy = g;
  Mat m = Mat::identity(g.generators());
  return Homo(std::move(copy), std::move(g), std::move(m));
}

Homo Homo::compose(const Homo& inner) const {
  if (inner.tgt_ != src_) throw structural_error("compose: middle presentations differ");
  return Homo(inner.src_, tgt_, m_ * inner.m_);
}

bool Homo::is_zero_map() const {
  for (int j = 0; j < m_.cols(); ++j)
    if (!tgt_.is_element_zero(m_.col(j))) return false;
  return true;
}

bool Homo::equals(const Homo& o) const {
  if (src_ != o.src_ || tgt_ != o.tgt_) return false;
  for (int j = 0; j < m_.cols(); ++j)
    if (!tgt_.elements_equal(m_.col(j), o.m_.col(j))) return false;
  return true;
}

Subgroup::Subgroup(Presentation ambient, Mat gens) : ambient_(std::move(ambient)), gens_(std::move(gens)) {
  if (gens_.rows() != ambient_.generators())
    throw structural_error("subgroup: generator matrix must have one row per ambient generator");
  member_ = std::make_shared<LinearSystem>(Mat::hstack(gens_, ambient_.relations()));
  // relations among the generators: kernel of [gens | relations], truncated to
  // the generator block
  Mat k = member_->kernel_basis();
  group_ = Presentation(gens_.cols(), k.rows_range(0, gens_.cols()));
}

bool Subgroup::contains(const Vec& v) const { return member_->solvable(v); }

std::optional<Vec> Subgroup::coords(const Vec& v) const {
  auto x = member_->solve(v);
  if (!x) return std::nullopt;
  return Vec(x->begin(), x->begin() + gens_.cols());
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
  if (ambient_ != other.ambient_) throw structural_error("subgroup comparison: different ambient groups");
  for (int j = 0; j < other.gens_.cols(); ++j)
    if (!contains(other.gens_.col(j))) return false;
  return true;
}

bool Subgroup::equals(const Subgroup& other) const {
  return contains_subgroup(other) && other.contains_subgroup(*this);
}

bool Subgroup::is_full() const {
  for (int i = 0; i < ambient_.generators(); ++i) {
    Vec e(ambient_.generators());
    e[i] = 1;
    if (!contains(e)) return false;
  }
  return true;
}

bool Subgroup::is_zero_subgroup() const {
  for (int j = 0; j < gens_.cols(); ++j)
    if (!ambient_.is_element_zero(gens_.col(j))) return false;
  return true;
}

Subgroup full_subgroup(const Presentation& g) { return Subgroup(g, Mat::identity(g.generators())); }

Subgroup zero_subgroup(const Presentation& g) { return Subgroup(g, Mat(g.generators(), 0)); }

Subgroup kernel(const Homo& f) {
  // x with f(x) in the target relation lattice
  Mat big = Mat::hstack(f.matrix(), f.target().relations());
  Mat k = kernel_basis(big);
  return Subgroup(f.source(), k.rows_range(0, f.source().generators()));
}

Subgroup image(const Homo& f) { return Subgroup(f.target(), f.matrix()); }

Subgroup preimage(const Homo& f, const Subgroup& s) {
  if (s.ambient() != f.target()) throw structural_error("preimage: subgroup not in the map's target");
  Mat big = Mat::hstack(f.matrix(), Mat::hstack(s.gens(), f.target().relations()));
  Mat k = kernel_basis(big);
  return Subgroup(f.source(), k.rows_range(0, f.source().generators()));
}

Subgroup sum(const Subgroup& s, const Subgroup& t) {
  if (s.ambient() != t.ambient()) throw structural_error("sum: different ambient groups");
  return Subgroup(s.ambient(), Mat::hstack(s.gens(), t.gens()));
}

Subgroup intersect(const Subgroup& s, const Subgroup& t) {
  if (s.ambient() != t.ambient()) throw structural_error("intersect: different ambient groups");
  const Mat& r = s.ambient().relations();
  // solutions of W_s a + R c = W_t b + R c'
  Mat big = Mat::hstack(Mat::hstack(s.gens(), r), Mat::hstack(t.gens().scaled(-1), r.scaled(-1)));
  Mat k = kernel_basis(big);
  int na = s.gens().cols(), nc = r.cols();
  Mat left = Mat::hstack(s.gens(), r);  // ambient vectors W_s a + R c
  Mat gens(s.ambient().generators(), k.cols());
  for (int j = 0; j < k.cols(); ++j) {
    Vec coeff(na + nc);
    for (int i = 0; i < na + nc; ++i) coeff[i] = k.at(i, j);
    Vec v = left.apply(coeff);
    for (int i = 0; i < s.ambient().generators(); ++i) gens.at(i, j) = v[i];
  }
  return Subgroup(s.ambient(), gens);
}

QuotientData quotient(const Subgroup& s) {
  Presentation q(s.ambient().generators(), Mat::hstack(s.gens(), s.ambient().relations()),
                 s.ambient().labels());
  Homo proj(s.ambient(), q, Mat::identity(s.ambient().generators()));
  return QuotientData{std::move(q), std::move(proj)};
}

Homo induced(const Homo& f, const Subgroup& s_src, const Subgroup& s_tgt) {
  if (s_src.ambient() != f.source() || s_tgt.ambient() != f.target())
    throw structural_error("induced: subgroups do not match the map");
  for (int j = 0; j < s_src.gens().cols(); ++j)
    if (!s_tgt.contains(f.apply(s_src.gens().col(j))))
      throw structural_error("induced: map does not carry the source subgroup into the target subgroup");
  return Homo(quotient(s_src).group, quotient(s_tgt).group, f.matrix());
}

Homo inverse(const Homo& f) {
  if (!f.is_isomorphism()) throw structural_error("inverse: map is not an isomorphism");
  LinearSystem sys(Mat::hstack(f.matrix(), f.target().relations()));
  Mat m(f.source().generators(), f.target().generators());
  for (int j = 0; j < f.target().generators(); ++j) {
    Vec e(f.target().generators(), Int(0));
    e[j] = 1;
    auto sol = sys.solve(e);
    if (!sol) throw internal_error("inverse: surjectivity solve failed");
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) = (*sol)[i];
  }
  return Homo(f.target(), f.source(), std::move(m));
}

bool is_exact(const Homo& f, const Homo& g) {
  if (f.target() != g.source()) throw structural_error("is_exact: maps not composable");
  return image(f).equals(kernel(g));
}

bool Homo::is_injective() const { return kernel(*this).is_zero_subgroup(); }

bool Homo::is_surjective() const { return image(*this).is_full(); }

Subquotient::Subquotient(Subgroup t, const Subgroup& s) : t_(std::move(t)), group_(0) {
  if (!t_.contains_subgroup(s)) throw structural_error("subquotient: denominator not inside numerator");
  Mat s_in_t(t_.gens().cols(), s.gens().cols());
  for (int j = 0; j < s.gens().cols(); ++j) {
    auto c = t_.coords(s.gens().col(j));
    if (!c) throw internal_error("subquotient: containment solve failed");
    for (int i = 0; i < t_.gens().cols(); ++i) s_in_t.at(i, j) = (*c)[i];
  }
  group_ = Presentation(t_.gens().cols(), Mat::hstack(s_in_t, t_.group().relations()));
}

Vec Subquotient::project(const Vec& ambient_vec) const {
  auto c = t_.coords(ambient_vec);
  if (!c) throw invalid_error("subquotient: vector not in the numerator subgroup");
  return *c;
}

Normalized normalize(const Presentation& g) {
  SmithForm s = smith_normal_form(g.relations());
  std::vector<int> keep;
  Vec torsion;
  for (int i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) >= 2) {
      keep.push_back(i);
      torsion.push_back(s.d.at(i, i));
    }
  int nt = int(keep.size());
  for (int i = s.rank; i < g.generators(); ++i) keep.push_back(i);
  int n = int(keep.size());
  Mat rels(n, nt);
  for (int i = 0; i < nt; ++i) rels.at(i, i) = torsion[i];
  Presentation canonical(n, std::move(rels));

  Mat to(n, g.generators());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < g.generators(); ++j) to.at(i, j) = s.u.at(keep[i], j);

  auto uinv = LinearSystem(s.u).solve_many(Mat::identity(g.generators()));
  if (!uinv) throw internal_error("normalize: failed to invert a unimodular matrix");
  Mat from(g.generators(), n);
  for (int i = 0; i < g.generators(); ++i)
    for (int j = 0; j < n; ++j) from.at(i, j) = uinv->at(i, keep[j]);

  return Normalized{canonical, Homo(g, canonical, std::move(to)), Homo(canonical, g, std::move(from))};
}

std::vector<Vec> enumerate_elements(const Presentation& g, const Int& bound) {
  Normalized n = normalize(g);
  Invariants inv = invariants(n.canonical);
  auto ord = inv.order();
  if (!ord) throw unsupported_error("enumerate: group is infinite");
  if (*ord > bound) throw unsupported_error("enumerate: group order exceeds the bound");
  std::vector<Vec> out;
  Vec cur(n.canonical.generators());
  std::function<void(int)> walk = [&](int i) {
    if (i == int(inv.torsion.size())) {
      out.push_back(n.from_canonical.apply(cur));
      return;
    }
    for (Int v = 0; v < inv.torsion[i]; ++v) {
      cur[i] = v;
      walk(i + 1);
    }
    cur[i] = 0;
  };
  walk(0);
  return out;
}

}  // namespace sseq
