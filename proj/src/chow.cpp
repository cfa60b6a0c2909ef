#include "sseq/chow.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sseq/errors.hpp"
#include "sseq/fixtures.hpp"

namespace sseq {

ChowRing::ChowRing(std::vector<std::string> names, std::vector<int> bounds)
    : names_(std::move(names)), bounds_(std::move(bounds)) {
  if (names_.size() != bounds_.size())
    throw invalid_error("chow: each variable needs exactly one bound");
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw invalid_error("chow: a variable needs a nonempty name");
    if (bounds_[i] < 0) throw invalid_error("chow: negative nilpotency bound");
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw invalid_error("chow: duplicate variable name");
  }
}

ChowRing ChowRing::projective(int n) {
  if (n < 0) throw invalid_error("chow: negative projective dimension");
  return ChowRing({"h"}, {n});
}

int ChowRing::dimension() const {
  return std::accumulate(bounds_.begin(), bounds_.end(), 0);
}

std::vector<std::vector<int>> ChowRing::basis(int codim) const {
  std::vector<std::vector<int>> out;
  if (codim < 0 || codim > dimension()) return out;
  std::vector<int> e(names_.size(), 0);
  // lexicographic: fill variable i with every exponent, then recurse
  auto rec = [&](auto&& self, size_t i, int left) -> void {
    if (i == e.size()) {
      if (left == 0) out.push_back(e);
      return;
    }
    for (int v = 0; v <= std::min(bounds_[i], left); ++v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(rec, 0, codim);
  return out;
}

ChowRing ChowRing::suspend(const std::string& name) const {
  for (const auto& n : names_)
    if (n == name) throw invalid_error("chow: the suspension variable name is already used");
  auto names = names_;
  auto bounds = bounds_;
  names.push_back(name);
  bounds.push_back(1);
  return ChowRing(std::move(names), std::move(bounds));
}

namespace {

void check_monomial(const ChowRing& r, int codim, const std::vector<int>& e) {
  if (int(e.size()) != r.variables()) throw invalid_error("chow: malformed monomial");
  int total = 0;
  for (int i = 0; i < r.variables(); ++i) {
    if (e[size_t(i)] < 0 || e[size_t(i)] > r.bound(i))
      throw invalid_error("chow: exponent outside the ring");
    total += e[size_t(i)];
  }
  if (total != codim) throw invalid_error("chow: inhomogeneous class");
}

void toggle(std::set<std::vector<int>>& s, const std::vector<int>& e) {
  auto it = s.find(e);
  if (it == s.end())
    s.insert(e);
  else
    s.erase(it);
}

void check_same_ring(const ChowClass& a, const ChowClass& b) {
  if (a.ring != b.ring) throw invalid_error("chow: mixed rings");
}

std::string monomial_str(const ChowRing& r, const std::vector<int>& e) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < r.variables(); ++i) {
    int v = e[size_t(i)];
    if (v == 0) continue;
    if (!first) os << "*";
    os << r.name(i);
    if (v > 1) os << "^" << v;
    first = false;
  }
  return first ? "1" : os.str();
}

}  // namespace

ChowClass chow_zero(const ChowRing& r, int codim) {
  if (codim < 0) throw invalid_error("chow: negative codimension");
  return ChowClass{r, codim, {}};
}

ChowClass chow_unit(const ChowRing& r) {
  return ChowClass{r, 0, {std::vector<int>(size_t(r.variables()), 0)}};
}

ChowClass chow_var(const ChowRing& r, int i) {
  if (i < 0 || i >= r.variables()) throw invalid_error("chow: no such variable");
  if (r.bound(i) < 1) return chow_zero(r, 1);
  std::vector<int> e(size_t(r.variables()), 0);
  e[size_t(i)] = 1;
  return ChowClass{r, 1, {e}};
}

ChowClass chow_class(const ChowRing& r, int codim,
                     const std::vector<std::vector<int>>& monomials) {
  ChowClass out = chow_zero(r, codim);
  for (const auto& e : monomials) {
    check_monomial(r, codim, e);
    toggle(out.monomials, e);
  }
  return out;
}

ChowClass chow_add(const ChowClass& a, const ChowClass& b) {
  check_same_ring(a, b);
  if (a.codim != b.codim) throw invalid_error("chow: mixed codimensions");
  ChowClass out = a;
  for (const auto& e : b.monomials) toggle(out.monomials, e);
  return out;
}

ChowClass chow_mul(const ChowClass& a, const ChowClass& b) {
  check_same_ring(a, b);
  ChowClass out = chow_zero(a.ring, a.codim + b.codim);
  for (const auto& e : a.monomials)
    for (const auto& f : b.monomials) {
      std::vector<int> g(e.size());
      bool alive = true;
      for (size_t i = 0; i < e.size(); ++i) {
        g[i] = e[i] + f[i];
        if (g[i] > a.ring.bound(int(i))) {
          alive = false;
          break;
        }
      }
      if (alive) toggle(out.monomials, g);
    }
  return out;
}

ChowClass chow_pow(const ChowClass& a, int k) {
  if (k < 0) throw invalid_error("chow: negative power");
  ChowClass out = chow_unit(a.ring);
  for (int i = 0; i < k; ++i) out = chow_mul(out, a);
  return out;
}

std::string chow_str(const ChowClass& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& e : x.monomials) {
    if (!first) os << " + ";
    os << monomial_str(x.ring, e);
    first = false;
  }
  return os.str();
}

Vec chow_coords(const ChowClass& x) {
  auto b = x.ring.basis(x.codim);
  Vec v(b.size(), Int(0));
  for (size_t j = 0; j < b.size(); ++j)
    if (x.monomials.count(b[j])) v[j] = 1;
  return v;
}

ChowClass chow_from_coords(const ChowRing& r, int codim, const Vec& v) {
  auto b = r.basis(codim);
  if (v.size() != b.size()) throw invalid_error("chow: coordinate length mismatch");
  ChowClass out = chow_zero(r, codim);
  for (size_t j = 0; j < b.size(); ++j)
    if (v[j] % 2 != 0) out.monomials.insert(b[j]);
  return out;
}

Presentation chow_group(const ChowRing& r, int codim) {
  auto b = r.basis(codim);
  int n = int(b.size());
  std::vector<std::string> labels;
  labels.reserve(b.size());
  for (const auto& e : b) labels.push_back(monomial_str(r, e));
  return Presentation(n, Mat::diag(Vec(size_t(n), Int(2))), std::move(labels));
}

ChowClass chow_transport(const ChowClass& x, const ChowRing& target) {
  // column index of each source variable in the target, demanded only on support
  std::vector<int> where(size_t(x.ring.variables()), -1);
  for (int i = 0; i < x.ring.variables(); ++i)
    for (int j = 0; j < target.variables(); ++j)
      if (x.ring.name(i) == target.name(j)) where[size_t(i)] = j;
  ChowClass out = chow_zero(target, x.codim);
  for (const auto& e : x.monomials) {
    std::vector<int> g(size_t(target.variables()), 0);
    bool alive = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0)
        throw invalid_error("chow: the target ring is missing a variable");
      g[size_t(where[i])] = e[i];
      if (e[i] > target.bound(where[i])) alive = false;
    }
    if (alive) toggle(out.monomials, g);
  }
  return out;
}

ChowClass sq2(const ChowClass& x) {
  ChowClass out = chow_zero(x.ring, x.codim + 1);
  for (const auto& e : x.monomials)
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] % 2 == 0) continue;
      if (e[i] + 1 > x.ring.bound(int(i))) continue;
      auto g = e;
      g[i] += 1;
      toggle(out.monomials, g);
    }
  return out;
}

ChowClass twisted_phi(const ChowClass& c1, const ChowClass& x) {
  check_same_ring(c1, x);
  if (c1.codim != 1) throw invalid_error("chow: the twist must have codimension one");
  return chow_add(sq2(x), chow_mul(c1, x));
}

Mat twisted_phi_matrix(const ChowRing& r, const ChowClass& c1, int p) {
  auto src = r.basis(p);
  auto tgt = r.basis(p + 1);
  Mat m(int(tgt.size()), int(src.size()));
  for (size_t j = 0; j < src.size(); ++j) {
    auto img = twisted_phi(c1, ChowClass{r, p, {src[j]}});
    for (size_t i = 0; i < tgt.size(); ++i)
      if (img.monomials.count(tgt[i])) m.at(int(i), int(j)) = 1;
  }
  return m;
}

SuspensionCheck suspension_check(const ChowClass& x) {
  std::string name = "s";
  for (int i = 0; i < x.ring.variables(); ++i)
    if (x.ring.name(i) == name) name += "'";
  ChowRing big = x.ring.suspend(name);
  ChowClass sigma = chow_var(big, big.variables() - 1);
  ChowClass of_product = sq2(chow_mul(chow_transport(x, big), sigma));
  ChowClass suspended = chow_mul(chow_transport(sq2(x), big), sigma);
  bool same = of_product == suspended;
  return SuspensionCheck{std::move(of_product), std::move(suspended), same};
}

FilteredComplex diagonal_differential_assembly(const ChowRing& r, const ChowClass& c1,
                                               int band_lo, int band_hi) {
  if (c1.ring != r) throw invalid_error("chow: mixed rings");
  if (c1.codim != 1) throw invalid_error("chow: the twist must have codimension one");
  if (band_hi < band_lo) throw invalid_error("assembly: empty band");
  if (band_lo < 0) throw invalid_error("assembly: negative band degree");

  std::vector<Presentation> groups;
  std::vector<Mat> diffs;
  for (int p = band_lo; p <= band_hi + 1; ++p) {
    groups.push_back(chow_group(r, p));
    if (p <= band_hi) diffs.push_back(twisted_phi_matrix(r, c1, p));
  }
  CochainComplex c(band_lo, std::move(groups), std::move(diffs));

  // filtration by cochain degree: F^level picks out the degrees >= level
  std::map<std::pair<int, int>, Mat> levels;
  for (int level = band_lo + 1; level <= band_hi + 1; ++level)
    for (int i = level; i <= band_hi + 1; ++i)
      levels[{level, i}] = Mat::identity(c.group(i).generators());
  return FilteredComplex(std::move(c), band_lo, band_hi + 1, std::move(levels));
}

Sl3Fixture sl3_fixture() {
  return Sl3Fixture{sl3_band(), {1, 2}, {2, 3}, "{t^12} + {t_13}", "f*(theta_3)"};
}

}  // namespace sseq
