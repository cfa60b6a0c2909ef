#pragma once
#include <random>
#include <utility>
#include <vector>

#include "sseq/fixtures.hpp"

namespace sseq_test {

// Random bounded filtered complexes, assembled from one- and two-generator
// pieces so that validity holds by construction.  Each generator carries a
// level profile: full up to some level, then scaled by a growing multiplier,
// then absent.  Arrows d(u) = k w are chosen with the multiplier of the
// target dividing k wherever the source is still present, which is exactly
// d-compatibility.  Level matrices get redundant columns mixed in to
// exercise non-canonical generating sets.

struct RandomGen {
  long torsion = 0;         // 0 = free
  std::vector<int> mu;      // level -> multiplier, 0 = absent; mu[0] = 1
};

inline sseq::FilteredComplex random_filtered(std::mt19937& rng, int hi = 3, int lmax = 2) {
  using namespace sseq;
  auto ri = [&rng](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  const int lo = 0;
  std::vector<std::vector<RandomGen>> gens(size_t(hi - lo + 1));
  struct Arrow {
    int degree, src, tgt;
    long k;
  };
  std::vector<Arrow> arrows;

  auto profile = [&](int full_until) {
    RandomGen g;
    g.mu.assign(size_t(lmax + 1), 0);
    long m = 1;
    for (int p = 0; p <= lmax; ++p) {
      if (p <= full_until) {
        g.mu[size_t(p)] = 1;
        continue;
      }
      if (m == 0) break;
      switch (ri(0, 3)) {
        case 0: m = 0; break;
        case 1: m *= 2; break;
        case 2: m *= 3; break;
        default: break;
      }
      if (m > 12) m = 0;
      g.mu[size_t(p)] = int(m);
    }
    return g;
  };

  int pieces = ri(2, 5);
  for (int a = 0; a < pieces; ++a) {
    int kind = ri(0, 3);
    if (kind <= 1) {
      int i = ri(lo, hi);
      RandomGen g = profile(ri(0, lmax));
      if (kind == 1) g.torsion = ri(2, 4);
      gens[size_t(i - lo)].push_back(std::move(g));
    } else {
      int i = ri(lo, hi - 1);
      RandomGen w = profile(ri(0, lmax));
      if (kind == 3) w.torsion = ri(2, 4);
      int wtop = lmax;
      while (w.mu[size_t(wtop)] == 0) --wtop;
      RandomGen u = profile(ri(0, wtop));
      for (int p = 0; p <= lmax; ++p)
        if (w.mu[size_t(p)] == 0) u.mu[size_t(p)] = 0;
      int utop = lmax;
      while (u.mu[size_t(utop)] == 0) --utop;
      long k = long(w.mu[size_t(utop)]) * ri(1, 3);
      int ui = int(gens[size_t(i - lo)].size());
      int wi = int(gens[size_t(i + 1 - lo)].size());
      gens[size_t(i - lo)].push_back(std::move(u));
      gens[size_t(i + 1 - lo)].push_back(std::move(w));
      arrows.push_back({i, ui, wi, k});
    }
  }

  std::vector<Presentation> groups;
  for (int i = lo; i <= hi; ++i) {
    const auto& gs = gens[size_t(i - lo)];
    int n = int(gs.size());
    std::vector<int> torsion_rows;
    for (int v = 0; v < n; ++v)
      if (gs[size_t(v)].torsion != 0) torsion_rows.push_back(v);
    Mat rel(n, int(torsion_rows.size()));
    for (int j = 0; j < int(torsion_rows.size()); ++j)
      rel.at(torsion_rows[size_t(j)], j) = gs[size_t(torsion_rows[size_t(j)])].torsion;
    groups.emplace_back(n, std::move(rel));
  }

  std::vector<Mat> diffs;
  for (int i = lo; i < hi; ++i) {
    Mat d(int(gens[size_t(i + 1 - lo)].size()), int(gens[size_t(i - lo)].size()));
    for (const auto& ar : arrows)
      if (ar.degree == i) d.at(ar.tgt, ar.src) = ar.k;
    diffs.push_back(std::move(d));
  }
  CochainComplex c(lo, std::move(groups), std::move(diffs));

  std::map<std::pair<int, int>, Mat> lv;
  for (int p = 1; p <= lmax; ++p)
    for (int i = lo; i <= hi; ++i) {
      const auto& gs = gens[size_t(i - lo)];
      int n = int(gs.size());
      std::vector<Vec> cols;
      for (int v = 0; v < n; ++v)
        if (int m = gs[size_t(v)].mu[size_t(p)]; m != 0) {
          Vec col(size_t(n), Int(0));
          col[size_t(v)] = m;
          cols.push_back(std::move(col));
        }
      if (!cols.empty() && ri(0, 2) == 0) {
        Vec extra = cols[size_t(ri(0, int(cols.size()) - 1))];
        const Vec& other = cols[size_t(ri(0, int(cols.size()) - 1))];
        Int sign = ri(0, 1) ? 1 : -1;
        for (size_t z = 0; z < extra.size(); ++z) extra[z] = sign * extra[z] + other[z];
        cols.push_back(std::move(extra));
      }
      Mat m(n, int(cols.size()));
      for (int j = 0; j < int(cols.size()); ++j)
        for (int r = 0; r < n; ++r) m.at(r, j) = cols[size_t(j)][size_t(r)];
      lv[{p, i}] = std::move(m);
    }
  return FilteredComplex(std::move(c), 0, lmax, std::move(lv));
}

// Random bundle (full, truncation at d, top replacement, vertical map) with
// the vertical map surjective in the top degree, the shape the comparison
// machinery expects.  The replacement ambient is the inner complex plus free
// generators: one mapping onto each top-degree generator downstairs and a few
// spares sent to cocycles in lower degrees.
inline sseq::ComparisonFixture random_comparison(std::mt19937& rng) {
  using namespace sseq;
  auto ri = [&rng](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  const int d = 2;
  FilteredComplex full = random_filtered(rng, d, 3);
  FilteredComplex tr = truncate(full, d);
  FilteredComplex mid = truncate(full, d + 1);
  const CochainComplex& inner = mid.complex();
  const CochainComplex& down = tr.complex();

  std::vector<int> extras(size_t(d + 1), 0);
  extras[size_t(d)] = down.group(d).generators();
  for (int i = 0; i < d; ++i) extras[size_t(i)] = ri(0, 1);

  std::vector<Presentation> groups;
  std::vector<Mat> diffs;
  for (int i = 0; i <= d; ++i) {
    const Presentation& b = inner.group(i);
    int n = b.generators() + extras[size_t(i)];
    Mat rel(n, b.relations().cols());
    for (int j = 0; j < b.relations().cols(); ++j)
      for (int r = 0; r < b.generators(); ++r) rel.at(r, j) = b.relations().at(r, j);
    groups.emplace_back(n, std::move(rel));
  }
  for (int i = 0; i < d; ++i) {
    Mat dm = inner.differential_matrix(i);
    Mat big(groups[size_t(i + 1)].generators(), groups[size_t(i)].generators());
    for (int j = 0; j < dm.cols(); ++j)
      for (int r = 0; r < dm.rows(); ++r) big.at(r, j) = dm.at(r, j);
    diffs.push_back(std::move(big));
  }
  CochainComplex top(0, groups, std::move(diffs));

  std::map<int, Mat> incl_comps, v_comps;
  for (int i = 0; i <= d; ++i) {
    int bn = inner.group(i).generators();
    Mat ic(top.group(i).generators(), bn);
    for (int r = 0; r < bn; ++r) ic.at(r, r) = 1;
    incl_comps[i] = std::move(ic);

    Mat vc(down.group(i).generators(), top.group(i).generators());
    Mat emb_tr = tr.truncation()->embedding->component(i).matrix();
    Mat emb_mid = mid.truncation()->embedding->component(i).matrix();
    Subgroup tr_lane(full.complex().group(i), emb_tr);
    for (int j = 0; j < bn; ++j) {
      auto co = tr_lane.coords(emb_mid.col(j));
      if (!co) throw internal_error("random bundle: inner layer escapes the truncation");
      for (int r = 0; r < vc.rows(); ++r) vc.at(r, j) = (*co)[size_t(r)];
    }
    if (i == d) {
      for (int j = 0; j < extras[size_t(i)]; ++j) vc.at(j, bn + j) = 1;
    } else if (extras[size_t(i)] > 0) {
      Subgroup kd = kernel(down.differential(i));
      Vec z(size_t(down.group(i).generators()), Int(0));
      for (int g = 0; g < kd.gens().cols(); ++g) {
        Int coeff = ri(-1, 1);
        for (int r = 0; r < int(z.size()); ++r) z[size_t(r)] += coeff * kd.gens().at(r, g);
      }
      for (int r = 0; r < int(z.size()); ++r) vc.at(r, bn) = z[size_t(r)];
    }
    v_comps[i] = std::move(vc);
  }

  ChainMap incl(inner, top, std::move(incl_comps));
  ChainMap v(top, down, std::move(v_comps));
  FilteredComplex mw = mw_replace_top(mid, top, incl, d);
  return ComparisonFixture{std::move(full), std::move(tr), std::move(mw), std::move(v), d};
}

}  // namespace sseq_test
