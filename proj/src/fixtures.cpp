#include "sseq/fixtures.hpp"

namespace sseq {

FilteredComplex z4_fixture() {
  CochainComplex c(0,
                   {Presentation(1, Mat(1, 0), {"u"}), Presentation(1, Mat(1, 0), {"w"})},
                   {Mat::from_rows({{4}})});
  std::map<std::pair<int, int>, Mat> levels;
  levels.emplace(std::make_pair(1, 1), Mat::from_rows({{2}}));
  levels.emplace(std::make_pair(2, 1), Mat::from_rows({{4}}));
  return FilteredComplex(std::move(c), 0, 2, std::move(levels));
}

FilteredComplex killing_fixture() {
  CochainComplex c(0,
                   {Presentation(1, Mat::from_rows({{2}}), {"u"}),
                    Presentation(1, Mat::from_rows({{2}}), {"w"})},
                   {Mat::identity(1)});
  std::map<std::pair<int, int>, Mat> levels;
  levels.emplace(std::make_pair(1, 1), Mat::identity(1));
  levels.emplace(std::make_pair(2, 1), Mat::identity(1));
  return FilteredComplex(std::move(c), 0, 2, std::move(levels));
}

FilteredComplex sl3_band() {
  CochainComplex c(1,
                   {Presentation(1, Mat::from_rows({{2}}), {"xi"}),
                    Presentation(1, Mat::from_rows({{2}}), {"eta"})},
                   {Mat::identity(1)});
  std::map<std::pair<int, int>, Mat> levels;
  levels.emplace(std::make_pair(3, 2), Mat::identity(1));
  return FilteredComplex(std::move(c), 2, 3, std::move(levels));
}

ComparisonFixture z4_comparison_fixture() {
  FilteredComplex full = z4_fixture();
  FilteredComplex trunc = truncate(full, 1);
  FilteredComplex mid = truncate(full, 2);
  // replacement layer: Z^2 with the inner copy of 4Z sitting as the second
  // generator and the first one mapping onto 2Z under the vertical map
  CochainComplex top(0, {Presentation::zero(), Presentation(2, Mat(2, 0), {"a", "b"})},
                     {Mat(2, 0)});
  ChainMap incl(mid.complex(), top, {{1, Mat::from_rows({{0}, {1}})}});
  FilteredComplex mw = mw_replace_top(mid, top, incl, 1);
  ChainMap v(mw.complex(), trunc.complex(), {{1, Mat::from_rows({{1, 2}})}});
  return ComparisonFixture{std::move(full), std::move(trunc), std::move(mw), std::move(v), 1};
}

ComparisonFixture killing_comparison_fixture() {
  FilteredComplex full = killing_fixture();
  FilteredComplex trunc = truncate(full, 1);
  FilteredComplex mid = truncate(full, 2);
  // replacement layer: Z/2 (+) Z, the torsion part carrying the inner layer
  CochainComplex top(0, {Presentation::zero(), Presentation(2, Mat::from_rows({{2}, {0}}), {"a", "b"})},
                     {Mat(2, 0)});
  ChainMap incl(mid.complex(), top, {{1, Mat::from_rows({{1}, {0}})}});
  FilteredComplex mw = mw_replace_top(mid, top, incl, 1);
  ChainMap v(mw.complex(), trunc.complex(), {{1, Mat::from_rows({{1, 0}})}});
  return ComparisonFixture{std::move(full), std::move(trunc), std::move(mw), std::move(v), 1};
}

ComparisonFixture sl3_comparison_fixture() {
  FilteredComplex full = sl3_band();
  FilteredComplex trunc = truncate(full, 2);
  FilteredComplex mid = truncate(full, 3);
  // replacement layer: an integral class over xi whose boundary reduces to eta
  CochainComplex top(1, {Presentation(1, Mat(1, 0), {"x"}),
                         Presentation(1, Mat::from_rows({{2}}), {"eta_top"})},
                     {Mat::identity(1)});
  ChainMap incl(mid.complex(), top, {{2, Mat::identity(1)}});
  FilteredComplex mw = mw_replace_top(mid, top, incl, 2);
  ChainMap v(mw.complex(), trunc.complex(), {{1, Mat::identity(1)}, {2, Mat::identity(1)}});
  return ComparisonFixture{std::move(full), std::move(trunc), std::move(mw), std::move(v), 2};
}

}  // namespace sseq
