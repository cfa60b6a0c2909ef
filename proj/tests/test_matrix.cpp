#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "sseq/matrix.hpp"

using namespace sseq;

namespace {

// Independent characterization of the Smith diagonal: d_k = g_k / g_{k-1}
// where g_k is the gcd of all k x k minors (g_0 = 1). Computed directly from
// minors, no elimination involved.
Vec smith_diagonal_by_minors(const Mat& m) {
  int n = std::min(m.rows(), m.cols());
  Vec out;
  Int prev = 1;
  for (int k = 1; k <= n; ++k) {
    Int g = 0;
    std::vector<int> ri(k), ci(k);
    std::vector<int> rows(m.rows()), cols(m.cols());
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    // iterate over all k-subsets of rows and columns
    std::vector<int> rsel(k), csel(k);
    std::function<void(int, int)> pick_cols = [&](int cpos, int cstart) {
      if (cpos == k) {
        Mat sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(rsel[i], csel[j]);
        Int d = determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
      }
      for (int c = cstart; c < m.cols(); ++c) {
        csel[cpos] = c;
        pick_cols(cpos + 1, c + 1);
      }
    };
    std::function<void(int, int)> pick_rows = [&](int rpos, int rstart) {
      if (rpos == k) {
        pick_cols(0, 0);
        return;
      }
      for (int r = rstart; r < m.rows(); ++r) {
        rsel[rpos] = r;
        pick_rows(rpos + 1, r + 1);
      }
    };
    pick_rows(0, 0);
    if (g == 0) break;  // rank reached
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

Mat random_mat(std::mt19937_64& rng, int rows, int cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = d(rng);
  return m;
}

void check_smith(const Mat& m) {
  SmithForm s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
  Int du = determinant(s.u);
  Int dv = determinant(s.v);
  CHECK((du == 1 || du == -1));
  CHECK((dv == 1 || dv == -1));
  // diagonal, nonnegative, divisibility chain
  for (int i = 0; i < s.d.rows(); ++i)
    for (int j = 0; j < s.d.cols(); ++j)
      if (i != j) CHECK(s.d.at(i, j) == 0);
  for (int i = 0; i < s.rank; ++i) {
    CHECK(s.d.at(i, i) > 0);
    if (i + 1 < s.rank) CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
  }
  Vec oracle = smith_diagonal_by_minors(m);
  CHECK(int(oracle.size()) == s.rank);
  for (int i = 0; i < s.rank; ++i) CHECK(s.d.at(i, i) == oracle[i]);
}

}  // namespace

TEST_CASE("smith normal form of a fixed matrix") {
  // d1 = gcd of entries = 2, d1*d2 = |det| = 8
  Mat m = Mat::from_rows({{2, 4}, {6, 8}});
  SmithForm s = smith_normal_form(m);
  CHECK(s.rank == 2);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 4);
  CHECK(s.u * m * s.v == s.d);
}

TEST_CASE("smith normal form edge shapes") {
  CHECK(smith_normal_form(Mat::identity(3)).d == Mat::identity(3));
  CHECK(smith_normal_form(Mat(0, 0)).rank == 0);
  CHECK(smith_normal_form(Mat(3, 0)).rank == 0);
  CHECK(smith_normal_form(Mat(0, 4)).rank == 0);
  CHECK(smith_normal_form(Mat(2, 5)).rank == 0);
  Mat one = Mat::from_rows({{0, 0}, {0, -7}});
  SmithForm s = smith_normal_form(one);
  CHECK(s.rank == 1);
  CHECK(s.d.at(0, 0) == 7);
}

TEST_CASE("smith normal form against the minor-gcd oracle") {
  std::mt19937_64 rng(20260825);
  for (int trial = 0; trial < 200; ++trial) {
    int rows = 1 + int(rng() % 3);
    int cols = 1 + int(rng() % 4);
    check_smith(random_mat(rng, rows, cols, 9));
  }
  // a few with larger entries to exercise gmp paths
  for (int trial = 0; trial < 20; ++trial) check_smith(random_mat(rng, 3, 3, 100000));
}

TEST_CASE("integer linear solve") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Mat m = random_mat(rng, 2 + int(rng() % 3), 2 + int(rng() % 3), 6);
    LinearSystem sys(m);
    // consistent system: b = m * x0
    Mat x0 = random_mat(rng, m.cols(), 1, 5);
    Vec b = m.apply(x0.col(0));
    auto x = sys.solve(b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
  }
  LinearSystem two(Mat::from_rows({{2}}));
  CHECK(!two.solve({Int(1)}).has_value());
  CHECK(two.solve({Int(6)}).value() == Vec{Int(3)});
  // zero-shape systems
  LinearSystem empty(Mat(0, 3));
  CHECK(empty.solve(Vec{}).has_value());
  LinearSystem nocols(Mat(2, 0));
  CHECK(!nocols.solve({Int(1), Int(0)}).has_value());
  CHECK(nocols.solve({Int(0), Int(0)}).has_value());
}

TEST_CASE("kernel lattice basis") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Mat m = random_mat(rng, 1 + int(rng() % 3), 1 + int(rng() % 4), 5);
    LinearSystem sys(m);
    const Mat& k = sys.kernel_basis();
    CHECK(k.cols() == m.cols() - sys.rank());
    CHECK((m * k).is_zero());
    // completeness: every kernel vector is an integer combination of the basis
    if (k.cols() > 0) {
      Mat c = random_mat(rng, k.cols(), 1, 4);
      Vec x = k.apply(c.col(0));
      LinearSystem in_basis(k);
      CHECK(in_basis.solve(x).has_value());
    }
  }
}

TEST_CASE("determinant basics") {
  CHECK(determinant(Mat::identity(4)) == 1);
  CHECK(determinant(Mat::from_rows({{2, 4}, {6, 8}})) == -8);
  CHECK(determinant(Mat::from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(Mat(0, 0)) == 1);
}
