#pragma once
#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace sseq {

using Int = mpz_class;
using Vec = std::vector<Int>;

bool vec_is_zero(const Vec& v);
std::string vec_to_string(const Vec& v);

// Dense matrix over Z, row-major. Zero rows or columns are allowed and show up
// constantly (empty presentations, zero groups), so every operation must cope
// with 0xN and Nx0 shapes.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {}
  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  static Mat from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static Mat column(const Vec& v);
  static Mat hstack(const Mat& a, const Mat& b);
  static Mat vstack(const Mat& a, const Mat& b);
  static Mat diag(const Vec& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Int& c) const;
  Vec apply(const Vec& x) const;  // matrix * column vector
  Mat transpose() const;
  Vec col(int j) const;
  Vec row(int i) const;
  Mat cols_range(int from, int to) const;  // columns [from, to)
  Mat rows_range(int from, int to) const;

  // elementary operations (used by the normal form; they keep no history)
  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void add_row(int dst, int src, const Int& c);  // row_dst += c * row_src
  void add_col(int dst, int src, const Int& c);
  void negate_row(int i);

  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> a_;
};

// u * m * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ... | d_rank,
// all diagonal entries nonnegative.
struct SmithForm {
  Mat u, d, v;
  int rank = 0;
};

SmithForm smith_normal_form(const Mat& m);

// Exact determinant (Bareiss). Square input required.
Int determinant(const Mat& m);

// Solver for m * x = b over Z. Wraps the Smith form so one decomposition
// serves membership tests, particular solutions, and the kernel lattice.
class LinearSystem {
 public:
  explicit LinearSystem(Mat m);
  const Mat& matrix() const { return m_; }
  int rank() const { return s_.rank; }
  std::optional<Vec> solve(const Vec& b) const;
  std::optional<Mat> solve_many(const Mat& b) const;  // column-wise; all or nothing
  bool solvable(const Vec& b) const { return solve(b).has_value(); }
  // columns form a basis of the integer kernel lattice
  const Mat& kernel_basis() const { return kernel_; }

 private:
  Mat m_;
  SmithForm s_;
  Mat kernel_;
};

Mat kernel_basis(const Mat& m);

}  // namespace sseq
