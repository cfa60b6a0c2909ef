#include "sseq/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace sseq {

bool vec_is_zero(const Vec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  int r = int(rows.size());
  int c = r ? int(rows.begin()->size()) : 0;
  Mat m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (int(row.size()) != c) throw std::invalid_argument("ragged row list");
    int j = 0;
    for (long x : row) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

Mat Mat::column(const Vec& v) {
  Mat m(int(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m.at(int(i), 0) = v[i];
  return m;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  Mat m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
  Mat m(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
  return m;
}

bool Mat::is_zero() const {
  for (const Int& x : a_)
    if (x != 0) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  Mat m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) == 0) continue;
        m.at(i, j) += aik * o.at(k, j);
      }
    }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  Mat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff: shape mismatch");
  Mat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

Mat Mat::scaled(const Int& c) const {
  Mat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
  return m;
}

Vec Mat::apply(const Vec& x) const {
  if (int(x.size()) != cols_) throw std::invalid_argument("apply: length mismatch");
  Vec y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
  return y;
}

Mat Mat::transpose() const {
  Mat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Vec Mat::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

Mat Mat::cols_range(int from, int to) const {
  Mat m(rows_, to - from);
  for (int i = 0; i < rows_; ++i)
    for (int j = from; j < to; ++j) m.at(i, j - from) = at(i, j);
  return m;
}

Mat Mat::rows_range(int from, int to) const {
  Mat m(to - from, cols_);
  for (int i = from; i < to; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i - from, j) = at(i, j);
  return m;
}

void Mat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void Mat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void Mat::add_row(int dst, int src, const Int& c) {
  if (c == 0) return;
  for (int k = 0; k < cols_; ++k)
    if (at(src, k) != 0) at(dst, k) += c * at(src, k);
}

void Mat::add_col(int dst, int src, const Int& c) {
  if (c == 0) return;
  for (int k = 0; k < rows_; ++k)
    if (at(k, src) != 0) at(k, dst) += c * at(k, src);
}

void Mat::negate_row(int i) {
  for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << at(i, j).get_str();
    }
  }
  os << "]";
  return os.str();
}

namespace {

// absolute value comparison without allocating
int cmp_abs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

}  // namespace

SmithForm smith_normal_form(const Mat& m) {
  int R = m.rows(), C = m.cols();
  SmithForm s;
  s.u = Mat::identity(R);
  s.v = Mat::identity(C);
  Mat a = m;
  int n = std::min(R, C);
  int k = 0;
  for (; k < n; ++k) {
    // pivot: smallest |entry| in the trailing block, ties by position
    int pi = -1, pj = -1;
    for (int i = k; i < R; ++i)
      for (int j = k; j < C; ++j) {
        if (a.at(i, j) == 0) continue;
        if (pi < 0 || cmp_abs(a.at(i, j), a.at(pi, pj)) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    a.swap_rows(k, pi);
    s.u.swap_rows(k, pi);
    a.swap_cols(k, pj);
    s.v.swap_cols(k, pj);

    for (;;) {
      bool swapped = false;
      // clear below the pivot
      for (int i = k + 1; i < R; ++i) {
        if (a.at(i, k) == 0) continue;
        Int q = a.at(i, k) / a.at(k, k);
        if (q != 0) {
          a.add_row(i, k, -q);
          s.u.add_row(i, k, -q);
        }
        if (a.at(i, k) != 0) {  // nonzero remainder, strictly smaller pivot available
          a.swap_rows(k, i);
          s.u.swap_rows(k, i);
          swapped = true;
        }
      }
      if (swapped) continue;
      // clear right of the pivot
      for (int j = k + 1; j < C; ++j) {
        if (a.at(k, j) == 0) continue;
        Int q = a.at(k, j) / a.at(k, k);
        if (q != 0) {
          a.add_col(j, k, -q);
          s.v.add_col(j, k, -q);
        }
        if (a.at(k, j) != 0) {
          a.swap_cols(k, j);
          s.v.swap_cols(k, j);
          swapped = true;
        }
      }
      if (swapped) continue;  // column swaps can refill the pivot column
      // enforce divisibility of the trailing block by the pivot
      bool offending = false;
      for (int i = k + 1; i < R && !offending; ++i)
        for (int j = k + 1; j < C; ++j)
          if (a.at(i, j) % a.at(k, k) != 0) {
            a.add_row(k, i, 1);
            s.u.add_row(k, i, 1);
            offending = true;
            break;
          }
      if (!offending) break;
    }
    if (a.at(k, k) < 0) {
      a.negate_row(k);
      s.u.negate_row(k);
    }
  }
  s.rank = k;
  s.d = std::move(a);
  return s;
}

Int determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  int n = m.rows();
  if (n == 0) return 1;
  Mat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

LinearSystem::LinearSystem(Mat m) : m_(std::move(m)), s_(smith_normal_form(m_)) {
  kernel_ = s_.v.cols_range(s_.rank, s_.v.cols());
}

std::optional<Vec> LinearSystem::solve(const Vec& b) const {
  if (int(b.size()) != m_.rows()) throw std::invalid_argument("solve: length mismatch");
  Vec ub = s_.u.apply(b);
  Vec y(m_.cols());
  for (int i = 0; i < m_.rows(); ++i) {
    if (i < s_.rank) {
      Int q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ub[i].get_mpz_t(), s_.d.at(i, i).get_mpz_t());
      if (r != 0) return std::nullopt;
      if (i < m_.cols()) y[i] = q;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s_.v.apply(y);
}

std::optional<Mat> LinearSystem::solve_many(const Mat& b) const {
  if (b.rows() != m_.rows()) throw std::invalid_argument("solve_many: shape mismatch");
  Mat x(m_.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    auto xj = solve(b.col(j));
    if (!xj) return std::nullopt;
    for (int i = 0; i < m_.cols(); ++i) x.at(i, j) = (*xj)[i];
  }
  return x;
}

Mat kernel_basis(const Mat& m) {
  SmithForm s = smith_normal_form(m);
  return s.v.cols_range(s.rank, s.v.cols());
}

}  // namespace sseq
