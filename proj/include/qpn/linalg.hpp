#pragma once
// Dense and sparse exact linear algebra over K.

#include <map>
#include <optional>
#include <vector>

#include "qpn/scalars.hpp"

namespace qpn {

using Vec = std::vector<ScalarK>;
using SVec = std::map<int, ScalarK>;  // sparse vector: index -> nonzero coefficient

void axpy(SVec& y, const ScalarK& a, const SVec& x);  // y += a x
SVec scaled(const SVec& x, const ScalarK& a);

class Mat {
 public:
  Mat() = default;
  Mat(int r, int c) : r_(r), c_(c), a_(size_t(r) * c) {}
  static Mat identity(int n);
  int rows() const { return r_; }
  int cols() const { return c_; }
  ScalarK& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const ScalarK& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const ScalarK& s) const;
  Mat transpose() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_zero() const;
  Vec row(int i) const;
  Vec col(int j) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<ScalarK> a_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m);
int rank(const Mat& m);
/// Basis of {x : m x = 0}.
std::vector<Vec> kernel(const Mat& m);
/// Solve m x = b (columns of b); nullopt if inconsistent. Free variables set to 0.
std::optional<Mat> solve(const Mat& m, const Mat& b);
std::optional<Mat> inverse(const Mat& m);
ScalarK det(const Mat& m);
/// Indices of a maximal linearly independent subset of columns (greedy, in order).
std::vector<int> independent_columns(const Mat& m);

/// Sparse matrix stored by columns.
class SpMat {
 public:
  SpMat() = default;
  SpMat(int rows, int cols) : rows_(rows), col_(cols) {}
  static SpMat identity(int n);
  static SpMat from_dense(const Mat& m);
  int rows() const { return rows_; }
  int cols() const { return int(col_.size()); }
  void add(int r, int c, const ScalarK& v);
  const SVec& column(int c) const { return col_[c]; }
  SVec& column(int c) { return col_[c]; }
  SVec apply(const SVec& x) const;
  SpMat operator*(const SpMat& o) const;  // composition: this after o
  SpMat operator+(const SpMat& o) const;
  SpMat operator-(const SpMat& o) const;
  SpMat scaled(const ScalarK& s) const;
  bool operator==(const SpMat& o) const;
  bool is_zero() const;
  size_t nnz() const;
  Mat dense() const;
  ScalarK at(int r, int c) const;

 private:
  int rows_ = 0;
  std::vector<SVec> col_;
};

/// Kronecker product A (x) B with index (i, j) -> i * B.rows() + j.
SpMat kron(const SpMat& a, const SpMat& b);

}  // namespace qpn
