#include "qpn/linalg.hpp"

#include <stdexcept>

namespace qpn {

void axpy(SVec& y, const ScalarK& a, const SVec& x) {
  if (a.is_zero()) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    ScalarK t = a.is_one() ? v : a * v;
    if (it == y.end()) {
      y.emplace(k, std::move(t));
    } else {
      it->second += t;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

SVec scaled(const SVec& x, const ScalarK& a) {
  SVec r;
  if (a.is_zero()) return r;
  for (const auto& [k, v] : x) r.emplace(k, a * v);
  return r;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = ScalarK(1);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix size mismatch");
  Mat r(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const ScalarK& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        const ScalarK& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Mat Mat::scaled(const ScalarK& s) const {
  Mat r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

Mat Mat::transpose() const {
  Mat r(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool Mat::operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Vec Mat::row(int i) const { return Vec(a_.begin() + size_t(i) * c_, a_.begin() + size_t(i + 1) * c_); }

Vec Mat::col(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

namespace {

size_t weight_of(const ScalarK& x) { return x.num().size() + x.den().size(); }

}  // namespace

std::vector<int> rref(Mat& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int best = -1;
    size_t bw = 0;
    for (int i = r; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      size_t w = weight_of(m(i, c));
      if (best < 0 || w < bw) {
        best = i;
        bw = w;
      }
    }
    if (best < 0) continue;
    if (best != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    ScalarK inv = m(r, c).inv();
    for (int j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      ScalarK f = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const Mat& m) {
  Mat t = m;
  return int(rref(t).size());
}

std::vector<Vec> kernel(const Mat& m) {
  Mat t = m;
  auto piv = rref(t);
  std::vector<bool> is_piv(m.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<Vec> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec v(m.cols());
    v[f] = ScalarK(1);
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -t(int(i), f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Mat> solve(const Mat& m, const Mat& b) {
  Mat aug(m.rows(), m.cols() + b.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    for (int j = 0; j < b.cols(); ++j) aug(i, m.cols() + j) = b(i, j);
  }
  auto piv = rref(aug);
  Mat x(m.cols(), b.cols());
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= m.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(int(i), m.cols() + j);
  }
  for (int i = int(piv.size()); i < m.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (!aug(i, m.cols() + j).is_zero()) return std::nullopt;
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Mat::identity(m.rows()));
}

ScalarK det(const Mat& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("det of non-square matrix");
  Mat m = m0;
  int n = m.rows();
  ScalarK d(1);
  for (int c = 0; c < n; ++c) {
    int best = -1;
    size_t bw = 0;
    for (int i = c; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      size_t w = weight_of(m(i, c));
      if (best < 0 || w < bw) {
        best = i;
        bw = w;
      }
    }
    if (best < 0) return ScalarK();
    if (best != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(best, j));
      d = -d;
    }
    d *= m(c, c);
    ScalarK inv = m(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      ScalarK f = m(i, c) * inv;
      for (int j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::vector<int> independent_columns(const Mat& m) {
  Mat t = m;
  // pivot search strictly in column order keeps the earliest independent columns
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < t.cols() && r < t.rows(); ++c) {
    int best = -1;
    for (int i = r; i < t.rows(); ++i)
      if (!t(i, c).is_zero()) {
        best = i;
        break;
      }
    if (best < 0) continue;
    if (best != r)
      for (int j = 0; j < t.cols(); ++j) std::swap(t(r, j), t(best, j));
    ScalarK inv = t(r, c).inv();
    for (int i = r + 1; i < t.rows(); ++i) {
      if (t(i, c).is_zero()) continue;
      ScalarK f = t(i, c) * inv;
      for (int j = c; j < t.cols(); ++j)
        if (!t(r, j).is_zero()) t(i, j) -= f * t(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// ---------------------------------------------------------------- sparse

SpMat SpMat::identity(int n) {
  SpMat m(n, n);
  for (int i = 0; i < n; ++i) m.col_[i].emplace(i, ScalarK(1));
  return m;
}

SpMat SpMat::from_dense(const Mat& d) {
  SpMat m(d.rows(), d.cols());
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i)
      if (!d(i, j).is_zero()) m.col_[j].emplace(i, d(i, j));
  return m;
}

void SpMat::add(int r, int c, const ScalarK& v) {
  if (v.is_zero()) return;
  auto& col = col_[c];
  auto it = col.find(r);
  if (it == col.end()) {
    col.emplace(r, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) col.erase(it);
  }
}

SVec SpMat::apply(const SVec& x) const {
  SVec y;
  for (const auto& [k, v] : x) axpy(y, v, col_[k]);
  return y;
}

SpMat SpMat::operator*(const SpMat& o) const {
  SpMat r(rows_, o.cols());
  for (int j = 0; j < o.cols(); ++j) r.col_[j] = apply(o.col_[j]);
  return r;
}

SpMat SpMat::operator+(const SpMat& o) const {
  SpMat r = *this;
  for (int j = 0; j < cols(); ++j) axpy(r.col_[j], ScalarK(1), o.col_[j]);
  return r;
}

SpMat SpMat::operator-(const SpMat& o) const {
  SpMat r = *this;
  for (int j = 0; j < cols(); ++j) axpy(r.col_[j], ScalarK(-1), o.col_[j]);
  return r;
}

SpMat SpMat::scaled(const ScalarK& s) const {
  SpMat r(rows_, cols());
  for (int j = 0; j < cols(); ++j) r.col_[j] = qpn::scaled(col_[j], s);
  return r;
}

bool SpMat::operator==(const SpMat& o) const { return rows_ == o.rows_ && col_ == o.col_; }

bool SpMat::is_zero() const {
  for (const auto& c : col_)
    if (!c.empty()) return false;
  return true;
}

size_t SpMat::nnz() const {
  size_t n = 0;
  for (const auto& c : col_) n += c.size();
  return n;
}

Mat SpMat::dense() const {
  Mat m(rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (const auto& [i, v] : col_[j]) m(i, j) = v;
  return m;
}

ScalarK SpMat::at(int r, int c) const {
  auto it = col_[c].find(r);
  return it == col_[c].end() ? ScalarK() : it->second;
}

SpMat kron(const SpMat& a, const SpMat& b) {
  SpMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ja = 0; ja < a.cols(); ++ja)
    for (const auto& [ia, va] : a.column(ja))
      for (int jb = 0; jb < b.cols(); ++jb)
        for (const auto& [ib, vb] : b.column(jb)) r.add(ia * b.rows() + ib, ja * b.cols() + jb, va * vb);
  return r;
}

}  // namespace qpn
