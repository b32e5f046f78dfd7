#pragma once

// Small dense matrices over an exact field. T needs +,-,*,/, comparison with
// zero via is_zero(T), and construction from int.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orbint/rational.hpp"

namespace orbint {

inline bool is_zero(const Rational& x) { return x == 0; }

template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}
  Mat(std::size_t r, std::size_t c, std::vector<T> data) : r_(r), c_(c), a_(std::move(data)) {
    if (a_.size() != r * c) throw std::invalid_argument("Mat: data size mismatch");
  }
  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat from_rows(const std::vector<std::vector<T>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("Mat: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Mat column(const std::vector<T>& v) {
    Mat m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  void set_col(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

  Mat transpose() const {
    Mat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& b) const {
    if (c_ != b.r_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat out(r_, b.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const T& x = (*this)(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) out(i, j) += x * b(k, j);
      }
    return out;
  }
  std::vector<T> operator*(const std::vector<T>& v) const {
    if (c_ != v.size()) throw std::invalid_argument("Mat: shape mismatch in apply");
    std::vector<T> out(r_, T(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
  }
  Mat operator+(const Mat& b) const {
    check_same(b);
    Mat o = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) o.a_[i] += b.a_[i];
    return o;
  }
  Mat operator-(const Mat& b) const {
    check_same(b);
    Mat o = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) o.a_[i] -= b.a_[i];
    return o;
  }
  Mat scaled(const T& s) const {
    Mat o = *this;
    for (auto& x : o.a_) x *= s;
    return o;
  }
  bool operator==(const Mat& b) const {
    if (r_ != b.r_ || c_ != b.c_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!is_zero(a_[i] - b.a_[i])) return false;
    return true;
  }
  bool operator!=(const Mat& b) const { return !(*this == b); }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t j = 0; j < c_ && row < r_; ++j) {
      std::size_t sel = r_;
      for (std::size_t i = row; i < r_; ++i)
        if (!is_zero((*this)(i, j))) {
          sel = i;
          break;
        }
      if (sel == r_) continue;
      swap_rows(sel, row);
      T inv = T(1) / (*this)(row, j);
      for (std::size_t k = j; k < c_; ++k) (*this)(row, k) *= inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == row || is_zero((*this)(i, j))) continue;
        T f = (*this)(i, j);
        for (std::size_t k = j; k < c_; ++k) (*this)(i, k) -= f * (*this)(row, k);
      }
      piv.push_back(j);
      ++row;
    }
    return piv;
  }

  std::size_t rank() const {
    Mat m = *this;
    return m.rref().size();
  }

  T det() const {
    if (r_ != c_) throw std::invalid_argument("det of non-square matrix");
    Mat m = *this;
    T d(1);
    for (std::size_t j = 0; j < c_; ++j) {
      std::size_t sel = r_;
      for (std::size_t i = j; i < r_; ++i)
        if (!is_zero(m(i, j))) {
          sel = i;
          break;
        }
      if (sel == r_) return T(0);
      if (sel != j) {
        m.swap_rows(sel, j);
        d = -d;
      }
      d *= m(j, j);
      T inv = T(1) / m(j, j);
      for (std::size_t i = j + 1; i < r_; ++i) {
        if (is_zero(m(i, j))) continue;
        T f = m(i, j) * inv;
        for (std::size_t k = j; k < c_; ++k) m(i, k) -= f * m(j, k);
      }
    }
    return d;
  }

  Mat inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = r_;
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = T(1);
    }
    auto piv = aug.rref();
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }

  // Basis of the right kernel {x : A x = 0}, as columns of the result.
  Mat kernel() const {
    Mat m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (auto j : piv) is_piv[j] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < c_; ++j)
      if (!is_piv[j]) free.push_back(j);
    Mat k(c_, free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
      k(free[f], f) = T(1);
      for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = -m(r, free[f]);
    }
    return k;
  }

  // Independent columns spanning the column space.
  Mat column_basis() const {
    Mat m = *this;
    auto piv = m.rref();
    Mat out(r_, piv.size());
    for (std::size_t k = 0; k < piv.size(); ++k)
      for (std::size_t i = 0; i < r_; ++i) out(i, k) = (*this)(i, piv[k]);
    return out;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Mat o(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) o(i, j) = (*this)(r0 + i, c0 + j);
    return o;
  }
  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    for (std::size_t i = 0; i < b.r_; ++i)
      for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  const std::vector<T>& data() const { return a_; }

 private:
  void check_same(const Mat& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("Mat: shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using QMat = Mat<Rational>;
using QVec = std::vector<Rational>;

// Solve A x = b for square invertible A.
template <class T>
std::vector<T> solve(const Mat<T>& a, const std::vector<T>& b) {
  return a.inverse() * b;
}

QMat block_diag(const QMat& a, const QMat& b);

}  // namespace orbint
