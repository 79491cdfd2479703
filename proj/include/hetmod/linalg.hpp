#ifndef HETMOD_LINALG_HPP
#define HETMOD_LINALG_HPP

#include "hetmod/scalar.hpp"

#include <cstddef>
#include <vector>

namespace hetmod {

template <typename T>
struct Mat {
  size_t rows = 0, cols = 0;
  std::vector<T> v;

  Mat() = default;
  Mat(size_t r, size_t c) : rows(r), cols(c), v(r * c) {}
  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  T& operator()(size_t i, size_t j) { return v[i * cols + j]; }
  const T& operator()(size_t i, size_t j) const { return v[i * cols + j]; }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && v == o.v; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
};

using GMat = Mat<GaussRat>;
using SMat = Mat<Scalar>;

template <typename T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k) {
      const T& x = a(i, k);
      if (x.isZero()) continue;
      for (size_t j = 0; j < b.cols; ++j)
        if (!b(k, j).isZero()) r(i, j) += x * b(k, j);
    }
  return r;
}

template <typename T>
Mat<T> operator+(Mat<T> a, const Mat<T>& b) {
  for (size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
  return a;
}

template <typename T>
Mat<T> operator-(Mat<T> a, const Mat<T>& b) {
  for (size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
  return a;
}

template <typename T>
bool isZero(const Mat<T>& m) {
  for (const auto& x : m.v)
    if (!x.isZero()) return false;
  return true;
}

/// Conjugate transpose.
template <typename T>
Mat<T> dagger(const Mat<T>& m) {
  Mat<T> r(m.cols, m.rows);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) r(j, i) = m(i, j).conj();
  return r;
}

GMat specialize(const SMat& m, const GaussRat& alpha0);
SMat embed(const GMat& m);

/// Rank by fraction-free elimination over the Gaussian integers.
size_t rank_bareiss(const GMat& m);
/// Reduced row echelon form over Q(i); returns pivot columns.
std::vector<size_t> rref(GMat& m);
size_t rank_field(const GMat& m);
/// Columns of the result span the right kernel.
GMat nullspace(const GMat& m);
GMat inverse(const GMat& m);
GMat stack(const GMat& top, const GMat& bottom);
/// Determinants of leading principal minors.
std::vector<GaussRat> leading_minors(const GMat& m);

}  // namespace hetmod

#endif
