#include "hetmod/linalg.hpp"

#include <stdexcept>

namespace hetmod {

namespace {

struct GInt {
  mpz_class re, im;
  bool isZero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GInt mul(const GInt& a, const GInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GInt sub(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact quotient; Bareiss guarantees divisibility.
GInt divexact(const GInt& a, const GInt& b) {
  mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class r = a.re * b.re + a.im * b.im;
  mpz_class i = a.im * b.re - a.re * b.im;
  GInt q;
  mpz_divexact(q.re.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), i.get_mpz_t(), n.get_mpz_t());
  return q;
}

}  // namespace

GMat specialize(const SMat& m, const GaussRat& alpha0) {
  GMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.v.size(); ++i) r.v[i] = evaluate_alpha(m.v[i], alpha0);
  return r;
}

SMat embed(const GMat& m) {
  SMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.v.size(); ++i) r.v[i] = Scalar(m.v[i]);
  return r;
}

size_t rank_bareiss(const GMat& m) {
  const size_t R = m.rows, C = m.cols;
  std::vector<std::vector<GInt>> a(R, std::vector<GInt>(C));
  for (size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (size_t j = 0; j < C; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).im().get_den_mpz_t());
    }
    for (size_t j = 0; j < C; ++j) {
      mpq_class re = m(i, j).re() * l, im = m(i, j).im() * l;
      a[i][j] = {re.get_num(), im.get_num()};
    }
  }
  GInt prev{1, 0};
  size_t row = 0;
  for (size_t col = 0; col < C && row < R; ++col) {
    size_t piv = row;
    while (piv < R && a[piv][col].isZero()) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[row]);
    const GInt p = a[row][col];
    for (size_t i = row + 1; i < R; ++i) {
      for (size_t j = col + 1; j < C; ++j)
        a[i][j] = divexact(sub(mul(p, a[i][j]), mul(a[i][col], a[row][j])), prev);
      a[i][col] = GInt{};
    }
    prev = p;
    ++row;
  }
  return row;
}

std::vector<size_t> rref(GMat& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t piv = row;
    while (piv < m.rows && m(piv, col).isZero()) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    GaussRat inv = m(row, col).inverse();
    for (size_t j = col; j < m.cols; ++j) m(row, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col).isZero()) continue;
      GaussRat f = m(i, col);
      for (size_t j = col; j < m.cols; ++j)
        if (!m(row, j).isZero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t rank_field(const GMat& m) {
  GMat c = m;
  return rref(c).size();
}

GMat nullspace(const GMat& m) {
  GMat c = m;
  auto piv = rref(c);
  std::vector<bool> isPivot(m.cols, false);
  for (auto p : piv) isPivot[p] = true;
  GMat basis(m.cols, m.cols - piv.size());
  size_t k = 0;
  for (size_t f = 0; f < m.cols; ++f) {
    if (isPivot[f]) continue;
    basis(f, k) = GaussRat(1);
    for (size_t r = 0; r < piv.size(); ++r) basis(piv[r], k) = -c(r, f);
    ++k;
  }
  return basis;
}

GMat inverse(const GMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  const size_t n = m.rows;
  GMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = GaussRat(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
  GMat r(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

GMat stack(const GMat& top, const GMat& bottom) {
  if (top.cols != bottom.cols) throw std::invalid_argument("stack: column mismatch");
  GMat r(top.rows + bottom.rows, top.cols);
  std::copy(top.v.begin(), top.v.end(), r.v.begin());
  std::copy(bottom.v.begin(), bottom.v.end(), r.v.begin() + top.v.size());
  return r;
}

std::vector<GaussRat> leading_minors(const GMat& m) {
  std::vector<GaussRat> out;
  for (size_t k = 1; k <= m.rows; ++k) {
    GMat sub(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    // determinant via elimination
    GaussRat det(1);
    for (size_t c = 0; c < k; ++c) {
      size_t p = c;
      while (p < k && sub(p, c).isZero()) ++p;
      if (p == k) {
        det = GaussRat();
        break;
      }
      if (p != c) {
        for (size_t j = 0; j < k; ++j) std::swap(sub(p, j), sub(c, j));
        det = -det;
      }
      det *= sub(c, c);
      GaussRat inv = sub(c, c).inverse();
      for (size_t i = c + 1; i < k; ++i) {
        GaussRat f = sub(i, c) * inv;
        if (f.isZero()) continue;
        for (size_t j = c; j < k; ++j) sub(i, j) -= f * sub(c, j);
      }
    }
    out.push_back(det);
  }
  return out;
}

}  // namespace hetmod
