#ifndef HETMOD_SCALAR_HPP
#define HETMOD_SCALAR_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace hetmod {

/// Gaussian rational re + im*i, both parts exact.
class GaussRat {
public:
  GaussRat() = default;
  GaussRat(long v) : re_(v) {}
  GaussRat(mpq_class re, mpq_class im = 0);
  static GaussRat frac(long p, long q, long ip = 0, long iq = 1);
  static GaussRat I() { return GaussRat(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool isZero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool isReal() const { return sgn(im_) == 0; }
  GaussRat conj() const { return GaussRat(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussRat inverse() const;

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  std::string str() const;

private:
  mpq_class re_, im_;
};

/// Element of Q(i)[a]; a stands for the anomaly constant.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : Scalar(GaussRat(v)) {}
  Scalar(const GaussRat& c);
  explicit Scalar(std::vector<GaussRat> coeffs);
  static Scalar a() { return Scalar(std::vector<GaussRat>{GaussRat(0), GaussRat(1)}); }
  static Scalar parse(const std::string& text);

  const std::vector<GaussRat>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool isZero() const { return c_.empty(); }
  bool isConstant() const { return c_.size() <= 1; }
  GaussRat constant() const { return c_.empty() ? GaussRat() : c_[0]; }
  GaussRat coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : GaussRat(); }

  Scalar conj() const;
  GaussRat eval(const GaussRat& alpha0) const;
  Scalar divideByUnit(const Scalar& d) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  Scalar operator-() const;
  friend bool operator==(const Scalar& x, const Scalar& y) { return x.c_ == y.c_; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  std::string str() const;

private:
  void trim();
  std::vector<GaussRat> c_;
};

GaussRat evaluate_alpha(const Scalar& x, const GaussRat& alpha0);
GaussRat parseGaussRat(const std::string& text);

}  // namespace hetmod

#endif
