#ifndef HETMOD_EXTERIOR_HPP
#define HETMOD_EXTERIOR_HPP

#include "hetmod/scalar.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hetmod {

/// Bit k-1 set means index k present.
using Mask = std::uint32_t;

/// Sorted holomorphic and antiholomorphic index sets of a basis form.
struct MultiIndex {
  Mask h = 0, a = 0;
  int p() const { return __builtin_popcount(h); }
  int q() const { return __builtin_popcount(a); }
  int degree() const { return p() + q(); }
  friend bool operator<(const MultiIndex& x, const MultiIndex& y) {
    return x.h != y.h ? x.h < y.h : x.a < y.a;
  }
  friend bool operator==(const MultiIndex& x, const MultiIndex& y) { return x.h == y.h && x.a == y.a; }
};

std::vector<int> indices(Mask m);
Mask maskOf(const std::vector<int>& idx);
/// Sign of x∧y relative to the sorted index list, 0 if they overlap.
int wedgeSign(const MultiIndex& x, const MultiIndex& y);
/// All masks with k bits among n.
std::vector<Mask> subsets(int n, int k);

/// Scalar-valued invariant form; coefficients are relative to α^H∧ᾱ^A, H and A sorted.
class Form {
public:
  Form() = default;
  explicit Form(int n) : n_(n) {}
  static Form basis(int n, MultiIndex k, const Scalar& c = Scalar(1));
  static Form alpha(int n, int i) { return basis(n, {Mask(1) << (i - 1), 0}); }
  static Form alphaBar(int n, int i) { return basis(n, {0, Mask(1) << (i - 1)}); }
  static Form constant(int n, const Scalar& c) { return basis(n, {0, 0}, c); }

  int n() const { return n_; }
  const std::map<MultiIndex, Scalar>& terms() const { return t_; }
  bool isZero() const { return t_.empty(); }
  Scalar coeff(MultiIndex k) const;
  void addTerm(MultiIndex k, const Scalar& c);

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& s);
  friend Form operator+(Form x, const Form& y) { return x += y; }
  friend Form operator-(Form x, const Form& y) { return x -= y; }
  friend Form operator*(const Scalar& s, Form x) { return x *= s; }
  Form operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Form& x, const Form& y) { return x.t_ == y.t_; }
  friend bool operator!=(const Form& x, const Form& y) { return !(x == y); }

  Form conj() const;
  Form part(int p, int q) const;
  Form specialize(const GaussRat& alpha0) const;
  /// Evaluation on complex frame vectors; index k<n is V_{k+1}, k>=n is the conjugate.
  Scalar evaluate(const std::vector<int>& frame) const;
  std::string str() const;

private:
  int n_ = 0;
  std::map<MultiIndex, Scalar> t_;
};

Form wedge(const Form& x, const Form& y);
std::string basisName(MultiIndex k);

/// Kinds of value slot carried by a vector-valued form.
enum class Slot { Cov, Con, Gauge };

/// Form with values in a tensor product of T*, T and gauge-frame slots,
/// stored as a dense array of scalar forms.
struct VForm {
  int n = 0, r = 0;
  std::vector<Slot> slots;
  std::vector<Form> c;

  VForm() = default;
  VForm(int n, int r, std::vector<Slot> s);
  int dim(size_t s) const { return slots[s] == Slot::Gauge ? r : n; }
  size_t size() const { return c.size(); }
  /// Flat position from per-slot 0-based indices.
  size_t at(const std::vector<int>& idx) const;
  std::vector<int> unflat(size_t k) const;
  Form& operator[](const std::vector<int>& idx) { return c[at(idx)]; }
  const Form& operator[](const std::vector<int>& idx) const { return c[at(idx)]; }

  bool isZero() const;
  VForm& operator+=(const VForm& o);
  VForm& operator-=(const VForm& o);
  VForm& operator*=(const Scalar& s);
  friend VForm operator+(VForm x, const VForm& y) { return x += y; }
  friend VForm operator-(VForm x, const VForm& y) { return x -= y; }
  friend VForm operator*(const Scalar& s, VForm x) { return x *= s; }
  friend bool operator==(const VForm& x, const VForm& y) { return x.slots == y.slots && x.c == y.c; }
};

/// Wedge every component with a scalar form on the left.
VForm wedgeLeft(const Form& x, const VForm& v);
/// V⌟κ with the vector form part first.
Form contract(const VForm& V, const VForm& kappa);
/// Trace of the wedge product of two End-valued forms.
Form traceWedge(const VForm& x, const VForm& y);
/// Matrix product with wedge of End-valued forms.
VForm matWedge(const VForm& x, const VForm& y);

}  // namespace hetmod

#endif
