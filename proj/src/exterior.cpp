#include "hetmod/exterior.hpp"

#include <algorithm>
#include <stdexcept>

namespace hetmod {

std::vector<int> indices(Mask m) {
  std::vector<int> r;
  for (int k = 0; m; ++k, m >>= 1)
    if (m & 1) r.push_back(k + 1);
  return r;
}

Mask maskOf(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << (i - 1);
  return m;
}

static int crossings(Mask x, Mask y) {
  // number of pairs (i in x, j in y) with i > j
  int c = 0;
  for (int j : indices(y)) c += __builtin_popcount(x & ~((Mask(1) << j) - 1));
  return c;
}

int wedgeSign(const MultiIndex& x, const MultiIndex& y) {
  if ((x.h & y.h) || (x.a & y.a)) return 0;
  int c = x.q() * y.p() + crossings(x.h, y.h) + crossings(x.a, y.a);
  return (c & 1) ? -1 : 1;
}

std::vector<Mask> subsets(int n, int k) {
  std::vector<Mask> r;
  for (Mask m = 0; m < (Mask(1) << n); ++m)
    if (__builtin_popcount(m) == k) r.push_back(m);
  return r;
}

Form Form::basis(int n, MultiIndex k, const Scalar& c) {
  Form f(n);
  f.addTerm(k, c);
  return f;
}

Scalar Form::coeff(MultiIndex k) const {
  auto it = t_.find(k);
  return it == t_.end() ? Scalar() : it->second;
}

void Form::addTerm(MultiIndex k, const Scalar& c) {
  if (c.isZero()) return;
  auto [it, fresh] = t_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.isZero()) t_.erase(it);
  }
}

Form& Form::operator+=(const Form& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [k, c] : o.t_) addTerm(k, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [k, c] : o.t_) addTerm(k, -c);
  return *this;
}

Form& Form::operator*=(const Scalar& s) {
  if (s.isZero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, c] : t_) c *= s;
  return *this;
}

Form wedge(const Form& x, const Form& y) {
  Form r(std::max(x.n(), y.n()));
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      int s = wedgeSign(kx, ky);
      if (s == 0) continue;
      r.addTerm({kx.h | ky.h, kx.a | ky.a}, s > 0 ? cx * cy : -(cx * cy));
    }
  return r;
}

// conj(α^H∧ᾱ^A) = ᾱ^H∧α^A = (-1)^{|H||A|} α^A∧ᾱ^H
Form Form::conj() const {
  Form r(n_);
  for (const auto& [k, c] : t_) {
    Scalar v = c.conj();
    r.addTerm({k.a, k.h}, (k.p() * k.q()) % 2 ? -v : v);
  }
  return r;
}

Form Form::part(int p, int q) const {
  Form r(n_);
  for (const auto& [k, c] : t_)
    if (k.p() == p && k.q() == q) r.addTerm(k, c);
  return r;
}

Form Form::specialize(const GaussRat& alpha0) const {
  Form r(n_);
  for (const auto& [k, c] : t_) r.addTerm(k, Scalar(c.eval(alpha0)));
  return r;
}

Scalar Form::evaluate(const std::vector<int>& frame) const {
  MultiIndex k;
  std::vector<int> seq;
  for (int f : frame) {
    bool bar = f >= n_;
    int i = bar ? f - n_ : f;
    Mask& m = bar ? k.a : k.h;
    if (m & (Mask(1) << i)) return Scalar();
    m |= Mask(1) << i;
    seq.push_back(bar ? n_ + i : i);
  }
  // sign of the permutation sorting seq (holomorphic first, each ascending)
  int inv = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  Scalar c = coeff(k);
  return inv % 2 ? -c : c;
}

std::string basisName(MultiIndex k) {
  std::string s;
  for (int i : indices(k.h)) s += (s.empty() ? "" : "^") + std::string("a") + std::to_string(i);
  for (int i : indices(k.a)) s += (s.empty() ? "" : "^") + std::string("ab") + std::to_string(i);
  return s.empty() ? "1" : s;
}

std::string Form::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ") " + basisName(k);
  }
  return s;
}

VForm::VForm(int n_, int r_, std::vector<Slot> s) : n(n_), r(r_), slots(std::move(s)) {
  size_t total = 1;
  for (size_t i = 0; i < slots.size(); ++i) total *= dim(i);
  c.assign(total, Form(n));
}

size_t VForm::at(const std::vector<int>& idx) const {
  size_t k = 0;
  for (size_t s = 0; s < slots.size(); ++s) k = k * dim(s) + idx[s];
  return k;
}

std::vector<int> VForm::unflat(size_t k) const {
  std::vector<int> idx(slots.size());
  for (size_t s = slots.size(); s-- > 0;) {
    idx[s] = static_cast<int>(k % dim(s));
    k /= dim(s);
  }
  return idx;
}

bool VForm::isZero() const {
  return std::all_of(c.begin(), c.end(), [](const Form& f) { return f.isZero(); });
}

VForm& VForm::operator+=(const VForm& o) {
  if (o.slots != slots) throw std::invalid_argument("value slot mismatch");
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

VForm& VForm::operator-=(const VForm& o) {
  if (o.slots != slots) throw std::invalid_argument("value slot mismatch");
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

VForm& VForm::operator*=(const Scalar& s) {
  for (auto& f : c) f *= s;
  return *this;
}

VForm wedgeLeft(const Form& x, const VForm& v) {
  VForm r = v;
  for (auto& f : r.c) f = wedge(x, f);
  return r;
}

Form contract(const VForm& V, const VForm& kappa) {
  if (V.slots != std::vector<Slot>{Slot::Con} || kappa.slots != std::vector<Slot>{Slot::Cov})
    throw std::invalid_argument("contract expects a T-valued and a T*-valued form");
  Form r(V.n);
  for (int j = 0; j < V.n; ++j) r += wedge(V.c[j], kappa.c[j]);
  return r;
}

Form traceWedge(const VForm& x, const VForm& y) {
  Form r(x.n);
  int d = x.dim(0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r += wedge(x[{i, j}], y[{j, i}]);
  return r;
}

VForm matWedge(const VForm& x, const VForm& y) {
  VForm r(x.n, x.r, x.slots);
  int d = x.dim(0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      Form acc(x.n);
      for (int j = 0; j < d; ++j) acc += wedge(x[{i, j}], y[{j, k}]);
      r[{i, k}] = acc;
    }
  return r;
}

}  // namespace hetmod
