#include "hetmod/qcomplex.hpp"

#include <functional>
#include <stdexcept>

namespace hetmod {

std::vector<GMat> traceFreeBasis(int r) {
  std::vector<GMat> b;
  for (int l = 0; l < r; ++l)
    for (int m = 0; m < r; ++m) {
      if (l == m && l == r - 1) continue;
      GMat e(r, r);
      if (l == m) {
        e(l, l) = 1;
        e(l + 1, l + 1) = -1;
      } else {
        e(l, m) = 1;
      }
      b.push_back(e);
    }
  return b;
}

std::vector<std::string> traceFreeLabels(int r) {
  std::vector<std::string> s;
  for (int l = 0; l < r; ++l)
    for (int m = 0; m < r; ++m) {
      if (l == m && l == r - 1) continue;
      s.push_back("E(" + std::to_string(l + 1) + "," + std::to_string(m + 1) + ")");
    }
  return s;
}

namespace {

GMat conjugate(const GMat& m) {
  GMat r = m;
  for (auto& x : r.v) x = x.conj();
  return r;
}

GMat kron(const GMat& a, const GMat& b) {
  GMat r(a.rows * b.rows, a.cols * b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j)
      for (size_t k = 0; k < b.rows; ++k)
        for (size_t l = 0; l < b.cols; ++l) r(i * b.rows + k, j * b.cols + l) = a(i, j) * b(k, l);
  return r;
}

GaussRat det(GMat m) {
  const size_t n = m.rows;
  GaussRat d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m(piv, c).isZero()) ++piv;
    if (piv == n) return GaussRat();
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    GaussRat inv = m(c, c).inverse();
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c).isZero()) continue;
      GaussRat f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::string abarLabel(Mask K) {
  std::string s = "abar{";
  bool first = true;
  for (int i : indices(K)) {
    s += (first ? "" : ",") + std::to_string(i);
    first = false;
  }
  return s + "}";
}

// Adjoint of x_a ↦ out_b = Σ c(b,a,k) ᾱ^k ∧ x_a for fiber metrics GA, GB.
template <typename Coef, typename Eps>
std::vector<Form> algebraicAdjoint(int na, int nb, int n, const GMat& GA, const GMat& GB, Coef c,
                                   const std::vector<Form>& y, Eps eps) {
  std::vector<Form> z(na, Form(n));
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int k = 0; k < n; ++k) {
        GaussRat cb = c(b, a, k);
        if (cb.isZero()) continue;
        for (int b2 = 0; b2 < nb; ++b2) {
          if (GB(b, b2).isZero() || y[b2].isZero()) continue;
          z[a] += Scalar((GB(b, b2) * cb).conj()) * eps(k, y[b2]);
        }
      }
  GMat Ginv = inverse(conjugate(GA));
  std::vector<Form> out(na, Form(n));
  for (int a = 0; a < na; ++a)
    for (int a2 = 0; a2 < na; ++a2)
      if (!Ginv(a, a2).isZero()) out[a] += Scalar(Ginv(a, a2)) * z[a2];
  return out;
}

}  // namespace

QComplex::QComplex(const HomogeneousModel& m, bool diagonal) : QComplex(m, bismut(m), diagonal) {}

QComplex::QComplex(const HomogeneousModel& m, ConnectionData plus, bool diagonal)
    : m_(m), diagonal_(diagonal), chern_(chern_connection_dbar(m)), plus_(std::move(plus)) {
  R_ = curvature(chern_, m_);
  T_ = torsion(m_);
  Hinv_ = inverse(m_.h);
  const int n = m_.n;
  Rcache_.assign(n, std::vector<std::vector<std::vector<GaussRat>>>(
                        n, std::vector<std::vector<GaussRat>>(n, std::vector<GaussRat>(n))));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int mm = 0; mm < n; ++mm) Rcache_[k][j][l][mm] = R_[{l, mm}].evaluate({n + k, j}).constant();
}

size_t QComplex::formDim(int p) const { return p < 0 || p > m_.n ? 0 : forms_(p).size(); }

size_t QComplex::legDim(Leg leg) const {
  switch (leg) {
    case Leg::Kappa:
    case Leg::W:
      return m_.n;
    case Leg::Gamma:
      return m_.rank * m_.rank - 1;
  }
  return 0;
}

size_t QComplex::dim(int p) const { return (2 * m_.n + m_.rank * m_.rank - 1) * formDim(p); }

size_t QComplex::legOffset(Leg leg, int p) const {
  switch (leg) {
    case Leg::Kappa:
      return 0;
    case Leg::Gamma:
      return legDim(Leg::Kappa) * formDim(p);
    case Leg::W:
      return (legDim(Leg::Kappa) + legDim(Leg::Gamma)) * formDim(p);
  }
  return 0;
}

std::vector<std::string> QComplex::labels(int p) const {
  std::vector<std::string> out;
  auto K = forms_(p);
  for (int j = 1; j <= m_.n; ++j)
    for (Mask k : K) out.push_back("e1:a^" + std::to_string(j) + ":" + abarLabel(k));
  for (const auto& e : traceFreeLabels(m_.rank))
    for (Mask k : K) out.push_back("e2:" + e + ":" + abarLabel(k));
  for (int j = 1; j <= m_.n; ++j)
    for (Mask k : K) out.push_back("e3:V^" + std::to_string(j) + ":" + abarLabel(k));
  return out;
}

QSection QComplex::zero(int p) const {
  QSection s;
  s.p = p;
  s.kappa = VForm(m_.n, m_.rank, {Slot::Cov});
  s.gamma = VForm(m_.n, m_.rank, {Slot::Gauge, Slot::Gauge});
  s.w = VForm(m_.n, m_.rank, {Slot::Con});
  return s;
}

QSection QComplex::fromVector(int p, const std::vector<Scalar>& v) const {
  if (v.size() != dim(p)) throw std::invalid_argument("section vector has the wrong length");
  QSection s = zero(p);
  auto K = forms_(p);
  const size_t C = K.size();
  const int n = m_.n;
  for (int j = 0; j < n; ++j)
    for (size_t i = 0; i < C; ++i) s.kappa.c[j].addTerm({0, K[i]}, v[j * C + i]);
  auto basis = traceFreeBasis(m_.rank);
  size_t off = legOffset(Leg::Gamma, p);
  for (size_t b = 0; b < basis.size(); ++b)
    for (size_t i = 0; i < C; ++i) {
      const Scalar& c = v[off + b * C + i];
      if (c.isZero()) continue;
      for (int x = 0; x < m_.rank; ++x)
        for (int y = 0; y < m_.rank; ++y)
          if (!basis[b](x, y).isZero()) s.gamma[{x, y}].addTerm({0, K[i]}, c * Scalar(basis[b](x, y)));
    }
  off = legOffset(Leg::W, p);
  for (int j = 0; j < n; ++j)
    for (size_t i = 0; i < C; ++i) s.w.c[j].addTerm({0, K[i]}, v[off + j * C + i]);
  return s;
}

std::vector<Scalar> QComplex::toVector(const QSection& s) const {
  const int p = s.p, n = m_.n, r = m_.rank;
  auto K = forms_(p);
  const size_t C = K.size();
  std::vector<Scalar> v(dim(p));
  auto check = [&](const Form& f) {
    for (const auto& [k, c] : f.terms())
      if (k.h != 0 || k.q() != p) throw std::logic_error("section leg is not of type (0," + std::to_string(p) + ")");
  };
  for (int j = 0; j < n; ++j) {
    check(s.kappa.c[j]);
    check(s.w.c[j]);
    for (size_t i = 0; i < C; ++i) {
      v[j * C + i] = s.kappa.c[j].coeff({0, K[i]});
      v[legOffset(Leg::W, p) + j * C + i] = s.w.c[j].coeff({0, K[i]});
    }
  }
  size_t off = legOffset(Leg::Gamma, p);
  size_t b = 0;
  for (int l = 0; l < r; ++l)
    for (int mm = 0; mm < r; ++mm) {
      if (l == mm && l == r - 1) continue;
      for (size_t i = 0; i < C; ++i) {
        Scalar c;
        if (l == mm) {
          for (int t = 0; t <= l; ++t) c += s.gamma[{t, t}].coeff({0, K[i]});
        } else {
          c = s.gamma[{l, mm}].coeff({0, K[i]});
        }
        v[off + b * C + i] = c;
      }
      ++b;
    }
  for (int x = 0; x < r; ++x) check(s.gamma[{x, x}]);
  for (size_t i = 0; i < C; ++i) {
    Scalar tr;
    for (int x = 0; x < r; ++x) tr += s.gamma[{x, x}].coeff({0, K[i]});
    if (!tr.isZero()) throw std::logic_error("gauge leg is not trace-free");
  }
  return v;
}

QSection QComplex::basisSection(int p, size_t i) const {
  std::vector<Scalar> v(dim(p));
  v[i] = Scalar(1);
  return fromVector(p, v);
}

VForm QComplex::dbarKappa(const VForm& kappa) const { return bundle_dbar(kappa, m_); }
VForm QComplex::dbarGamma(const VForm& gamma) const { return bundle_dbar(gamma, m_); }
VForm QComplex::dbarW(const VForm& w) const { return bundle_dbar(w, m_); }

GaussRat QComplex::T3(int l, int j, int k) const { return T_.evaluate({l, j, m_.n + k}).constant(); }

GaussRat QComplex::F2(int x, int y, int j, int k) const {
  return m_.F[{x, y}].evaluate({j, m_.n + k}).constant();
}

GaussRat QComplex::Rc(int k, int j, int l, int mm) const { return Rcache_[k][j][l][mm]; }

VForm QComplex::scriptFGamma(const VForm& gamma) const {
  const int n = m_.n, r = m_.rank;
  VForm out(n, r, {Slot::Cov});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Form acc(n);
      for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) {
          GaussRat f = F2(x, y, j, k);
          if (!f.isZero()) acc += Scalar(f) * gamma[{y, x}];
        }
      if (!acc.isZero()) out.c[j] += wedge(Form::alphaBar(n, k + 1), acc);
    }
  return out;
}

VForm QComplex::scriptFW(const VForm& w) const {
  const int n = m_.n, r = m_.rank;
  VForm out(n, r, {Slot::Gauge, Slot::Gauge});
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          GaussRat f = F2(x, y, j, k);
          if (!f.isZero() && !w.c[j].isZero()) out[{x, y}] += Scalar(f) * wedge(Form::alphaBar(n, k + 1), w.c[j]);
        }
  return out;
}

VForm QComplex::scriptT(const VForm& w) const {
  const int n = m_.n;
  VForm out(n, m_.rank, {Slot::Cov});
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        GaussRat t = T3(l, j, k);
        if (!t.isZero() && !w.c[l].isZero()) out.c[j] += Scalar(t) * wedge(Form::alphaBar(n, k + 1), w.c[l]);
      }
  return out;
}

// Chern connection on the (0,q)-form legs: ∇_E ᾱ^k = −Σ_m G(E, n+k, n+m) ᾱ^m.
VForm QComplex::formLegConnection(const VForm& x, int l, bool bar) const {
  const int n = m_.n;
  const int E = bar ? n + l - 1 : l - 1;
  std::vector<Form> nab(n, Form(n));
  for (int k = 0; k < n; ++k)
    for (int mm = 0; mm < n; ++mm) {
      const GaussRat& g = chern_(E, n + k, n + mm);
      if (!g.isZero()) nab[k] -= Scalar(g) * Form::alphaBar(n, mm + 1);
    }
  VForm out = x;
  for (auto& f : out.c) {
    Form acc(n);
    for (const auto& [key, c] : f.terms()) {
      auto idx = indices(key.a);
      for (size_t i = 0; i < idx.size(); ++i) {
        Form t = Form::constant(n, c);
        for (size_t s = 0; s < idx.size(); ++s) t = wedge(t, s == i ? nab[idx[s] - 1] : Form::alphaBar(n, idx[s]));
        acc += t;
      }
    }
    f = acc;
  }
  return out;
}

VForm QComplex::nablaPlus(const VForm& w, int l, bool bar) const {
  if (w.slots != std::vector<Slot>{Slot::Con}) throw std::invalid_argument("∇⁺ expects a T-valued form");
  const int n = m_.n;
  const int E = bar ? n + l - 1 : l - 1;
  VForm out = formLegConnection(w, l, bar);
  for (int b = 0; b < n; ++b)
    for (int mm = 0; mm < n; ++mm) {
      const GaussRat& g = plus_(E, b, mm);
      if (!g.isZero()) out.c[b] += Scalar(g) * w.c[mm];
    }
  return out;
}

VForm QComplex::curvatureLeg(const VForm& x, int l) const {
  const int n = m_.n;
  VForm out(n, m_.rank, {Slot::Cov});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Form acc(n);
      for (int mm = 0; mm < n; ++mm) {
        GaussRat rc = Rc(k, j, l - 1, mm);
        if (!rc.isZero()) acc += Scalar(rc) * x.c[mm];
      }
      if (!acc.isZero()) out.c[j] += wedge(Form::alphaBar(n, k + 1), acc);
    }
  return out;
}

VForm QComplex::RNablaPlus(const VForm& w) const {
  VForm out(m_.n, m_.rank, {Slot::Cov});
  for (int l = 1; l <= m_.n; ++l) out += curvatureLeg(nablaPlus(w, l), l);
  return out;
}

VForm QComplex::applyH(const VForm& gamma, const VForm& w) const {
  VForm out(m_.n, m_.rank, {Slot::Cov});
  if (diagonal_) return out;
  out += Scalar::a() * scriptFGamma(gamma);
  out += scriptT(w);
  out += Scalar::a() * RNablaPlus(w);
  return out;
}

std::pair<VForm, VForm> QComplex::applyHStar(const VForm& w) const {
  VForm k(m_.n, m_.rank, {Slot::Cov});
  VForm g(m_.n, m_.rank, {Slot::Gauge, Slot::Gauge});
  if (diagonal_) return {k, g};
  k += scriptT(w);
  k += Scalar::a() * RNablaPlus(w);
  g += scriptFW(w);
  return {k, g};
}

QSection QComplex::apply(const QSection& s) const {
  QSection out;
  out.p = s.p + 1;
  out.kappa = dbarKappa(s.kappa);
  out.gamma = dbarGamma(s.gamma);
  out.w = dbarW(s.w);
  if (!diagonal_) {
    out.kappa += applyH(s.gamma, s.w);
    out.gamma += scriptFW(s.w);
  }
  return out;
}

SMat QComplex::dbarMatrix(int p) const {
  SMat M(dim(p + 1), dim(p));
  for (size_t i = 0; i < dim(p); ++i) {
    auto col = toVector(apply(basisSection(p, i)));
    for (size_t r = 0; r < col.size(); ++r) M(r, i) = col[r];
  }
  return M;
}

namespace {

struct LegRange {
  size_t off, len;
};

}  // namespace

// Columns: images of leg basis sections; rows restricted to the target legs.
static SMat legBlockMatrix(const QComplex& q, int p, const std::vector<Leg>& src, const std::vector<Leg>& dst,
                           const std::function<QSection(const QSection&)>& op) {
  auto ranges = [&](int deg, const std::vector<Leg>& legs) {
    std::vector<LegRange> r;
    for (Leg l : legs) r.push_back({q.legOffset(l, deg), q.legDim(l) * q.formDim(deg)});
    return r;
  };
  auto sr = ranges(p, src), dr = ranges(p + 1, dst);
  size_t cols = 0, rows = 0;
  for (auto& r : sr) cols += r.len;
  for (auto& r : dr) rows += r.len;
  SMat M(rows, cols);
  size_t c = 0;
  for (auto& r : sr)
    for (size_t i = 0; i < r.len; ++i, ++c) {
      auto col = q.toVector(op(q.basisSection(p, r.off + i)));
      size_t row = 0;
      for (auto& d : dr)
        for (size_t t = 0; t < d.len; ++t, ++row) M(row, c) = col[d.off + t];
    }
  return M;
}

SMat QComplex::legDbarMatrix(Leg leg, int p) const {
  return legBlockMatrix(*this, p, {leg}, {leg}, [&](const QSection& s) {
    QSection o = zero(p + 1);
    o.kappa = dbarKappa(s.kappa);
    o.gamma = dbarGamma(s.gamma);
    o.w = dbarW(s.w);
    return o;
  });
}

SMat QComplex::dbar1Matrix(int p) const {
  return legBlockMatrix(*this, p, {Leg::Gamma, Leg::W}, {Leg::Gamma, Leg::W}, [&](const QSection& s) {
    QSection o = zero(p + 1);
    o.gamma = dbarGamma(s.gamma);
    if (!diagonal_) o.gamma += scriptFW(s.w);
    o.w = dbarW(s.w);
    return o;
  });
}

SMat QComplex::dbar2Matrix(int p) const {
  return legBlockMatrix(*this, p, {Leg::Kappa, Leg::Gamma}, {Leg::Kappa, Leg::Gamma}, [&](const QSection& s) {
    QSection o = zero(p + 1);
    o.kappa = dbarKappa(s.kappa);
    if (!diagonal_) o.kappa += Scalar::a() * scriptFGamma(s.gamma);
    o.gamma = dbarGamma(s.gamma);
    return o;
  });
}

SMat QComplex::hMatrix(int p) const {
  return legBlockMatrix(*this, p, {Leg::Gamma, Leg::W}, {Leg::Kappa}, [&](const QSection& s) {
    QSection o = zero(p + 1);
    o.kappa = applyH(s.gamma, s.w);
    return o;
  });
}

SMat QComplex::hStarMatrix(int p) const {
  return legBlockMatrix(*this, p, {Leg::W}, {Leg::Kappa, Leg::Gamma}, [&](const QSection& s) {
    QSection o = zero(p + 1);
    auto [k, g] = applyHStar(s.w);
    o.kappa = k;
    o.gamma = g;
    return o;
  });
}

static SMat blockUpper(const SMat& a, const SMat& b, const SMat& d) {
  SMat M(a.rows + d.rows, a.cols + d.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) M(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows; ++i)
    for (size_t j = 0; j < b.cols; ++j) M(i, a.cols + j) = b(i, j);
  for (size_t i = 0; i < d.rows; ++i)
    for (size_t j = 0; j < d.cols; ++j) M(a.rows + i, a.cols + j) = d(i, j);
  return M;
}

bool QComplex::reassemblyHolds(int p) const {
  SMat D = dbarMatrix(p);
  SMat split = blockUpper(legDbarMatrix(Leg::Kappa, p), hMatrix(p), dbar1Matrix(p));
  SMat dual = blockUpper(dbar2Matrix(p), hStarMatrix(p), legDbarMatrix(Leg::W, p));
  return D == split && D == dual;
}

GMat QComplex::formGram(int p) const {
  auto K = forms_(p);
  GMat G(K.size(), K.size());
  for (size_t i = 0; i < K.size(); ++i)
    for (size_t j = 0; j < K.size(); ++j) {
      auto a = indices(K[i]), b = indices(K[j]);
      GMat M(p, p);
      for (int s = 0; s < p; ++s)
        for (int t = 0; t < p; ++t) M(s, t) = Hinv_(a[s] - 1, b[t] - 1);
      G(i, j) = p == 0 ? GaussRat(1) : det(M);
    }
  return G;
}

GMat QComplex::fiberGram(Leg leg) const {
  const int n = m_.n;
  switch (leg) {
    case Leg::Kappa: {
      GMat G(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G(a, b) = Hinv_(b, a);
      return G;
    }
    case Leg::W:
      return m_.h;
    case Leg::Gamma: {
      auto B = traceFreeBasis(m_.rank);
      GMat G(B.size(), B.size());
      for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = 0; j < B.size(); ++j) {
          GaussRat s;
          for (size_t t = 0; t < B[i].v.size(); ++t) s += B[i].v[t] * B[j].v[t].conj();
          G(i, j) = s;
        }
      return G;
    }
  }
  return GMat();
}

GMat QComplex::legGram(Leg leg, int p) const { return kron(fiberGram(leg), formGram(p)); }

GMat QComplex::gram(int p) const {
  GMat G(dim(p), dim(p));
  for (Leg leg : {Leg::Kappa, Leg::Gamma, Leg::W}) {
    GMat g = legGram(leg, p);
    size_t off = legOffset(leg, p);
    for (size_t i = 0; i < g.rows; ++i)
      for (size_t j = 0; j < g.cols; ++j) G(off + i, off + j) = g(i, j);
  }
  return G;
}

static GMat gramAdjoint(const GMat& D, const GMat& Gsrc, const GMat& Gdst) {
  return inverse(conjugate(Gsrc)) * dagger(D) * conjugate(Gdst);
}

GMat QComplex::dstarFromGram(int p, const GaussRat& alpha0) const {
  return gramAdjoint(specialize(dbarMatrix(p - 1), alpha0), gram(p - 1), gram(p));
}

Form QComplex::epsStar(int k, const Form& f) const {
  const int n = m_.n;
  Form out(n);
  for (const auto& [key, c] : f.terms())
    for (int b = 0; b < n; ++b) {
      Mask bit = Mask(1) << b;
      if (!(key.a & bit) || Hinv_(b, k).isZero()) continue;
      int pos = __builtin_popcount(key.h) + __builtin_popcount(key.a & (bit - 1));
      Scalar v = c * Scalar(Hinv_(b, k));
      out.addTerm({key.h, key.a & ~bit}, pos % 2 ? -v : v);
    }
  return out;
}

VForm QComplex::scriptFStarKappa(const VForm& kappa) const {
  const int n = m_.n, r = m_.rank;
  auto eps = [&](int k, const Form& f) { return epsStar(k, f); };
  auto coef = [&](int j, int a, int k) { return F2(a % r, a / r, j, k); };  // a = y*r + x ↔ γ[y][x]
  GMat GA = GMat::identity(r * r);
  auto z = algebraicAdjoint(r * r, n, n, GA, fiberGram(Leg::Kappa), coef, kappa.c, eps);
  VForm out(n, r, {Slot::Gauge, Slot::Gauge});
  for (int y = 0; y < r; ++y)
    for (int x = 0; x < r; ++x) out[{y, x}] = z[y * r + x];
  // orthogonal projection to the trace-free part
  Form tr(n);
  for (int x = 0; x < r; ++x) tr += out[{x, x}];
  for (int x = 0; x < r; ++x) out[{x, x}] -= Scalar(GaussRat::frac(1, r)) * tr;
  return out;
}

VForm QComplex::scriptFStarGamma(const VForm& gamma) const {
  const int n = m_.n, r = m_.rank;
  auto eps = [&](int k, const Form& f) { return epsStar(k, f); };
  auto coef = [&](int b, int j, int k) { return F2(b / r, b % r, j, k); };  // b = x*r + y ↔ out[x][y]
  VForm out(n, r, {Slot::Con});
  out.c = algebraicAdjoint(n, r * r, n, m_.h, GMat::identity(r * r), coef, gamma.c, eps);
  return out;
}

VForm QComplex::scriptTStar(const VForm& kappa) const {
  const int n = m_.n;
  auto eps = [&](int k, const Form& f) { return epsStar(k, f); };
  auto coef = [&](int j, int l, int k) { return T3(l, j, k); };
  VForm out(n, m_.rank, {Slot::Con});
  out.c = algebraicAdjoint(n, n, n, m_.h, fiberGram(Leg::Kappa), coef, kappa.c, eps);
  return out;
}

VForm QComplex::nablaRStar(const VForm& kappa) const {
  const int n = m_.n;
  auto eps = [&](int k, const Form& f) { return epsStar(k, f); };
  VForm out(n, m_.rank, {Slot::Con});
  for (int l = 1; l <= n; ++l) {
    auto coef = [&](int j, int mm, int k) { return Rc(k, j, l - 1, mm); };
    VForm y(n, m_.rank, {Slot::Con});
    y.c = algebraicAdjoint(n, n, n, m_.h, fiberGram(Leg::Kappa), coef, kappa.c, eps);
    out -= nablaPlus(y, l, true);
  }
  return out;
}

GMat QComplex::dstarFromFormulas(int p, const GaussRat& alpha0) const {
  const Scalar a(alpha0);
  GMat adjK = gramAdjoint(specialize(legDbarMatrix(Leg::Kappa, p - 1), alpha0), legGram(Leg::Kappa, p - 1),
                          legGram(Leg::Kappa, p));
  GMat adjG = gramAdjoint(specialize(legDbarMatrix(Leg::Gamma, p - 1), alpha0), legGram(Leg::Gamma, p - 1),
                          legGram(Leg::Gamma, p));
  GMat adjW = gramAdjoint(specialize(legDbarMatrix(Leg::W, p - 1), alpha0), legGram(Leg::W, p - 1),
                          legGram(Leg::W, p));
  GMat M(dim(p - 1), dim(p));
  auto place = [&](const GMat& blk, Leg dst, Leg src) {
    size_t ro = legOffset(dst, p - 1), co = legOffset(src, p);
    for (size_t i = 0; i < blk.rows; ++i)
      for (size_t j = 0; j < blk.cols; ++j) M(ro + i, co + j) = blk(i, j);
  };
  place(adjK, Leg::Kappa, Leg::Kappa);
  place(adjG, Leg::Gamma, Leg::Gamma);
  place(adjW, Leg::W, Leg::W);
  if (diagonal_) return M;
  for (size_t i = 0; i < dim(p); ++i) {
    QSection t = basisSection(p, i);
    QSection o = zero(p - 1);
    o.gamma = a * scriptFStarKappa(t.kappa);
    o.w = scriptTStar(t.kappa) + a * nablaRStar(t.kappa) + scriptFStarGamma(t.gamma);
    auto col = toVector(o);
    for (size_t r = 0; r < col.size(); ++r) M(r, i) += col[r].eval(alpha0);
  }
  return M;
}

SMat QComplex::anomalyOperator(int p) const {
  const int n = m_.n;
  Form w = omega(m_);
  Scalar half_a = Scalar(GaussRat::frac(1, 2)) * Scalar::a();
  Form phi = Scalar(GaussRat::I()) * del(dbar(w, m_), m_) + half_a * traceWedge(R_, R_) -
             half_a * traceWedge(m_.F, m_.F);
  SMat M(dim(p + 2), dim(p));
  for (int l = 0; l < n; ++l)
    for (size_t i = 0; i < formDim(p); ++i) {
      size_t col = legOffset(Leg::W, p) + l * formDim(p) + i;
      QSection s = basisSection(p, col);
      QSection o = zero(p + 2);
      for (int mm = 0; mm < n; ++mm) {
        Form psi = interiorHol(interiorHol(phi, mm + 1), l + 1);
        o.kappa.c[mm] += wedge(psi, s.w.c[l]);
      }
      auto v = toVector(o);
      for (size_t r = 0; r < v.size(); ++r) M(r, col) = v[r];
    }
  return M;
}

std::vector<VForm> QComplex::commuteResidual(int p) const {
  const int n = m_.n;
  std::vector<VForm> out;
  for (int j = 0; j < n; ++j)
    for (size_t i = 0; i < formDim(p); ++i) {
      QSection s = basisSection(p, legOffset(Leg::W, p) + j * formDim(p) + i);
      VForm nab(n, m_.rank, {Slot::Cov, Slot::Con});
      for (int l = 0; l < n; ++l) {
        VForm x = nablaPlus(s.w, l + 1);
        for (int k = 0; k < n; ++k) nab[{l, k}] = x.c[k];
      }
      VForm res = bundle_dbar(nab, m_);
      VForm dw = dbarW(s.w);
      for (int l = 0; l < n; ++l) {
        VForm x = nablaPlus(dw, l + 1);
        for (int k = 0; k < n; ++k) {
          res[{l, k}] -= x.c[k];
          for (int jj = 0; jj < n; ++jj) {
            Form rj(n);
            for (int q = 0; q < n; ++q) {
              GaussRat rc = Rc(q, jj, k, l);
              if (!rc.isZero()) rj += Scalar(rc) * Form::alphaBar(n, q + 1);
            }
            if (!rj.isZero()) res[{l, k}] -= wedge(rj, s.w.c[jj]);
          }
        }
      }
      out.push_back(res);
    }
  return out;
}

Scalar QComplex::top(const Form& f) const {
  Mask full = (Mask(1) << m_.n) - 1;
  return f.coeff({full, full});
}

Scalar QComplex::pairQ1(const VForm& beta, const VForm& v, const VForm& kappa, const VForm& gamma) const {
  Form f = contract(v, kappa) - Scalar::a() * traceWedge(beta, gamma);
  return top(wedge(f, volumeForm(m_)));
}

Scalar QComplex::pairTStarT(const VForm& kappa, const VForm& w) const {
  Form f(m_.n);
  for (int j = 0; j < m_.n; ++j) f += wedge(kappa.c[j], w.c[j]);
  return top(wedge(f, volumeForm(m_)));
}

}  // namespace hetmod
