#include "hetmod/cohomology.hpp"

#include <random>

namespace hetmod {

GMat dbarAt(const QComplex& q, int p, const GaussRat& alpha0) {
  if (p < 0 || p >= q.n()) return GMat(q.dim(p + 1), q.dim(p));
  return specialize(q.dbarMatrix(p), alpha0);
}

void requireComplex(const QComplex& q, const GaussRat& alpha0) {
  for (int p = 0; p + 2 <= q.n(); ++p) {
    GMat sq = dbarAt(q, p + 1, alpha0) * dbarAt(q, p, alpha0);
    if (isZero(sq)) continue;
    size_t nz = 0;
    for (const auto& x : sq.v) nz += !x.isZero();
    throw NotAComplex(p, "D̄² ≠ 0 from degree " + std::to_string(p) + " at alpha' = " + alpha0.str() + " (" +
                             std::to_string(nz) + " nonzero entries); the anomaly equation fails");
  }
}

DegreeDims betti(const QComplex& q, int p, const GaussRat& alpha0) {
  DegreeDims d;
  d.p = p;
  d.dim = q.dim(p);
  d.rank = p < q.n() ? rank_field(dbarAt(q, p, alpha0)) : 0;
  d.ker = d.dim - d.rank;
  size_t incoming = p > 0 ? rank_field(dbarAt(q, p - 1, alpha0)) : 0;
  d.h = d.ker - incoming;
  return d;
}

size_t harmonic(const QComplex& q, int p, const GaussRat& alpha0) {
  GMat M(0, q.dim(p));
  if (p < q.n()) M = stack(M, dbarAt(q, p, alpha0));
  if (p > 0) M = stack(M, q.dstarFromGram(p, alpha0));
  return q.dim(p) - rank_field(M);
}

CohomologyReport cohomology(const QComplex& q, const GaussRat& alpha0) {
  requireComplex(q, alpha0);
  CohomologyReport r;
  r.model = q.model().name;
  r.alphaPrime = alpha0;
  r.diagonal = q.diagonal();
  const int n = q.n();
  std::vector<size_t> ranks(n + 1, 0);
  for (int p = 0; p < n; ++p) ranks[p] = rank_field(dbarAt(q, p, alpha0));
  for (int p = 0; p <= n; ++p) {
    DegreeDims d;
    d.p = p;
    d.dim = q.dim(p);
    d.rank = ranks[p];
    d.ker = d.dim - d.rank;
    d.h = d.ker - (p > 0 ? ranks[p - 1] : 0);
    d.harmonic = harmonic(q, p, alpha0);
    r.degrees.push_back(d);
    r.euler += (p % 2 ? -1 : 1) * static_cast<long>(d.h);
  }
  for (int p = 0; p <= n; ++p) {
    r.serrePairs.push_back({p, n - p});
    if (r.degrees[p].h != r.degrees[n - p].h) r.serre = false;
  }
  return r;
}

GMat symbolDbar(const QComplex& q, int p, const std::vector<GaussRat>& xi, const GaussRat& alpha0) {
  const int n = q.n();
  if (static_cast<int>(xi.size()) != n) throw std::invalid_argument("covector has the wrong number of components");
  bool zero = true;
  for (const auto& x : xi) zero = zero && x.isZero();
  if (zero) throw std::invalid_argument("symbol requested at xi = 0");
  Form x01(n);
  for (int k = 0; k < n; ++k) x01 += Scalar(xi[k]) * Form::alphaBar(n, k + 1);
  GMat M(q.dim(p + 1), q.dim(p));
  for (size_t i = 0; i < q.dim(p); ++i) {
    QSection s = q.basisSection(p, i);
    QSection o = q.zero(p + 1);
    o.kappa = wedgeLeft(x01, s.kappa);
    o.gamma = wedgeLeft(x01, s.gamma);
    o.w = wedgeLeft(x01, s.w);
    if (!q.diagonal())
      for (int l = 1; l <= n; ++l)
        o.kappa += Scalar(alpha0 * xi[l - 1].conj()) * q.curvatureLeg(s.w, l);
    auto col = q.toVector(o);
    for (size_t r = 0; r < col.size(); ++r) M(r, i) = col[r].constant();
  }
  return M;
}

GMat symbolMatrix(const QComplex& q, const std::vector<GaussRat>& xi, const GaussRat& alpha0) {
  GMat s1 = symbolDbar(q, 1, xi, alpha0);
  GMat s0 = symbolDbar(q, 0, xi, alpha0);
  GMat g0 = q.gram(0), g1 = q.gram(1);
  for (auto& x : g0.v) x = x.conj();
  for (auto& x : g1.v) x = x.conj();
  return stack(s1, inverse(g0) * dagger(s0) * g1);
}

std::vector<std::vector<GaussRat>> symbolSamples(int n) {
  const std::vector<GaussRat> vals = {GaussRat(0),      GaussRat(1),        GaussRat(-1),      GaussRat::I(),
                                      -GaussRat::I(),   GaussRat(1, 1),     GaussRat(1, -1)};
  std::vector<std::vector<GaussRat>> out;
  std::vector<size_t> idx(n, 0);
  while (true) {
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == vals.size()) idx[k++] = 0;
    if (k == idx.size()) break;
    std::vector<GaussRat> xi;
    for (size_t i : idx) xi.push_back(vals[i]);
    out.push_back(xi);
  }
  return out;
}

SymbolReport injectivityScan(const QComplex& q, const GaussRat& alpha0,
                             const std::vector<std::vector<GaussRat>>& extra) {
  SymbolReport r;
  auto samples = symbolSamples(q.n());
  samples.insert(samples.end(), extra.begin(), extra.end());
  for (const auto& xi : samples) {
    ++r.samples;
    if (rank_field(symbolMatrix(q, xi, alpha0)) < q.dim(1) && r.injective) {
      r.injective = false;
      r.firstFailure = xi;
    }
  }
  return r;
}

HdualReport hdualCheck(const QComplex& q, size_t samples, unsigned seed) {
  const int n = q.n();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coef(-3, 3);
  std::vector<GMat> Ku(n), Kw(n);
  for (int p = 0; p < n; ++p) {
    Ku[p] = nullspace(specialize(q.dbar1Matrix(n - p - 1), GaussRat()));
    Kw[p] = nullspace(specialize(q.legDbarMatrix(Leg::W, p), GaussRat()));
  }
  HdualReport r;
  for (size_t t = 0; r.samples < samples && t < samples * 4; ++t) {
    const int p = static_cast<int>(t % n), du = n - p - 1;
    if (!Ku[p].cols || !Kw[p].cols) continue;
    std::vector<Scalar> vu(q.dim(du)), vw(q.dim(p));
    const size_t ou = q.legOffset(Leg::Gamma, du), ow = q.legOffset(Leg::W, p);
    for (size_t c = 0; c < Ku[p].cols; ++c) {
      GaussRat x(coef(rng));
      for (size_t i = 0; i < Ku[p].rows; ++i) vu[ou + i] += Scalar(Ku[p](i, c) * x);
    }
    for (size_t c = 0; c < Kw[p].cols; ++c) {
      GaussRat x(coef(rng));
      for (size_t i = 0; i < Kw[p].rows; ++i) vw[ow + i] += Scalar(Kw[p](i, c) * x);
    }
    QSection u = q.fromVector(du, vu), w = q.fromVector(p, vw);
    auto [k, g] = q.applyHStar(w.w);
    Scalar lhs = q.pairQ1(u.gamma, u.w, k, g);
    Scalar rhs = q.pairTStarT(q.applyH(u.gamma, u.w), w.w);
    if ((n - p) % 2) rhs = -rhs;
    ++r.samples;
    if (!lhs.isZero()) ++r.nontrivial;
    if (lhs != rhs) ++r.failures;
  }
  return r;
}

}  // namespace hetmod
