#include "hetmod/geometry.hpp"

#include <functional>
#include <stdexcept>

namespace hetmod {

Form coframe(const HomogeneousModel& m, int A) {
  return A < m.n ? Form::alpha(m.n, A + 1) : Form::alphaBar(m.n, A - m.n + 1);
}

void HomogeneousModel::finalize() {
  const Mask full = Mask(1) << n;
  dcache_.assign(size_t(full) * full, Form(n));
  std::vector<Form> d1(2 * n);
  for (int a = 0; a < n; ++a) {
    d1[a] = dalpha[a];
    d1[n + a] = dalpha[a].conj();
  }
  for (Mask hm = 0; hm < full; ++hm)
    for (Mask am = 0; am < full; ++am) {
      std::vector<int> seq;
      for (int i : indices(hm)) seq.push_back(i - 1);
      for (int i : indices(am)) seq.push_back(n + i - 1);
      Form acc(n);
      for (size_t i = 0; i < seq.size(); ++i) {
        Form term = Form::constant(n, Scalar(1));
        for (size_t j = 0; j < seq.size(); ++j) term = wedge(term, j == i ? d1[seq[j]] : coframe(*this, seq[j]));
        if (i % 2) acc -= term;
        else acc += term;
      }
      dcache_[hm | (am << n)] = acc;
    }
}

Form exterior_derivative(const Form& x, const HomogeneousModel& m) {
  Form r(m.n);
  for (const auto& [k, c] : x.terms()) r += c * m.dBasis(k);
  return r;
}

Form del(const Form& x, const HomogeneousModel& m) {
  Form r(m.n);
  for (const auto& [k, c] : x.terms()) r += c * m.dBasis(k).part(k.p() + 1, k.q());
  return r;
}

Form dbar(const Form& x, const HomogeneousModel& m) {
  Form r(m.n);
  for (const auto& [k, c] : x.terms()) r += c * m.dBasis(k).part(k.p(), k.q() + 1);
  return r;
}

Form nonIntegrablePart(const Form& x, const HomogeneousModel& m) {
  Form r(m.n);
  for (const auto& [k, c] : x.terms()) {
    Form d = m.dBasis(k);
    r += c * (d - d.part(k.p() + 1, k.q()) - d.part(k.p(), k.q() + 1));
  }
  return r;
}

std::vector<std::string> validate(const HomogeneousModel& m) {
  std::vector<std::string> err;
  if (m.n < 1 || m.n > 8) err.push_back("n must be between 1 and 8");
  if (static_cast<int>(m.dalpha.size()) != m.n) {
    err.push_back("d must list every coframe element");
    return err;
  }
  for (int a = 0; a < m.n; ++a) {
    const Form& f = m.dalpha[a];
    for (const auto& [k, c] : f.terms()) {
      if (k.degree() != 2) err.push_back("d(a" + std::to_string(a + 1) + ") has a term of degree " + std::to_string(k.degree()));
      if (!c.isConstant()) err.push_back("d(a" + std::to_string(a + 1) + ") depends on the anomaly variable");
    }
    if (!f.part(0, 2).isZero()) err.push_back("non-integrable: d(a" + std::to_string(a + 1) + ") has a (0,2) component");
  }
  if (!err.empty()) return err;
  for (int a = 0; a < m.n; ++a) {
    if (!exterior_derivative(m.dalpha[a], m).isZero()) err.push_back("d^2 != 0 on a" + std::to_string(a + 1));
  }
  if (m.h.rows != size_t(m.n) || m.h.cols != size_t(m.n)) {
    err.push_back("metric must be n x n");
  } else {
    if (dagger(m.h) != m.h) err.push_back("metric is not Hermitian");
    for (const auto& d : leading_minors(m.h))
      if (!d.isReal() || sgn(d.re()) <= 0) {
        err.push_back("metric is not positive definite");
        break;
      }
  }
  if (m.omegaCoeff.isZero() || !m.omegaCoeff.isConstant()) err.push_back("omega_coeff must be a nonzero constant");
  if (!m.alphaPrime.isReal()) err.push_back("alpha_prime must be real");
  if (m.rank < 1) err.push_back("bundle rank must be positive");
  if (m.F.slots != std::vector<Slot>{Slot::Gauge, Slot::Gauge} || m.F.r != m.rank) {
    err.push_back("F must be an r x r matrix of forms");
    return err;
  }
  Form tr(m.n);
  for (int i = 0; i < m.rank; ++i) tr += m.F[{i, i}];
  if (!tr.isZero()) err.push_back("F is not trace-free");
  for (const auto& f : m.F.c) {
    if (f != f.part(1, 1)) err.push_back("F has components outside bidegree (1,1)");
    for (const auto& [k, c] : f.terms())
      if (!c.isConstant()) err.push_back("F depends on the anomaly variable");
    if (!dbar(f, m).isZero()) err.push_back("F is not dbar-closed");
  }
  return err;
}

Form omega(const HomogeneousModel& m) {
  Form w(m.n);
  for (int a = 1; a <= m.n; ++a)
    for (int b = 1; b <= m.n; ++b)
      w += Scalar(GaussRat::I() * m.h(a - 1, b - 1)) * wedge(Form::alpha(m.n, a), Form::alphaBar(m.n, b));
  return w;
}

Form volumeForm(const HomogeneousModel& m) {
  return Form::basis(m.n, {(Mask(1) << m.n) - 1, 0}, m.omegaCoeff);
}

Form torsion(const HomogeneousModel& m) { return Scalar(GaussRat::I()) * del(omega(m), m); }

GMat fullMetric(const HomogeneousModel& m) {
  const int n = m.n;
  GMat G(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      G(a, n + b) = m.h(a, b);
      G(n + b, a) = m.h(a, b);
    }
  return G;
}

GaussRat bracket(const HomogeneousModel& m, int A, int B, int C) {
  Form dth = C < m.n ? m.dalpha[C] : m.dalpha[C - m.n].conj();
  return -dth.evaluate({A, B}).constant();
}

namespace {

// Solve g(∇_{E_A}E_C, E_D) = k(A,C,D) for the connection coefficients.
ConnectionData fromLowered(const HomogeneousModel& m, ConnKind kind,
                           const std::function<GaussRat(int, int, int)>& k) {
  const int N = 2 * m.n;
  GMat Ginv = inverse(fullMetric(m));
  ConnectionData c{m.n, kind, std::vector<GaussRat>(size_t(N) * N * N)};
  for (int A = 0; A < N; ++A)
    for (int C = 0; C < N; ++C) {
      std::vector<GaussRat> kv(N);
      for (int D = 0; D < N; ++D) kv[D] = k(A, C, D);
      for (int B = 0; B < N; ++B) {
        GaussRat s;
        for (int D = 0; D < N; ++D) s += kv[D] * Ginv(D, B);
        c(A, B, C) = s;
      }
    }
  return c;
}

GaussRat koszul(const HomogeneousModel& m, const GMat& G, int X, int Y, int Z) {
  const int N = 2 * m.n;
  GaussRat s;
  for (int E = 0; E < N; ++E) {
    s += bracket(m, X, Y, E) * G(E, Z);
    s -= bracket(m, Y, Z, E) * G(E, X);
    s += bracket(m, Z, X, E) * G(E, Y);
  }
  return s * GaussRat::frac(1, 2);
}

GMat holBlock(const ConnectionData& c, int l) {
  GMat P(c.n, c.n);
  for (int j = 0; j < c.n; ++j)
    for (int k = 0; k < c.n; ++k) P(j, k) = c(l, j, k);
  return P;
}

GMat antiholBlock(const ConnectionData& c, int l) {
  GMat Q(c.n, c.n);
  for (int j = 0; j < c.n; ++j)
    for (int k = 0; k < c.n; ++k) Q(j, k) = c(c.n + l, j, k);
  return Q;
}

GMat conjugate(const GMat& a) {
  GMat r = a;
  for (auto& x : r.v) x = x.conj();
  return r;
}

GMat transpose(const GMat& a) {
  GMat r(a.cols, a.rows);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) r(j, i) = a(i, j);
  return r;
}

// A J-preserving connection is fixed on T^{0,1} by conjugation.
void fillConjugateBlocks(ConnectionData& c) {
  const int n = c.n;
  for (int A = 0; A < 2 * n; ++A) {
    int Abar = A < n ? A + n : A - n;
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        c(A, n + b, n + k) = c(Abar, b, k).conj();
        c(A, n + b, k) = GaussRat();
        c(A, b, n + k) = GaussRat();
      }
  }
}

// Metric compatibility: H conj(Q) = -P^T H for each direction pair (V_l, V̄_l).
void completeFromAntihol(ConnectionData& c, const GMat& H) {
  GMat Hinv = inverse(H);
  for (int l = 0; l < c.n; ++l) {
    GMat Pt = (GMat(c.n, c.n) - H * conjugate(antiholBlock(c, l))) * Hinv;
    GMat P = transpose(Pt);
    for (int j = 0; j < c.n; ++j)
      for (int k = 0; k < c.n; ++k) c(l, j, k) = P(j, k);
  }
}

void completeFromHol(ConnectionData& c, const GMat& H) {
  GMat Hinv = inverse(H);
  for (int l = 0; l < c.n; ++l) {
    GMat Q = conjugate((GMat(c.n, c.n) - Hinv * transpose(holBlock(c, l))) * H);
    for (int j = 0; j < c.n; ++j)
      for (int k = 0; k < c.n; ++k) c(c.n + l, j, k) = Q(j, k);
  }
}

GaussRat jFactor(const HomogeneousModel& m, int A) { return A < m.n ? GaussRat::I() : -GaussRat::I(); }

}  // namespace

ConnectionData levi_civita(const HomogeneousModel& m) {
  GMat G = fullMetric(m);
  return fromLowered(m, ConnKind::LeviCivita, [&](int A, int C, int D) { return koszul(m, G, A, C, D); });
}

ConnectionData chern_connection(const HomogeneousModel& m) {
  GMat G = fullMetric(m);
  Form dw = exterior_derivative(omega(m), m);
  return fromLowered(m, ConnKind::Chern, [&](int A, int C, int D) {
    return koszul(m, G, A, C, D) - GaussRat::frac(1, 2) * jFactor(m, A) * dw.evaluate({A, C, D}).constant();
  });
}

ConnectionData chern_connection_dbar(const HomogeneousModel& m) {
  const int n = m.n;
  ConnectionData c{n, ConnKind::Chern, std::vector<GaussRat>(size_t(8) * n * n * n)};
  // ∇_{V̄_l} V_k = [V̄_l, V_k]^{1,0}
  for (int l = 0; l < n; ++l)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) c(n + l, b, k) = bracket(m, n + l, k, b);
  completeFromAntihol(c, m.h);
  fillConjugateBlocks(c);
  return c;
}

Scalar raisedTorsion(const HomogeneousModel& m, const Form& T, int j, int k, int l) {
  GMat Hinv = inverse(m.h);
  Scalar s;
  for (int mm = 1; mm <= m.n; ++mm)
    s += Scalar(Hinv(mm - 1, j - 1)) * T.evaluate({k - 1, l - 1, m.n + mm - 1});
  return s;
}

ConnectionData bismut(const HomogeneousModel& m) {
  ConnectionData c = chern_connection_dbar(m);
  c.kind = ConnKind::Bismut;
  Form T = torsion(m);
  for (int k = 1; k <= m.n; ++k)
    for (int j = 1; j <= m.n; ++j)
      for (int l = 1; l <= m.n; ++l) c(k - 1, j - 1, l - 1) -= raisedTorsion(m, T, j, l, k).constant();
  completeFromHol(c, m.h);
  fillConjugateBlocks(c);
  return c;
}

Form dc_omega(const HomogeneousModel& m) {
  Form w = omega(m);
  return Scalar(GaussRat::I()) * (del(w, m) - dbar(w, m));
}

ConnectionData bismut_from_levi_civita(const HomogeneousModel& m) {
  GMat G = fullMetric(m);
  Form H = dc_omega(m);
  return fromLowered(m, ConnKind::Bismut, [&](int A, int C, int D) {
    return koszul(m, G, A, C, D) - GaussRat::frac(1, 2) * H.evaluate({A, D, C}).constant();
  });
}

VForm connectionForms(const ConnectionData& c, const HomogeneousModel& m) {
  const int n = m.n;
  VForm th(n, m.rank, {Slot::Con, Slot::Cov});
  for (int b = 0; b < n; ++b)
    for (int k = 0; k < n; ++k) {
      Form f(n);
      for (int A = 0; A < 2 * n; ++A) f += Scalar(c(A, b, k)) * coframe(m, A);
      th[{b, k}] = f;
    }
  return th;
}

VForm curvature(const ConnectionData& c, const HomogeneousModel& m) {
  VForm th = connectionForms(c, m);
  VForm R = matWedge(th, th);
  for (size_t i = 0; i < R.size(); ++i) R.c[i] += exterior_derivative(th.c[i], m);
  return R;
}

Scalar curvatureComponent(const VForm& R, int kbar, int j, int l, int mm) {
  return R[{l - 1, mm - 1}].evaluate({R.n + kbar - 1, j - 1});
}

VForm bundle_dbar(const VForm& v, const HomogeneousModel& m) {
  const int n = m.n;
  // θ_a^b with ∂̄α^b = α^a ⊗ θ_a^b
  std::vector<std::vector<Form>> th(n, std::vector<Form>(n, Form(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        Scalar cc = m.dalpha[b].evaluate({a, n + l});
        if (!cc.isZero()) th[a][b] -= cc * Form::alphaBar(n, l + 1);
      }
  VForm out = v;
  for (size_t k = 0; k < v.size(); ++k) out.c[k] = dbar(v.c[k], m);
  for (size_t k = 0; k < v.size(); ++k) {
    if (v.c[k].isZero()) continue;
    std::vector<int> idx = v.unflat(k);
    for (size_t s = 0; s < v.slots.size(); ++s) {
      if (v.slots[s] == Slot::Gauge) continue;
      int cur = idx[s];
      std::vector<int> j = idx;
      for (int o = 0; o < n; ++o) {
        j[s] = o;
        if (v.slots[s] == Slot::Cov) {
          if (!th[o][cur].isZero()) out[j] += wedge(th[o][cur], v.c[k]);
        } else {
          if (!th[cur][o].isZero()) out[j] -= wedge(th[cur][o], v.c[k]);
        }
      }
    }
  }
  return out;
}

Form interiorHol(const Form& x, int j) {
  Form r(x.n());
  Mask bit = Mask(1) << (j - 1);
  for (const auto& [k, c] : x.terms()) {
    if (!(k.h & bit)) continue;
    int pos = __builtin_popcount(k.h & (bit - 1));
    r.addTerm({k.h & ~bit, k.a}, pos % 2 ? -c : c);
  }
  return r;
}

Form anomalyResidual(const HomogeneousModel& m) {
  Form w = omega(m);
  Form ddw = del(dbar(w, m), m);
  VForm R = curvature(chern_connection_dbar(m), m);
  Form trFF = traceWedge(m.F, m.F);
  Form trRR = traceWedge(R, R);
  return Scalar(GaussRat(0, 2)) * ddw - Scalar::a() * (trFF - trRR);
}

SystemReport check_heterotic_system(const HomogeneousModel& m, const GaussRat& alpha0) {
  SystemReport r;
  r.alphaPrime = alpha0;
  r.degenerate = alpha0.isZero();
  r.alphaArbitrary = m.alphaArbitrary;
  r.F1 = exterior_derivative(volumeForm(m), m);
  r.F2 = anomalyResidual(m).specialize(alpha0);
  Form w = omega(m);
  Form w2 = wedge(w, w);
  r.D1 = m.F;
  for (auto& f : r.D1.c) f = wedge(f, w2);
  r.D2 = exterior_derivative(w2, m);
  return r;
}

SystemReport check_heterotic_system(const HomogeneousModel& m) {
  return check_heterotic_system(m, m.alphaPrime);
}

VForm chern_symmetry_residual(const HomogeneousModel& m) {
  const int n = m.n;
  Form T = torsion(m);
  VForm Tv(n, m.rank, {Slot::Con, Slot::Cov, Slot::Cov});
  for (int a = 1; a <= n; ++a)
    for (int l = 1; l <= n; ++l)
      for (int q = 1; q <= n; ++q) Tv[{a - 1, l - 1, q - 1}] = Form::constant(n, raisedTorsion(m, T, a, l, q));
  VForm res = Scalar(-1) * bundle_dbar(Tv, m);
  VForm R = curvature(chern_connection_dbar(m), m);
  for (int a = 1; a <= n; ++a)
    for (int l = 1; l <= n; ++l)
      for (int q = 1; q <= n; ++q)
        for (int k = 1; k <= n; ++k) {
          Scalar c = curvatureComponent(R, k, q, a, l) - curvatureComponent(R, k, l, a, q);
          res[{a - 1, l - 1, q - 1}] += c * Form::alphaBar(n, k);
        }
  return res;
}

}  // namespace hetmod
