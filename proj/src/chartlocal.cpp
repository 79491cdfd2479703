#include "hetmod/chartlocal.hpp"

#include <cctype>
#include <functional>
#include <numeric>

namespace hetmod {

// ---- Poly ----

Poly Poly::constant(int n, const GaussRat& c) {
  Poly p(n);
  if (!c.isZero()) p.t_[std::vector<int>(2 * n, 0)] = c;
  return p;
}

Poly Poly::var(int n, int i, bool bar) {
  std::vector<int> e(2 * n, 0);
  e[(bar ? n : 0) + i - 1] = 1;
  return monomial(n, e);
}

Poly Poly::monomial(int n, const std::vector<int>& exps, const GaussRat& c) {
  Poly p(n);
  if (!c.isZero()) p.t_[exps] = c;
  return p;
}

bool Poly::isConstant() const {
  for (const auto& [e, c] : t_)
    if (std::accumulate(e.begin(), e.end(), 0) != 0) return false;
  return true;
}

GaussRat Poly::constantTerm() const {
  auto it = t_.find(std::vector<int>(2 * n_, 0));
  return it == t_.end() ? GaussRat() : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!n_) n_ = o.n_;
  for (const auto& [e, c] : o.t_) {
    auto& x = t_[e];
    x += c;
    if (x.isZero()) t_.erase(e);
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const GaussRat& c) {
  if (c.isZero()) {
    t_.clear();
    return *this;
  }
  for (auto& [e, x] : t_) x *= c;
  return *this;
}

Poly operator*(const Poly& x, const Poly& y) {
  Poly r(x.n_ ? x.n_ : y.n_);
  for (const auto& [ex, cx] : x.t_)
    for (const auto& [ey, cy] : y.t_) {
      std::vector<int> e(ex.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ex[i] + ey[i];
      auto& v = r.t_[e];
      v += cx * cy;
      if (v.isZero()) r.t_.erase(e);
    }
  return r;
}

Poly Poly::conj() const {
  Poly r(n_);
  for (const auto& [e, c] : t_) {
    std::vector<int> s(e.begin() + n_, e.end());
    s.insert(s.end(), e.begin(), e.begin() + n_);
    r.t_[s] = c.conj();
  }
  return r;
}

Poly Poly::derivative(int i, bool bar) const {
  const size_t k = (bar ? n_ : 0) + i - 1;
  Poly r(n_);
  for (const auto& [e, c] : t_) {
    if (!e[k]) continue;
    std::vector<int> s = e;
    --s[k];
    r.t_[s] = c * GaussRat(e[k]);
  }
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : t_) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (int k = 0; k < 2 * n_; ++k) {
      if (!e[k]) continue;
      mono += (mono.empty() ? "" : " ") + std::string(k < n_ ? "z" : "zb") + std::to_string(k % n_ + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    if (mono.empty())
      out += c.str();
    else if (c == GaussRat(1))
      out += mono;
    else
      out += "(" + c.str() + ") " + mono;
  }
  return out;
}

// ---- ChartForm ----

ChartForm ChartForm::function(const Poly& f) {
  ChartForm x(f.n());
  x.addTerm({0, 0}, f);
  return x;
}

ChartForm ChartForm::dz(int n, int i) {
  ChartForm x(n);
  x.addTerm({Mask(1) << (i - 1), 0}, Poly::constant(n, 1));
  return x;
}

ChartForm ChartForm::dzb(int n, int i) {
  ChartForm x(n);
  x.addTerm({0, Mask(1) << (i - 1)}, Poly::constant(n, 1));
  return x;
}

void ChartForm::addTerm(MultiIndex k, const Poly& p) {
  if (p.isZero()) return;
  auto& x = t_[k];
  x += p;
  if (x.isZero()) t_.erase(k);
}

Poly ChartForm::coeff(MultiIndex k) const {
  auto it = t_.find(k);
  return it == t_.end() ? Poly(n_) : it->second;
}

ChartForm& ChartForm::operator+=(const ChartForm& o) {
  if (!n_) n_ = o.n_;
  for (const auto& [k, p] : o.t_) addTerm(k, p);
  return *this;
}

ChartForm& ChartForm::operator-=(const ChartForm& o) {
  if (!n_) n_ = o.n_;
  for (const auto& [k, p] : o.t_) addTerm(k, -p);
  return *this;
}

ChartForm& ChartForm::operator*=(const Poly& f) {
  std::map<MultiIndex, Poly> r;
  for (const auto& [k, p] : t_) {
    Poly q = f * p;
    if (!q.isZero()) r[k] = q;
  }
  t_ = std::move(r);
  return *this;
}

ChartForm ChartForm::conj() const {
  ChartForm r(n_);
  for (const auto& [k, p] : t_) {
    // conj(dz^H∧dz̄^A) = dz̄^H∧dz^A = (−1)^{|H||A|} dz^A∧dz̄^H
    int s = (__builtin_popcount(k.h) * __builtin_popcount(k.a)) % 2 ? -1 : 1;
    r.addTerm({k.a, k.h}, GaussRat(s) * p.conj());
  }
  return r;
}

std::string ChartForm::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [k, p] : t_) {
    if (!out.empty()) out += " + ";
    std::string b;
    for (int i : indices(k.h)) b += (b.empty() ? "" : "^") + std::string("dz") + std::to_string(i);
    for (int i : indices(k.a)) b += (b.empty() ? "" : "^") + std::string("dzb") + std::to_string(i);
    out += "(" + p.str() + ")" + (b.empty() ? "" : " " + b);
  }
  return out;
}

ChartForm wedge(const ChartForm& x, const ChartForm& y) {
  ChartForm r(x.n() ? x.n() : y.n());
  for (const auto& [kx, px] : x.terms())
    for (const auto& [ky, py] : y.terms()) {
      int s = wedgeSign(kx, ky);
      if (!s) continue;
      r.addTerm({kx.h | ky.h, kx.a | ky.a}, GaussRat(s) * (px * py));
    }
  return r;
}

static ChartForm partial(const ChartForm& x, bool bar) {
  const int n = x.n();
  ChartForm r(n);
  for (const auto& [k, p] : x.terms()) {
    ChartForm basis(n);
    basis.addTerm(k, Poly::constant(n, 1));
    for (int i = 1; i <= n; ++i) {
      Poly dp = p.derivative(i, bar);
      if (dp.isZero()) continue;
      r += wedge(dp * (bar ? ChartForm::dzb(n, i) : ChartForm::dz(n, i)), basis);
    }
  }
  return r;
}

ChartForm poly_dbar(const ChartForm& x) { return partial(x, true); }
ChartForm poly_del(const ChartForm& x) { return partial(x, false); }
ChartForm poly_d(const ChartForm& x) { return poly_del(x) + poly_dbar(x); }

ChartForm dbar_homotopy(const ChartForm& x) {
  const int n = x.n();
  if (!poly_dbar(x).isZero()) throw ChartError("homotopy input is not dbar-closed");
  ChartForm r(n);
  for (const auto& [k, p] : x.terms()) {
    if (!k.a) throw ChartError("homotopy input has a component of antiholomorphic degree 0");
    const int q = __builtin_popcount(k.a), hp = __builtin_popcount(k.h);
    auto J = indices(k.a);
    for (const auto& [e, c] : p.terms()) {
      int w = q;
      for (int i = 0; i < n; ++i) w += e[n + i];
      for (size_t pos = 0; pos < J.size(); ++pos) {
        // z̄_j ι_{∂/∂z̄_j}
        std::vector<int> e2 = e;
        ++e2[n + J[pos] - 1];
        int s = (hp + static_cast<int>(pos)) % 2 ? -1 : 1;
        r.addTerm({k.h, k.a & ~(Mask(1) << (J[pos] - 1))},
                  Poly::monomial(n, e2, c * GaussRat(s) * GaussRat::frac(1, w)));
      }
    }
  }
  return r;
}

// ---- parsing ----

namespace {

struct PullbackParser {
  std::string s;
  int n;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ChartError("cannot parse chart pullback '" + s + "': " + why);
  }
  void skip() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
  }
  long number() {
    size_t j = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return std::stol(s.substr(j, i - j));
  }
  int index() {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected an index");
    long k = number();
    if (k < 1 || k > n) fail("index out of range");
    return static_cast<int>(k);
  }

  ChartForm parse() {
    ChartForm out(n);
    skip();
    bool first = true;
    while (i < s.size()) {
      GaussRat sign(1);
      if (s[i] == '+' || s[i] == '-') {
        if (s[i] == '-') sign = GaussRat(-1);
        ++i;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      Poly coef = Poly::constant(n, sign);
      int d = 0;
      while (true) {
        skip();
        if (i >= s.size() || s[i] == '+' || s[i] == '-') break;
        if (s.compare(i, 2, "dz") == 0) {
          if (d) fail("two differentials in one term");
          i += 2;
          d = index();
        } else if (s[i] == '(') {
          size_t j = s.find(')', i);
          if (j == std::string::npos) fail("unbalanced parenthesis");
          coef *= parseGaussRat(s.substr(i + 1, j - i - 1));
          i = j + 1;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
          long num = number();
          long den = 1;
          if (i < s.size() && s[i] == '/') {
            ++i;
            den = number();
            if (!den) fail("zero denominator");
          }
          coef *= GaussRat::frac(num, den);
        } else if (s[i] == 'i') {
          ++i;
          coef *= GaussRat::I();
        } else if (s[i] == 'z') {
          bool bar = s.compare(i, 2, "zb") == 0;
          i += bar ? 2 : 1;
          Poly v = Poly::var(n, index(), bar);
          long e = 1;
          if (i < s.size() && s[i] == '^') {
            ++i;
            e = number();
          }
          for (long t = 0; t < e; ++t) coef = coef * v;
        } else {
          fail(std::string("unexpected character '") + s[i] + "'");
        }
      }
      if (!d) fail("term without a differential");
      out += coef * ChartForm::dz(n, d);
    }
    return out;
  }
};

GaussRat leibnizSign(const std::vector<int>& perm) {
  int inv = 0;
  for (size_t a = 0; a < perm.size(); ++a)
    for (size_t b = a + 1; b < perm.size(); ++b) inv += perm[a] > perm[b];
  return GaussRat(inv % 2 ? -1 : 1);
}

Poly polyDet(const std::vector<std::vector<Poly>>& M, int n) {
  const int k = static_cast<int>(M.size());
  Poly d(n);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Poly t = Poly::constant(n, leibnizSign(perm));
    for (int r = 0; r < k && !t.isZero(); ++r) t = t * M[r][perm[r]];
    d += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return d;
}

}  // namespace

ChartForm parsePullback(const std::string& text, int n) { return PullbackParser{text, n}.parse(); }

// ---- chart ----

ChartForm Chart::pullback(const Form& f) const {
  ChartForm r(n);
  for (const auto& [k, c] : f.terms()) {
    if (!c.isConstant()) throw ChartError("pullback of a form depending on alpha'");
    ChartForm t = ChartForm::function(Poly::constant(n, c.constant()));
    for (int i : indices(k.h)) t = wedge(t, alpha[i - 1]);
    for (int i : indices(k.a)) t = wedge(t, alphaBar[i - 1]);
    r += t;
  }
  return r;
}

Chart make_chart(const HomogeneousModel& m) {
  if (m.chartPullback.empty()) throw ChartError(m.name + ": no polynomial chart");
  Chart c;
  c.n = m.n;
  const int n = m.n;
  for (int a = 0; a < n; ++a) {
    ChartForm f = parsePullback(m.chartPullback[a], n);
    c.alpha.push_back(f);
    c.alphaBar.push_back(f.conj());
  }
  c.P.assign(n, std::vector<Poly>(n, Poly(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) c.P[a][b] = c.alpha[a].coeff({Mask(1) << b, 0});
  Poly det = polyDet(c.P, n);
  if (!det.isConstant() || det.isZero())
    throw ChartError(m.name + ": chart coframe has non-constant or vanishing determinant");
  GaussRat dinv = det.constantTerm().inverse();
  c.Pinv.assign(n, std::vector<Poly>(n, Poly(n)));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      // cofactor of P(a,b), transposed
      std::vector<std::vector<Poly>> minor;
      for (int r = 0; r < n; ++r) {
        if (r == a) continue;
        std::vector<Poly> row;
        for (int s = 0; s < n; ++s)
          if (s != b) row.push_back(c.P[r][s]);
        minor.push_back(row);
      }
      Poly cof = n == 1 ? Poly::constant(n, 1) : polyDet(minor, n);
      c.Pinv[b][a] = ((a + b) % 2 ? GaussRat(-1) : GaussRat(1)) * dinv * cof;
    }
  for (int a = 0; a < n; ++a) {
    if (!m.dalpha[a].part(1, 1).isZero())
      throw ChartError(m.name + ": chart trivialization needs a holomorphic invariant frame (d alpha has a (1,1) part)");
    if (poly_d(c.alpha[a]) != c.pullback(m.dalpha[a]))
      throw ChartError(m.name + ": chart pullback of a" + std::to_string(a + 1) + " is inconsistent with d a" +
                       std::to_string(a + 1));
  }
  return c;
}

// ---- sections ----

bool isZero(const ChartSection& s) {
  for (const auto* v : {&s.kappa, &s.gamma, &s.w})
    for (const auto& f : *v)
      if (!f.isZero()) return false;
  return true;
}

ChartSection operator-(const ChartSection& x, const ChartSection& y) {
  ChartSection r = x;
  for (size_t i = 0; i < r.kappa.size(); ++i) r.kappa[i] -= y.kappa[i];
  for (size_t i = 0; i < r.gamma.size(); ++i) r.gamma[i] -= y.gamma[i];
  for (size_t i = 0; i < r.w.size(); ++i) r.w[i] -= y.w[i];
  return r;
}

ChartComplex::ChartComplex(const HomogeneousModel& m) : ChartComplex(m, m.alphaPrime) {}

ChartComplex::ChartComplex(const HomogeneousModel& m, const GaussRat& alphaPrime)
    : m_(m), chart_(make_chart(m)), alpha_(alphaPrime), T_(torsion(m)) {}

GaussRat ChartComplex::T3(int l, int j, int k) const { return T_.evaluate({l, j, m_.n + k}).constant(); }

GaussRat ChartComplex::F2(int x, int y, int j, int k) const {
  return m_.F[{x, y}].evaluate({j, m_.n + k}).constant();
}

ChartSection ChartComplex::zero(int p) const {
  const int n = m_.n, r = m_.rank;
  ChartSection s;
  s.p = p;
  s.kappa.assign(n, ChartForm(n));
  s.gamma.assign(r * r, ChartForm(n));
  s.w.assign(n, ChartForm(n));
  return s;
}

ChartSection ChartComplex::dbar(const ChartSection& s) const {
  ChartSection o = s;
  ++o.p;
  for (auto* v : {&o.kappa, &o.gamma, &o.w})
    for (auto& f : *v) f = poly_dbar(f);
  return o;
}

ChartSection ChartComplex::apply(const ChartSection& s) const {
  const int n = m_.n, r = m_.rank;
  ChartSection o = dbar(s);
  const auto& ab = chart_.alphaBar;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      ChartForm acc(n);
      for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) {
          GaussRat f = F2(x, y, j, k);
          if (!f.isZero()) acc += (alpha_ * f) * s.gamma[y * r + x];
        }
      for (int l = 0; l < n; ++l) {
        GaussRat t = T3(l, j, k);
        if (!t.isZero()) acc += t * s.w[l];
      }
      if (!acc.isZero()) o.kappa[j] += wedge(ab[k], acc);
    }
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          GaussRat f = F2(x, y, j, k);
          if (!f.isZero() && !s.w[j].isZero()) o.gamma[x * r + y] += f * wedge(ab[k], s.w[j]);
        }
  return o;
}

std::vector<ChartForm> ChartComplex::gaugeCurvature() const {
  const int r = m_.rank;
  std::vector<ChartForm> F;
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y) F.push_back(chart_.pullback(m_.F[{x, y}]));
  return F;
}

std::vector<std::vector<Poly>> ChartComplex::tensorToFrame(const std::vector<std::vector<Poly>>& coord) const {
  const int n = m_.n;
  std::vector<std::vector<Poly>> out(n, std::vector<Poly>(n, Poly(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          if (!coord[c][d].isZero()) out[a][b] += coord[c][d] * chart_.Pinv[c][a] * chart_.Pinv[d][b];
  return out;
}

TrivializationData ChartComplex::build(const std::vector<ChartForm>& shiftA,
                                       const std::vector<std::vector<Poly>>& shiftTau) const {
  const int n = m_.n, r = m_.rank;
  TrivializationData t;
  t.alphaPrime = alpha_;
  auto F = gaugeCurvature();
  for (int i = 0; i < r * r; ++i) {
    ChartForm a = F[i].isZero() ? ChartForm(n) : dbar_homotopy(F[i]);
    if (!shiftA.empty()) a += shiftA[i];
    t.A.push_back(a);
  }
  t.Aframe.assign(n, PolyMat(r, std::vector<Poly>(r, Poly(n))));
  for (int i = 0; i < r * r; ++i)
    for (const auto& [k, p] : t.A[i].terms()) {
      if (k.a || __builtin_popcount(k.h) != 1) throw ChartError("gauge potential is not a (1,0)-form");
      int b = indices(k.h)[0] - 1;
      for (int j = 0; j < n; ++j) t.Aframe[j][i / r][i % r] += p * chart_.Pinv[b][j];
    }
  t.tauSource.assign(n, std::vector<ChartForm>(n, ChartForm(n)));
  t.tauTilde.assign(n, std::vector<Poly>(n, Poly(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ChartForm src(n);
      for (int k = 0; k < n; ++k) {
        Poly coef = Poly::constant(n, T3(b, a, k));
        for (int x = 0; x < r; ++x)
          for (int y = 0; y < r; ++y) {
            GaussRat f = F2(y, x, b, k);
            if (!f.isZero()) coef -= (alpha_ * f) * t.Aframe[a][x][y];
          }
        src += coef * chart_.alphaBar[k];
      }
      if (!poly_dbar(src).isZero())
        throw ChartError("the defining equation of tau~ has no solution at alpha' = " + alpha_.str() +
                         " (anomaly fails)");
      t.tauSource[a][b] = src;
      Poly tau = src.isZero() ? Poly(n) : dbar_homotopy(src).coeff({0, 0});
      if (!shiftTau.empty()) tau += shiftTau[a][b];
      t.tauTilde[a][b] = tau;
    }
  return t;
}

// Z_j = −A_j is the potential of 𝓕 in the prepend convention: V̄_k(Z_j) = F_{jk̄}.
ChartSection ChartComplex::phi(const TrivializationData& t, const ChartSection& s) const {
  const int n = m_.n, r = m_.rank;
  ChartSection o = s;
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < r; ++x)
      for (int y = 0; y < r; ++y)
        if (!t.Aframe[a][x][y].isZero()) o.kappa[a] -= (alpha_ * t.Aframe[a][x][y]) * s.gamma[y * r + x];
    for (int b = 0; b < n; ++b) o.kappa[a] += t.tauTilde[a][b] * s.w[b];
  }
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int j = 0; j < n; ++j) o.gamma[x * r + y] -= t.Aframe[j][x][y] * s.w[j];
  return o;
}

ChartSection ChartComplex::phiInv(const TrivializationData& t, const ChartSection& s) const {
  const int n = m_.n, r = m_.rank;
  ChartSection o = s;
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < r; ++x)
      for (int y = 0; y < r; ++y)
        if (!t.Aframe[a][x][y].isZero()) o.kappa[a] += (alpha_ * t.Aframe[a][x][y]) * s.gamma[y * r + x];
    for (int d = 0; d < n; ++d) {
      // α′ A·A − τ̃
      Poly c = -t.tauTilde[a][d];
      for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) c += alpha_ * (t.Aframe[a][x][y] * t.Aframe[d][y][x]);
      o.kappa[a] += c * s.w[d];
    }
  }
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int j = 0; j < n; ++j) o.gamma[x * r + y] += t.Aframe[j][x][y] * s.w[j];
  return o;
}

ChartSection ChartComplex::residual(const TrivializationData& t, const ChartSection& s) const {
  return apply(s) - phiInv(t, dbar(phi(t, s)));
}

std::vector<ChartSection> ChartComplex::monomialSections(int maxDeg) const {
  const int n = m_.n, r = m_.rank;
  std::vector<std::vector<int>> monos;
  std::vector<int> e(2 * n, 0);
  // enumerate exponent vectors with total degree ≤ maxDeg
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == 2 * n) {
      monos.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[pos] = k;
      rec(pos + 1, left - k);
    }
    e[pos] = 0;
  };
  rec(0, maxDeg);
  std::vector<ChartSection> out;
  for (int p = 0; p <= n; ++p)
    for (Mask J : subsets(n, p))
      for (const auto& mono : monos) {
        ChartForm f(n);
        f.addTerm({0, J}, Poly::monomial(n, mono));
        for (int j = 0; j < n; ++j) {
          ChartSection s = zero(p);
          s.kappa[j] = f;
          out.push_back(s);
          s = zero(p);
          s.w[j] = f;
          out.push_back(s);
        }
        for (int l = 0; l < r; ++l)
          for (int mm = 0; mm < r; ++mm) {
            if (l == mm && l == r - 1) continue;
            ChartSection s = zero(p);
            if (l == mm) {
              s.gamma[l * r + l] = f;
              s.gamma[(l + 1) * r + l + 1] = GaussRat(-1) * f;
            } else {
              s.gamma[l * r + mm] = f;
            }
            out.push_back(s);
          }
      }
  return out;
}

// ---- gauge forms ----

static std::vector<ChartForm> matWedge(const std::vector<ChartForm>& x, const std::vector<ChartForm>& y, int r) {
  std::vector<ChartForm> out(r * r, ChartForm(x.empty() ? 0 : x[0].n()));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) out[a * r + b] += wedge(x[a * r + c], y[c * r + b]);
  return out;
}

ChartForm trace_wedge(const std::vector<ChartForm>& x, const std::vector<ChartForm>& y, int r) {
  ChartForm t(x.empty() ? 0 : x[0].n());
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) t += wedge(x[a * r + b], y[b * r + a]);
  return t;
}

std::vector<ChartForm> full_curvature(const std::vector<ChartForm>& A, int r) {
  auto out = matWedge(A, A, r);
  for (int i = 0; i < r * r; ++i) out[i] += poly_d(A[i]);
  return out;
}

ChartForm chern_simons(const std::vector<ChartForm>& A, int r) {
  std::vector<ChartForm> dA;
  for (const auto& a : A) dA.push_back(poly_d(a));
  ChartForm cs = trace_wedge(A, dA, r);
  cs += GaussRat::frac(2, 3) * trace_wedge(A, matWedge(A, A, r), r);
  return cs;
}

// ---- reports ----

TrivializationReport verify_trivialization(const ChartComplex& c, const TrivializationData& t, int maxDeg) {
  TrivializationReport rep;
  const int r = c.rank(), n = c.n();
  auto F = c.gaugeCurvature();
  rep.dbarA = true;
  for (int i = 0; i < r * r; ++i) rep.dbarA = rep.dbarA && poly_dbar(t.A[i]) == F[i];
  rep.defb = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      rep.defb = rep.defb && poly_dbar(ChartForm::function(t.tauTilde[a][b])) == t.tauSource[a][b];
  auto Ffull = full_curvature(t.A, r);
  ChartForm trFF = trace_wedge(Ffull, Ffull, r);
  rep.chernSimons = poly_d(chern_simons(t.A, r)) == trFF && trFF == trace_wedge(F, F, r);
  rep.sections = rep.inverse = true;
  for (const auto& s : c.monomialSections(maxDeg)) {
    ++rep.sectionsChecked;
    if (!isZero(c.residual(t, s))) {
      ++rep.sectionFailures;
      rep.sections = false;
    }
    if (!isZero(c.phi(t, c.phiInv(t, s)) - s) || !isZero(c.phiInv(t, c.phi(t, s)) - s)) rep.inverse = false;
  }
  return rep;
}

TransitionReport transition_check(const ChartComplex& c, const TrivializationData& t1,
                                  const TrivializationData& t2, int maxDeg, const std::string& label) {
  TransitionReport rep;
  rep.label = label;
  rep.holomorphic = rep.cocycle = true;
  auto psi12 = [&](const ChartSection& s) { return c.phi(t1, c.phiInv(t2, s)); };
  auto psi21 = [&](const ChartSection& s) { return c.phi(t2, c.phiInv(t1, s)); };
  for (const auto& s : c.monomialSections(maxDeg)) {
    ++rep.sectionsChecked;
    if (!isZero(psi12(c.dbar(s)) - c.dbar(psi12(s)))) rep.holomorphic = false;
    if (!isZero(psi12(psi21(s)) - s)) rep.cocycle = false;
  }
  return rep;
}

std::vector<TransitionReport> standard_transitions(const ChartComplex& c, int maxDeg) {
  const int n = c.n(), r = c.rank();
  TrivializationData t1 = c.build();
  std::vector<TransitionReport> out;
  out.push_back(transition_check(c, t1, c.build(), maxDeg, "identical"));
  if (r >= 2 && n >= 1) {
    std::vector<ChartForm> shift(r * r, ChartForm(n));
    shift[0] = ChartForm::dz(n, 1);
    shift[r + 1] = GaussRat(-1) * ChartForm::dz(n, 1);
    out.push_back(transition_check(c, t1, c.build(shift), maxDeg, "A + diag(dz1,-dz1)"));
  }
  if (n >= 2) {
    std::vector<std::vector<Poly>> coord(n, std::vector<Poly>(n, Poly(n)));
    coord[0][1] = Poly::constant(n, 1);
    out.push_back(transition_check(c, t1, c.build({}, c.tensorToFrame(coord)), maxDeg, "tau + dz1 (x) dz2"));
  }
  return out;
}

}  // namespace hetmod
