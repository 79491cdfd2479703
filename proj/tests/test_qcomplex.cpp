#include "hetmod/models.hpp"
#include "hetmod/qcomplex.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hetmod;

namespace {

std::vector<HomogeneousModel> builtins() { return {build_iwasawa(), build_calabi_eckmann(), build_torus()}; }

VForm vec(int n, int j, const Form& f) {
  VForm V(n, 0, {Slot::Con});
  V[{j - 1}] = f;
  return V;
}

VForm cov(int n, int j, const Form& f) {
  VForm k(n, 0, {Slot::Cov});
  k[{j - 1}] = f;
  return k;
}

Form one3() { return Form::constant(3, Scalar(1)); }
Form ab(int i) { return Form::alphaBar(3, i); }

bool isZeroMat(const SMat& m) {
  for (const auto& x : m.v)
    if (!x.isZero()) return false;
  return true;
}

SMat mul(const SMat& a, const SMat& b) { return a * b; }

GMat conj(const GMat& m) {
  GMat r = m;
  for (auto& x : r.v) x = x.conj();
  return r;
}

}  // namespace

TEST_SUITE("qcomplex") {

TEST_CASE("gauge term on Iwasawa") {
  QComplex q(build_iwasawa());
  VForm f = q.scriptFW(vec(3, 1, one3()));
  CHECK(f[{0, 0}] == Scalar(GaussRat::frac(0, 1, 1, 4)) * ab(1));
  CHECK(f[{1, 1}] == Scalar(GaussRat::frac(0, 1, -1, 4)) * ab(1));
  CHECK(f[{0, 1}].isZero());
  CHECK(f[{1, 0}].isZero());
  CHECK(q.scriptFW(vec(3, 3, one3())).isZero());
}

TEST_CASE("torsion term on Iwasawa") {
  QComplex q(build_iwasawa());
  VForm t = q.scriptT(vec(3, 1, ab(1)));
  // −½ α² ⊗ ᾱ³∧ᾱ¹
  CHECK(t == cov(3, 2, Scalar(GaussRat::frac(-1, 2)) * wedge(ab(3), ab(1))));
  for (int k = 1; k <= 3; ++k) CHECK(q.scriptT(vec(3, 3, ab(k))).isZero());
  QComplex torus(build_torus());
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) CHECK(torus.scriptT(vec(3, j, ab(k))).isZero());
}

TEST_CASE("curvature term vanishes exactly where R does") {
  for (const auto& m : builtins()) {
    QComplex q(m);
    bool allZero = true;
    for (int j = 1; j <= 3; ++j)
      for (int k = 0; k <= 3; ++k) allZero = allZero && q.RNablaPlus(vec(3, j, k ? ab(k) : one3())).isZero();
    CHECK(allZero == q.curvatureForms().isZero());
  }
  CHECK(!QComplex(build_calabi_eckmann()).curvatureForms().isZero());
}

TEST_CASE("D-bar on sample sections and the Iwasawa kernel") {
  HomogeneousModel m = build_iwasawa();
  QComplex q(m);
  QSection s = q.zero(0);
  s.w = vec(3, 3, one3());
  QSection r = q.apply(s);
  CHECK(r.kappa.isZero());
  CHECK(r.gamma.isZero());
  CHECK(r.w.isZero());
  s = q.zero(0);
  s.kappa = cov(3, 3, one3());
  CHECK(q.toVector(q.apply(s)) == std::vector<Scalar>(q.dim(1)));
  GMat D1 = specialize(q.dbarMatrix(1), GaussRat(-4));
  CHECK(q.dim(1) - rank_field(D1) == 14);
}

TEST_CASE("section vectors round trip") {
  std::mt19937 g(2);
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (int p = 0; p <= 3; ++p) {
      CHECK(q.labels(p).size() == q.dim(p));
      std::vector<Scalar> v(q.dim(p));
      for (auto& x : v) x = testing_support::randomScalar(g, 1);
      CHECK(q.toVector(q.fromVector(p, v)) == v);
    }
  }
  auto basis = traceFreeBasis(3);
  CHECK(basis.size() == 8);
  CHECK(traceFreeLabels(2) == std::vector<std::string>{"E(1,1)", "E(1,2)", "E(2,1)"});
}

TEST_CASE("block reassembly") {
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (int p = 0; p < 3; ++p) CHECK(q.reassemblyHolds(p));
  }
  HomogeneousModel t = build_torus();
  QComplex torus(t);
  for (int p = 0; p < 3; ++p) CHECK(isZeroMat(torus.hMatrix(p)));
}

TEST_CASE("D-bar squared equals the anomaly operator") {
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (int p = 0; p + 2 <= 3; ++p) CHECK(mul(q.dbarMatrix(p + 1), q.dbarMatrix(p)) == q.anomalyOperator(p));
  }
  // vanishing at the model's own constant
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (int p = 0; p + 2 <= 3; ++p) {
      GMat sq = specialize(q.dbarMatrix(p + 1), m.alphaPrime) * specialize(q.dbarMatrix(p), m.alphaPrime);
      CHECK(isZero(sq));
    }
  }
}

TEST_CASE("negative control: unswapped torsion slots in the connection") {
  HomogeneousModel m = build_calabi_eckmann();
  ConnectionData c = bismut(m);
  Form T = torsion(m);
  for (int k = 1; k <= 3; ++k)
    for (int j = 1; j <= 3; ++j)
      for (int l = 1; l <= 3; ++l)
        c(k - 1, j - 1, l - 1) += (raisedTorsion(m, T, j, l, k) - raisedTorsion(m, T, j, k, l)).constant();
  CHECK(!(c == bismut(m)));
  QComplex q(m, c);
  CHECK(mul(q.dbarMatrix(1), q.dbarMatrix(0)) != q.anomalyOperator(0));
}

TEST_CASE("rescaled gauge field breaks nilpotency only in the corner block") {
  for (GaussRat eps : {GaussRat(1), GaussRat::frac(1, 2)}) {
    HomogeneousModel m = scaleGauge(build_iwasawa(), GaussRat(1) + eps);
    QComplex q(m);
    for (int p = 0; p + 2 <= 3; ++p) {
      GMat sq = specialize(q.dbarMatrix(p + 1), GaussRat(-4)) * specialize(q.dbarMatrix(p), GaussRat(-4));
      CHECK(!isZero(sq));
      size_t rowEnd = q.legOffset(Leg::Kappa, p + 2) + q.legDim(Leg::Kappa) * q.formDim(p + 2);
      size_t colBegin = q.legOffset(Leg::W, p);
      bool supported = true;
      for (size_t i = 0; i < sq.rows; ++i)
        for (size_t j = 0; j < sq.cols; ++j)
          if (!sq(i, j).isZero() && (i >= rowEnd || j < colBegin)) supported = false;
      CHECK(supported);
    }
  }
}

TEST_CASE("commutation identity") {
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (int p = 0; p <= 2; ++p)
      for (const auto& r : q.commuteResidual(p)) CHECK(r.isZero());
  }
}

TEST_CASE("Gram matrices") {
  std::mt19937 g(4);
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (int p = 0; p <= 3; ++p) {
      GMat G = q.gram(p);
      CHECK(dagger(G) == G);
      // leg blocks do not talk to each other
      size_t k1 = q.legOffset(Leg::Gamma, p), k2 = q.legOffset(Leg::W, p);
      for (size_t i = 0; i < k1; ++i)
        for (size_t j = k2; j < G.cols; ++j) CHECK(G(i, j).isZero());
      // positive definiteness: leading principal minors
      for (const auto& x : leading_minors(G)) CHECK((x.isReal() && sgn(x.re()) > 0));
      for (int t = 0; t < 25; ++t) {
        GMat v(G.rows, 1);
        for (auto& x : v.v) x = testing_support::randomGauss(g);
        GaussRat nrm = (dagger(v) * G * v)(0, 0);
        CHECK(nrm.isReal());
        CHECK(sgn(nrm.re()) >= 0);
      }
    }
  }
  // diagonal for the Iwasawa metric
  GMat G = QComplex(build_iwasawa()).gram(1);
  bool diag = true;
  for (size_t i = 0; i < G.rows; ++i)
    for (size_t j = 0; j < G.cols; ++j)
      if (i != j && !G(i, j).isZero()) diag = false;
  CHECK(diag);
}

TEST_CASE("pointwise adjoints on Iwasawa") {
  QComplex q(build_iwasawa());
  VForm fk = q.scriptFStarKappa(cov(3, 1, ab(1)));
  CHECK(!fk[{0, 0}].isZero());
  CHECK(fk[{0, 0}] == -fk[{1, 1}]);
  CHECK(fk[{0, 1}].isZero());
  // the diagonal entry is imaginary
  GaussRat c = fk[{0, 0}].coeff({0, 0}).constant();
  CHECK(c.re() == 0);

  VForm t1 = q.scriptTStar(cov(3, 1, ab(3)));
  VForm t2 = q.scriptTStar(cov(3, 2, ab(3)));
  Form c2 = t1[{1}], c1 = t2[{0}];
  CHECK(t1[{0}].isZero());
  CHECK(t1[{2}].isZero());
  CHECK(t2[{1}].isZero());
  CHECK(!c2.isZero());
  CHECK(c1 == -c2);
}

TEST_CASE("formula adjoint matches the Gram adjoint") {
  for (const auto& m : builtins())
    for (GaussRat a0 : {GaussRat(-4), GaussRat(1), GaussRat::frac(1, 7)}) {
      QComplex q(m);
      for (int p = 1; p <= 3; ++p) CHECK(q.dstarFromFormulas(p, a0) == q.dstarFromGram(p, a0));
    }
  // on the torus the adjoint is block diagonal
  QComplex t(build_torus());
  GMat ds = t.dstarFromFormulas(1, GaussRat(1));
  CHECK(isZero(ds));
}

TEST_CASE("adjointness through the Gram pairing") {
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (int p = 0; p < 3; ++p) {
      GaussRat a0 = GaussRat::frac(1, 7);
      GMat D = specialize(q.dbarMatrix(p), a0);
      GMat Ds = q.dstarFromFormulas(p + 1, a0);
      GMat Gp = q.gram(p), Gq = q.gram(p + 1);
      // ⟨Ds, t⟩ = ⟨s, D*t⟩ for all basis pairs, ⟨x, y⟩ = x^T G ȳ
      CHECK(dagger(D) * conj(Gq) == conj(Gp) * Ds);
    }
  }
}

TEST_CASE("pairings") {
  QComplex q(build_iwasawa());
  Form top = Form::basis(3, {0, 0b111});
  VForm zeroGamma(3, 2, {Slot::Gauge, Slot::Gauge}), zeroBeta(3, 2, {Slot::Gauge, Slot::Gauge});
  VForm V = vec(3, 1, one3()), k = cov(3, 1, top);
  Scalar direct = q.pairTStarT(k, V);
  CHECK(!direct.isZero());
  CHECK(q.pairQ1(zeroBeta, V, k, zeroGamma) == direct);
  std::mt19937 g(8);
  for (int t = 0; t < 50; ++t) {
    Scalar x = testing_support::randomScalar(g, 1), y = testing_support::randomScalar(g, 1);
    VForm k2 = cov(3, 1 + t % 3, top);
    CHECK(q.pairTStarT(x * k + y * k2, V) == x * q.pairTStarT(k, V) + y * q.pairTStarT(k2, V));
  }
}

TEST_CASE("H and its dual leg") {
  QComplex torus(build_torus());
  VForm g0(3, 1, {Slot::Gauge, Slot::Gauge});
  CHECK(torus.applyH(g0, vec(3, 1, ab(2))).isZero());
  QComplex q(build_iwasawa());
  auto [k, gam] = q.applyHStar(vec(3, 1, one3()));
  CHECK(gam == q.scriptFW(vec(3, 1, one3())));
  CHECK(k == q.scriptT(vec(3, 1, one3())));
}

}
