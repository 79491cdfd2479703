#include "hetmod/geometry.hpp"
#include "hetmod/models.hpp"
#include "ce_reference.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hetmod;

namespace {

std::vector<HomogeneousModel> builtins() { return {build_iwasawa(), build_calabi_eckmann(), build_torus()}; }

// ∇_A E_C − ∇_C E_A − [E_A, E_C], component B.
GaussRat torsionComponent(const HomogeneousModel& m, const ConnectionData& c, int A, int B, int C) {
  return c(A, B, C) - c(C, B, A) - bracket(m, A, C, B);
}

bool metricCompatible(const HomogeneousModel& m, const ConnectionData& c) {
  GMat g = fullMetric(m);
  const int N = 2 * m.n;
  for (int A = 0; A < N; ++A)
    for (int B = 0; B < N; ++B)
      for (int C = 0; C < N; ++C) {
        GaussRat s;
        for (int D = 0; D < N; ++D) s += c(A, D, B) * g(D, C) + c(A, D, C) * g(B, D);
        if (!s.isZero()) return false;
      }
  return true;
}

bool preservesType(const ConnectionData& c) {
  const int n = c.n, N = 2 * n;
  for (int A = 0; A < N; ++A)
    for (int B = 0; B < N; ++B)
      for (int C = 0; C < N; ++C)
        if ((B < n) != (C < n) && !c(A, B, C).isZero()) return false;
  return true;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("structure equations") {
  HomogeneousModel iw = build_iwasawa();
  Form a1 = Form::alpha(3, 1), a2 = Form::alpha(3, 2);
  CHECK(exterior_derivative(Form::alpha(3, 3), iw) == wedge(a1, a2));
  CHECK(dbar(Form::alphaBar(3, 3), iw) == wedge(Form::alphaBar(3, 1), Form::alphaBar(3, 2)));
  HomogeneousModel t = build_torus();
  for (int a = 1; a <= 3; ++a) CHECK(exterior_derivative(Form::alpha(3, a), t).isZero());
}

TEST_CASE("d squares to zero and splits by type") {
  std::mt19937 g(21);
  for (const auto& m : builtins()) {
    for (int t = 0; t < 40; ++t) {
      Form x = testing_support::randomForm(g, m.n);
      CHECK(exterior_derivative(exterior_derivative(x, m), m).isZero());
      CHECK(exterior_derivative(x, m) == del(x, m) + dbar(x, m) + nonIntegrablePart(x, m));
      CHECK(nonIntegrablePart(x, m).isZero());
      // Leibniz rule with the graded sign
      Form y = testing_support::randomForm(g, m.n, 2);
      Form lhs = exterior_derivative(wedge(x, y), m);
      Form rhs = wedge(exterior_derivative(x, m), y);
      for (const auto& [k, c] : x.terms()) {
        Form xk = Form::basis(m.n, k, c);
        rhs += Scalar(k.degree() % 2 ? -1 : 1) * wedge(xk, exterior_derivative(y, m));
      }
      CHECK(lhs == rhs);
    }
    // ∂ vanishes on forms of full holomorphic degree
    for (Mask q : subsets(m.n, 1)) CHECK(del(Form::basis(m.n, {0b111, q}), m).isZero());
  }
}

TEST_CASE("torsion of the built-ins") {
  HomogeneousModel iw = build_iwasawa();
  Form expected = Scalar(GaussRat::frac(-1, 2)) *
                  wedge(wedge(Form::alpha(3, 1), Form::alpha(3, 2)), Form::alphaBar(3, 3));
  CHECK(torsion(iw) == expected);
  CHECK(torsion(build_torus()).isZero());
  // CE: T is of type (2,1) and i∂ω
  HomogeneousModel ce = build_calabi_eckmann();
  Form T = torsion(ce);
  CHECK(T == Scalar(GaussRat::I()) * del(omega(ce), ce));
  CHECK(T.part(2, 1) == T);
  CHECK(!T.isZero());
}

TEST_CASE("Levi-Civita is torsion free and metric") {
  for (const auto& m : builtins()) {
    auto lc = levi_civita(m);
    const int N = 2 * m.n;
    bool torsionFree = true;
    for (int A = 0; A < N; ++A)
      for (int B = 0; B < N; ++B)
        for (int C = 0; C < N; ++C) torsionFree = torsionFree && torsionComponent(m, lc, A, B, C).isZero();
    CHECK(torsionFree);
    CHECK(metricCompatible(m, lc));
  }
  for (const auto& G : build_torus().dalpha) CHECK(G.isZero());
  auto t = levi_civita(build_torus());
  for (const auto& x : t.G) CHECK(x.isZero());
}

TEST_CASE("Chern connection: two routes and characterizing properties") {
  for (const auto& m : builtins()) {
    auto c = chern_connection(m);
    CHECK(c == chern_connection_dbar(m));
    CHECK(metricCompatible(m, c));
    CHECK(preservesType(c));
    // no torsion of type (1,1)
    const int n = m.n, N = 2 * n;
    bool mixedFree = true;
    for (int a = 0; a < n; ++a)
      for (int b = n; b < N; ++b)
        for (int B = 0; B < N; ++B) mixedFree = mixedFree && torsionComponent(m, c, a, B, b).isZero();
    CHECK(mixedFree);
  }
}

TEST_CASE("Bismut connection: two routes, skew torsion") {
  for (const auto& m : builtins()) {
    auto b = bismut(m);
    CHECK(b == bismut_from_levi_civita(m));
    CHECK(metricCompatible(m, b));
    CHECK(preservesType(b));
    GMat g = fullMetric(m);
    const int N = 2 * m.n;
    bool skew = true;
    for (int A = 0; A < N; ++A)
      for (int C = 0; C < N; ++C)
        for (int D = 0; D < N; ++D) {
          GaussRat x, y;
          for (int B = 0; B < N; ++B) {
            x += torsionComponent(m, b, A, B, C) * g(B, D);
            y += torsionComponent(m, b, A, B, D) * g(B, C);
          }
          skew = skew && (x + y).isZero();
        }
    CHECK(skew);
  }
  for (const auto& x : bismut(build_calabi_eckmann()).G) CHECK(x.isZero());
}

TEST_CASE("curvature of the built-ins") {
  HomogeneousModel iw = build_iwasawa();
  CHECK(curvature(chern_connection(iw), iw).isZero());
  CHECK(curvature(chern_connection(build_torus()), build_torus()).isZero());

  HomogeneousModel m = build_calabi_eckmann();
  auto ref = testing_support::calabiEckmannReference(m);
  VForm Rm = curvature(chern_connection(m), m);
  VForm th = connectionForms(chern_connection(m), m);
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      CHECK(Rm[{b, c}] == ref.R[b][c]);
      CHECK(th[{b, c}] == ref.theta[b][c]);
    }
  CHECK(traceWedge(Rm, Rm).isZero());
}

TEST_CASE("Chern curvature symmetry identity") {
  for (const auto& m : builtins()) CHECK(chern_symmetry_residual(m).isZero());
}

TEST_CASE("heterotic system on the built-ins") {
  CHECK(check_heterotic_system(build_iwasawa()).pass());
  CHECK(check_heterotic_system(build_torus(), GaussRat::frac(3, 7)).pass());

  HomogeneousModel ce = build_calabi_eckmann();
  SystemReport r = check_heterotic_system(ce);
  std::vector<Form> e;
  for (int i = 0; i < 6; ++i) e.push_back(realCoframe(ce, i));
  Form diff = e[3] - e[0];  // α₂ − α₁ in the real coframe {e₁, e₄}
  Form w = omega(ce);
  CHECK(r.F1 == wedge(diff, volumeForm(ce)));
  CHECK(r.D2 == wedge(diff, wedge(w, w)));
  CHECK(r.passF2());
  CHECK(r.passD1());
  CHECK(!r.pass());
  // pluriclosed
  CHECK(del(dbar(w, ce), ce).isZero());
}

}
