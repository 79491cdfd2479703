// One line per acceptance criterion. With --expect-fail N (repeatable) the exit code is 0
// iff exactly the listed criteria fail; without it, any failure gives exit code 1.
#include "ce_reference.hpp"
#include "hetmod/chartlocal.hpp"
#include "hetmod/cohomology.hpp"
#include "hetmod/models.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace hetmod;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << "FAILED " << what;
    }
  }
  void note(const std::string& s) { detail << (detail.tellp() > 0 ? "; " : "") << s; }
};

std::vector<HomogeneousModel> builtins() { return {build_iwasawa(), build_calabi_eckmann(), build_torus()}; }

std::string dims(const CohomologyReport& r, bool harmonic = false) {
  std::string s = "(";
  for (size_t p = 0; p < r.degrees.size(); ++p)
    s += (p ? "," : "") + std::to_string(harmonic ? r.degrees[p].harmonic : r.degrees[p].h);
  return s + ")";
}

bool nilpotencyBrokenInCorner(const QComplex& q, const GaussRat& a0) {
  bool nonzero = false, supported = true;
  for (int p = 0; p + 2 <= q.n(); ++p) {
    GMat sq = specialize(q.dbarMatrix(p + 1), a0) * specialize(q.dbarMatrix(p), a0);
    size_t rowEnd = q.legOffset(Leg::Kappa, p + 2) + q.legDim(Leg::Kappa) * q.formDim(p + 2);
    size_t colBegin = q.legOffset(Leg::W, p);
    for (size_t i = 0; i < sq.rows; ++i)
      for (size_t j = 0; j < sq.cols; ++j)
        if (!sq(i, j).isZero()) {
          nonzero = true;
          if (i >= rowEnd || j < colBegin) supported = false;
        }
  }
  return nonzero && supported;
}

GMat conj(const GMat& m) {
  GMat r = m;
  for (auto& x : r.v) x = x.conj();
  return r;
}

int runCommand(const std::vector<std::string>& args) {
  std::string cmd;
  for (const auto& a : args) cmd += "'" + a + "' ";
  cmd += ">/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  QComplex q(build_iwasawa());
  requireComplex(q, GaussRat(-4));
  DegreeDims d = betti(q, 1, GaussRat(-4));
  size_t h = harmonic(q, 1, GaussRat(-4));
  double t = seconds(t0);
  o.require(d.h == 11, "h^1 = " + std::to_string(d.h));
  o.require(h == 11, "harmonic^1 = " + std::to_string(h));
  o.require(t < 5, "runtime " + fmt(t));
  o.note("h^1 = " + std::to_string(d.h) + ", harmonic^1 = " + std::to_string(h) + ", " + fmt(t));
  return o;
}

Outcome criterion2() {
  Outcome o;
  QComplex q(build_iwasawa());
  size_t ker = betti(q, 1, GaussRat(-4)).ker;
  o.require(ker == 14, "ker = " + std::to_string(ker));
  o.note("dim ker D-bar on Q^{0,1} = " + std::to_string(ker));
  return o;
}

Outcome criterion3() {
  Outcome o;
  CohomologyReport r = cohomology(QComplex(build_iwasawa()), GaussRat(-4));
  std::vector<size_t> h;
  for (const auto& d : r.degrees) h.push_back(d.h);
  o.require(h == std::vector<size_t>{6, 11, 11, 6}, "dims " + dims(r));
  o.require(r.serre, "h^p = h^{3-p}");
  o.require(r.euler == 0, "euler " + std::to_string(r.euler));
  o.note("h = " + dims(r) + ", serre " + (r.serre ? "true" : "false") + ", euler " + std::to_string(r.euler));
  return o;
}

Outcome criterion4() {
  Outcome o;
  CohomologyReport r = cohomology(QComplex(build_iwasawa(), true), GaussRat(-4));
  o.require(r.degrees[1].h == 18, "h^1 = " + std::to_string(r.degrees[1].h));
  o.note("diagonal h = " + dims(r));
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& m : {build_iwasawa(), build_calabi_eckmann()}) {
    QComplex q(m);
    bool symbolic = true, atModel = true;
    for (int p = 0; p + 2 <= q.n(); ++p) {
      SMat sq = q.dbarMatrix(p + 1) * q.dbarMatrix(p);
      symbolic = symbolic && sq == q.anomalyOperator(p);
      atModel = atModel && isZero(specialize(sq, m.alphaPrime));
    }
    o.require(symbolic, m.name + ": D-bar^2 differs from the anomaly operator");
    o.require(atModel, m.name + ": D-bar^2 nonzero at alpha' = " + m.alphaPrime.str());
  }
  // CE: the anomaly form vanishes for every alpha', so D-bar^2 vanishes identically
  QComplex ce(build_calabi_eckmann());
  bool ceZero = true;
  for (int p = 0; p + 2 <= 3; ++p)
    for (const auto& x : (ce.dbarMatrix(p + 1) * ce.dbarMatrix(p)).v) ceZero = ceZero && x.isZero();
  o.require(ceZero, "calabi-eckmann: D-bar^2 not identically zero in a");
  for (GaussRat eps : {GaussRat(1), GaussRat::frac(1, 2)}) {
    QComplex q(scaleGauge(build_iwasawa(), GaussRat(1) + eps));
    o.require(nilpotencyBrokenInCorner(q, GaussRat(-4)), "scaled F by 1+" + eps.str());
  }
  o.note("D-bar^2 = C(Phi) symbolically on iwasawa and calabi-eckmann; zero at the model alpha'; "
         "F scaled by 1+eps (eps = 1, 1/2) leaves a residual only in the kappa rows and W columns");
  return o;
}

Outcome criterion6() {
  Outcome o;
  HomogeneousModel m = build_calabi_eckmann();
  auto ref = testing_support::calabiEckmannReference(m);
  VForm R = curvature(chern_connection(m), m);
  bool entries = true;
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) entries = entries && R[{b, c}] == ref.R[b][c];
  o.require(entries, "Chern curvature entries");
  o.require(traceWedge(R, R).isZero(), "tr R^R");
  bool flat = true;
  for (const auto& x : bismut(m).G) flat = flat && x.isZero();
  o.require(flat, "Bismut coefficients");
  SystemReport s = check_heterotic_system(m);
  std::vector<Form> e;
  for (int i = 0; i < 6; ++i) e.push_back(realCoframe(m, i));
  Form diff = e[3] - e[0];
  Form w = omega(m);
  o.require(s.F1 == wedge(diff, volumeForm(m)), "F1 residual");
  o.require(s.D2 == wedge(diff, wedge(w, w)), "D2 residual");
  CohomologyReport r = cohomology(QComplex(m), m.alphaPrime);
  o.require(r.degrees[1].harmonic == 0 && r.degrees[2].harmonic == 0,
            "harmonic dims in degrees 1,2 = (" + std::to_string(r.degrees[1].harmonic) + "," +
                std::to_string(r.degrees[2].harmonic) + "), expected (0,0)");
  o.note("checked R entries, tr R^R, Bismut flatness, F1/D2 residuals; harmonic dims " + dims(r, true) +
         " come from sl(3) x H^{0,*} with h^{0,1} = 1");
  return o;
}

Outcome criterion7() {
  Outcome o;
  size_t checked = 0;
  for (const auto& m : builtins()) {
    QComplex q(m);
    for (GaussRat a0 : {GaussRat(-4), GaussRat(1), GaussRat::frac(1, 7)})
      for (int p = 1; p <= q.n(); ++p) {
        GMat Ds = q.dstarFromFormulas(p, a0);
        GMat D = specialize(q.dbarMatrix(p - 1), a0);
        bool ok = dagger(D) * conj(q.gram(p)) == conj(q.gram(p - 1)) * Ds;
        o.require(ok, m.name + " p=" + std::to_string(p) + " a=" + a0.str());
        checked += D.rows * D.cols;
      }
  }
  o.note(std::to_string(checked) + " basis pairs, alpha' in {-4, 1, 1/7}, all built-ins");
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& m : builtins()) {
    HdualReport r = hdualCheck(QComplex(m), 50);
    o.require(r.samples == 50 && r.pass(), m.name + " " + std::to_string(r.failures) + " failures");
    o.note(m.name + ": " + std::to_string(r.samples) + " pairs, " + std::to_string(r.nontrivial) + " nontrivial");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const auto& m : builtins()) {
    QComplex q(m);
    bool commute = true;
    for (int p = 0; p < q.n(); ++p)
      for (const auto& r : q.commuteResidual(p)) commute = commute && r.isZero();
    o.require(commute, m.name + " commutation residual");
    o.require(chern_symmetry_residual(m).isZero(), m.name + " Chern symmetry residual");
  }
  o.note("both residuals identically zero on all built-ins");
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (const auto& m : builtins()) {
    SymbolReport r = injectivityScan(QComplex(m), GaussRat(0));
    o.require(r.injective && !r.firstFailure && r.samples == symbolSamples(m.n).size(), m.name + " at alpha' = 0");
  }
  // R = 0: the symbol does not depend on alpha', so injectivity at one value covers all of them
  for (const auto& m : {build_iwasawa(), build_torus()}) {
    QComplex q(m);
    bool independent = q.curvatureForms().isZero();
    for (const auto& xi : symbolSamples(m.n))
      if (!(symbolMatrix(q, xi, GaussRat(0)) == symbolMatrix(q, xi, GaussRat(-4)))) independent = false;
    o.require(independent, m.name + " symbol depends on alpha'");
  }
  o.note(std::to_string(symbolSamples(3).size()) + " covectors per model; iwasawa and torus symbols independent of alpha'");
  return o;
}

Outcome criterion11() {
  Outcome o;
  auto t0 = Clock::now();
  ChartComplex c(build_iwasawa());
  TrivializationData t = c.build();
  TrivializationReport r = verify_trivialization(c, t, 3);
  o.require(r.dbarA, "dbar A = F");
  o.require(r.defb, "defining equation");
  o.require(r.chernSimons, "d CS = tr F^F");
  o.require(r.sections && r.sectionFailures == 0, std::to_string(r.sectionFailures) + " section residuals");
  o.require(r.inverse, "phi o phi^-1");
  auto tr = standard_transitions(c, 3);
  o.require(tr.size() == 3, "three transition pairs");
  for (const auto& x : tr) o.require(x.pass(), "transition " + x.label);
  o.note(std::to_string(r.sectionsChecked) + " monomial sections through degree 3, " + std::to_string(tr.size()) +
         " transition pairs, " + fmt(seconds(t0)));
  return o;
}

Outcome criterion12(const std::string& hetmod, const fs::path& golden, double elapsedSoFar) {
  Outcome o;
  auto t0 = Clock::now();
  fs::path tmp = fs::temp_directory_path() / ("hetmod-acceptance-" + std::to_string(getpid()));
  fs::create_directories(tmp);
  std::ifstream manifest(golden / "manifest.txt");
  std::string line;
  size_t reports = 0;
  while (std::getline(manifest, line)) {
    std::istringstream in(line);
    std::string file;
    int expect;
    if (!(in >> file >> expect)) continue;
    std::vector<std::string> args{hetmod};
    for (std::string a; in >> a;) args.push_back(a);
    args.push_back("--out");
    args.push_back((tmp / file).string());
    int code = runCommand(args);
    o.require(code == expect, file + " exit " + std::to_string(code));
    o.require(slurp(tmp / file) == slurp(golden / file), file + " differs from golden");
    ++reports;
  }
  fs::remove_all(tmp);
  double total = elapsedSoFar + seconds(t0);
  o.require(reports > 0, "no golden reports found");
  o.require(total < 60, "acceptance run " + fmt(total));
  o.note(std::to_string(reports) + " golden reports byte-identical; acceptance run " + fmt(total));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> expectFail;
  std::string hetmod = HETMOD_BIN, golden = HETMOD_GOLDEN;
  app.add_option("--expect-fail", expectFail, "criteria known to fail");
  app.add_option("--hetmod", hetmod, "path to the hetmod executable");
  app.add_option("--golden", golden, "golden report directory");
  CLI11_PARSE(app, argc, argv);

  const auto start = Clock::now();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Iwasawa dimension 11", criterion1},
      {"Iwasawa kernel 14", criterion2},
      {"Serre and Euler on Iwasawa", criterion3},
      {"diagonal baseline h^1 = 18", criterion4},
      {"nilpotency and the anomaly", criterion5},
      {"Calabi-Eckmann package", criterion6},
      {"adjointness", criterion7},
      {"duality pairing", criterion8},
      {"commutation and curvature identities", criterion9},
      {"symbol injectivity", criterion10},
      {"local trivialization", criterion11},
      {"runtime and golden stability", [&] { return criterion12(hetmod, golden, seconds(start)); }},
  };
  std::set<int> failed;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const int id = static_cast<int>(i + 1);
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first
              << "): " << o.detail.str() << std::endl;
  }
  std::set<int> expected(expectFail.begin(), expectFail.end());
  if (!expected.empty()) {
    std::cout << "expected failures: " << expected.size() << ", actual failures: " << failed.size() << "\n";
    return failed == expected ? 0 : 1;
  }
  return failed.empty() ? 0 : 1;
}
