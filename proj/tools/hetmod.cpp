// hetmod: command-line front end. Reports are JSON with sorted keys.
#include "hetmod/chartlocal.hpp"
#include "hetmod/cohomology.hpp"
#include "hetmod/models.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using json = nlohmann::json;
using namespace hetmod;

namespace {

constexpr int kPass = 0, kFail = 1, kInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json formJson(const Form& f) {
  json j = json::object();
  for (const auto& [k, c] : f.terms()) j[basisName(k)] = c.str();
  return j;
}

json vformJson(const VForm& v) {
  json j = json::object();
  for (size_t i = 0; i < v.size(); ++i) {
    if (v.c[i].isZero()) continue;
    std::string key;
    for (int x : v.unflat(i)) key += (key.empty() ? "" : ",") + std::to_string(x + 1);
    j[key] = formJson(v.c[i]);
  }
  return j;
}

json systemJson(const SystemReport& r) {
  json j;
  j["alpha_prime"] = r.alphaPrime.str();
  j["alpha_arbitrary"] = r.alphaArbitrary;
  j["degenerate"] = r.degenerate;
  j["F1"] = {{"pass", r.passF1()}, {"residual", formJson(r.F1)}};
  j["F2"] = {{"pass", r.passF2()}, {"residual", formJson(r.F2)}};
  j["D1"] = {{"pass", r.passD1()}, {"residual", vformJson(r.D1)}};
  j["D2"] = {{"pass", r.passD2()}, {"residual", formJson(r.D2)}};
  j["pass"] = r.pass();
  return j;
}

GaussRat parseAlpha(const std::string& s) {
  GaussRat a;
  try {
    a = parseGaussRat(s);
  } catch (const std::exception& e) {
    throw InputError("--alpha-prime: " + std::string(e.what()));
  }
  if (!a.isReal()) throw InputError("--alpha-prime must be a real rational");
  return a;
}

json symbolJson(const SymbolReport& s) {
  json j;
  j["samples"] = s.samples;
  j["injective"] = s.injective;
  if (s.firstFailure) {
    json f = json::array();
    for (const auto& x : *s.firstFailure) f.push_back(x.str());
    j["first_failure"] = f;
  }
  return j;
}

// Harmonic representatives of degree 1 as label → coefficient maps.
json harmonicBasis(const QComplex& q, int p, const GaussRat& a0) {
  GMat M(0, q.dim(p));
  if (p < q.n()) M = stack(M, dbarAt(q, p, a0));
  if (p > 0) M = stack(M, q.dstarFromGram(p, a0));
  GMat K = nullspace(M);
  auto labels = q.labels(p);
  json out = json::array();
  for (size_t c = 0; c < K.cols; ++c) {
    json v = json::object();
    for (size_t r = 0; r < K.rows; ++r)
      if (!K(r, c).isZero()) v[labels[r]] = K(r, c).str();
    out.push_back(v);
  }
  return out;
}

struct Options {
  std::string command, model, alpha, out;
  size_t samples = 0;
  int degree = 3;
  bool diagonal = false;
};

int emit(const json& j, const Options& o, int code) {
  std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
  }
  return code;
}

int run(const Options& o) {
  HomogeneousModel m;
  try {
    m = load_model(o.model);
  } catch (const ModelError& e) {
    throw InputError(e.what());
  }
  const GaussRat a0 = o.alpha.empty() ? m.alphaPrime : parseAlpha(o.alpha);
  json j;
  j["model"] = m.name;
  const bool arbitrary = m.alphaArbitrary && o.alpha.empty();
  j["alpha_prime"] = arbitrary ? "arbitrary" : a0.str();
  j["alpha_arbitrary"] = arbitrary;
  j["evaluated_at"] = a0.str();

  if (o.command == "check") {
    SystemReport r = check_heterotic_system(m, a0);
    j["checks"] = systemJson(r);
    return emit(j, o, r.pass() ? kPass : kFail);
  }

  if (o.command == "cohomology" || o.command == "serre") {
    QComplex q(m, o.diagonal);
    CohomologyReport r;
    try {
      r = cohomology(q, a0);
    } catch (const NotAComplex& e) {
      std::cerr << "hetmod: " << e.what() << "\n";
      std::cerr << "anomaly residual at alpha' = " << a0.str() << ": "
                << anomalyResidual(m).specialize(a0).str() << "\n";
      return kFail;
    }
    json h = json::array(), harm = json::array(), ker = json::array(), rank = json::array(), dim = json::array();
    bool hodge = true;
    for (const auto& d : r.degrees) {
      h.push_back(d.h);
      harm.push_back(d.harmonic);
      ker.push_back(d.ker);
      rank.push_back(d.rank);
      dim.push_back(d.dim);
      hodge = hodge && d.h == d.harmonic;
    }
    json pairs = json::array();
    for (auto [p, qq] : r.serrePairs) pairs.push_back({p, qq, r.degrees[p].h == r.degrees[qq].h});
    j["diagonal_dbar"] = o.diagonal;
    j["invariant"] = true;
    j["serre"] = r.serre;
    j["serre_pairs"] = pairs;
    j["euler"] = r.euler;
    bool pass = r.serre && r.euler == 0;
    if (o.command == "serre") {
      j["h"] = h;
      return emit(j, o, pass ? kPass : kFail);
    }
    j["dims"] = {{"h", h}, {"harmonic", harm}, {"ker", ker}, {"rank", rank}, {"dim", dim}};
    j["hodge"] = hodge;
    j["harmonic_basis"] = {{"1", harmonicBasis(q, 1, a0)}};
    SymbolReport s = injectivityScan(q, a0);
    j["symbol"] = symbolJson(s);
    j["checks"] = systemJson(check_heterotic_system(m, a0));
    return emit(j, o, pass && hodge ? kPass : kFail);
  }

  if (o.command == "symbol") {
    QComplex q(m, o.diagonal);
    auto all = symbolSamples(m.n);
    SymbolReport s;
    size_t limit = o.samples ? std::min(o.samples, all.size()) : all.size();
    for (size_t i = 0; i < limit; ++i) {
      ++s.samples;
      if (s.injective && rank_field(symbolMatrix(q, all[i], a0)) < q.dim(1)) {
        s.injective = false;
        s.firstFailure = all[i];
      }
    }
    j["symbol"] = symbolJson(s);
    return emit(j, o, s.injective ? kPass : kFail);
  }

  if (o.command == "trivialize") {
    std::optional<ChartComplex> c;
    try {
      c.emplace(m, a0);
    } catch (const ChartError& e) {
      throw InputError(e.what());
    }
    TrivializationData t;
    try {
      t = c->build();
    } catch (const ChartError& e) {
      std::cerr << "hetmod: " << e.what() << "\n";
      return kFail;
    }
    auto rep = verify_trivialization(*c, t, o.degree);
    json A = json::object();
    for (int x = 0; x < m.rank; ++x)
      for (int y = 0; y < m.rank; ++y) A[std::to_string(x + 1) + "," + std::to_string(y + 1)] = t.A[x * m.rank + y].str();
    json tau = json::object();
    for (int a = 0; a < m.n; ++a)
      for (int b = 0; b < m.n; ++b)
        if (!t.tauTilde[a][b].isZero()) tau[std::to_string(a + 1) + "," + std::to_string(b + 1)] = t.tauTilde[a][b].str();
    json tr = json::array();
    bool transitions = true;
    for (const auto& x : standard_transitions(*c, o.degree)) {
      tr.push_back({{"label", x.label}, {"holomorphic", x.holomorphic}, {"cocycle", x.cocycle},
                    {"sections_checked", x.sectionsChecked}});
      transitions = transitions && x.pass();
    }
    j["degree"] = o.degree;
    j["potential_A"] = A;
    j["tau_tilde"] = tau;
    j["chern_simons"] = chern_simons(t.A, m.rank).str();
    j["dbar_A_equals_F"] = rep.dbarA;
    j["defining_equation"] = rep.defb;
    j["d_chern_simons_equals_trFF"] = rep.chernSimons;
    j["sections_checked"] = rep.sectionsChecked;
    j["section_failures"] = rep.sectionFailures;
    j["phi_inverse"] = rep.inverse;
    j["transitions"] = tr;
    j["pass"] = rep.pass() && transitions;
    return emit(j, o, rep.pass() && transitions ? kPass : kFail);
  }
  throw InputError("unknown command " + o.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact heterotic deformation complex engine"};
  Options o;
  app.add_option("command", o.command, "check | cohomology | serre | symbol | trivialize")
      ->required()
      ->check(CLI::IsMember({"check", "cohomology", "serre", "symbol", "trivialize"}));
  app.add_option("model", o.model, "built-in name (iwasawa, calabi-eckmann, torus) or model JSON file")->required();
  app.add_option("--alpha-prime", o.alpha, "override alpha' (rational p/q)");
  app.add_option("--samples", o.samples, "number of symbol samples (default: all)");
  app.add_option("--degree", o.degree, "polynomial degree bound for trivialize")->check(CLI::Range(0, 6));
  app.add_option("--out", o.out, "write the report here instead of stdout");
  app.add_flag("--diagonal-dbar", o.diagonal, "drop the off-diagonal blocks of the operator");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }
  try {
    return run(o);
  } catch (const InputError& e) {
    std::cerr << "hetmod: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "hetmod: internal error: " << e.what() << "\n";
    return kInput;
  }
}
