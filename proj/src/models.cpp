#include "hetmod/models.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace hetmod {

using nlohmann::json;

namespace {

std::string joinDiagnostics(const std::vector<std::string>& d) {
  std::string s = "invalid model";
  for (const auto& x : d) s += "\n  " + x;
  return s;
}

GMat diagonal(int n, const GaussRat& v) {
  GMat h(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = v;
  return h;
}

HomogeneousModel release(HomogeneousModel m) {
  m.finalize();
  auto d = validate(m);
  if (!d.empty()) throw ModelError(d);
  return m;
}

}  // namespace

ModelError::ModelError(std::vector<std::string> d) : std::runtime_error(joinDiagnostics(d)), diagnostics(std::move(d)) {}

HomogeneousModel build_iwasawa() {
  HomogeneousModel m;
  m.name = "iwasawa";
  m.n = 3;
  m.dalpha.assign(3, Form(3));
  m.dalpha[2] = wedge(Form::alpha(3, 1), Form::alpha(3, 2));
  m.h = diagonal(3, GaussRat::frac(1, 2));
  m.omegaCoeff = Scalar(1);
  m.rank = 2;
  m.F = VForm(3, 2, {Slot::Gauge, Slot::Gauge});
  Form f = Scalar(GaussRat::frac(0, 1, 1, 4)) *
           (wedge(Form::alpha(3, 1), Form::alphaBar(3, 1)) - wedge(Form::alpha(3, 2), Form::alphaBar(3, 2)));
  m.F[{0, 0}] = f;
  m.F[{1, 1}] = -f;
  m.alphaPrime = GaussRat(-4);
  m.chartPullback = {"dz1", "dz2", "-dz3 + z1 dz2"};
  return release(std::move(m));
}

HomogeneousModel build_torus() {
  HomogeneousModel m;
  m.name = "torus";
  m.n = 3;
  m.dalpha.assign(3, Form(3));
  m.h = diagonal(3, GaussRat(1));
  m.omegaCoeff = Scalar(1);
  m.rank = 2;
  m.F = VForm(3, 2, {Slot::Gauge, Slot::Gauge});
  m.alphaPrime = GaussRat(1);
  m.alphaArbitrary = true;
  m.chartPullback = {"dz1", "dz2", "dz3"};
  return release(std::move(m));
}

Form realCoframe(const HomogeneousModel& m, int i) {
  if (!m.real) throw std::invalid_argument("model has no real frame");
  const RealFrame& rf = *m.real;
  const int n = m.n;
  GMat M(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < 2 * n; ++j) {
      M(a, j) = rf.P(a, j);
      M(n + a, j) = rf.P(a, j).conj();
    }
  GMat Minv = inverse(M);
  Form e(n);
  for (int B = 0; B < 2 * n; ++B) e += Scalar(Minv(i, B)) * coframe(m, B);
  return e;
}

HomogeneousModel fromRealFrame(const std::string& name, const RealFrame& rf) {
  HomogeneousModel m;
  m.name = name;
  m.n = rf.dim / 2;
  m.real = rf;
  std::vector<Form> e;
  for (int i = 0; i < rf.dim; ++i) e.push_back(realCoframe(m, i));
  m.dalpha.assign(m.n, Form(m.n));
  for (int a = 0; a < m.n; ++a)
    for (int i = 0; i < rf.dim; ++i) {
      if (rf.P(a, i).isZero()) continue;
      Form de(m.n);
      for (int j = 0; j < rf.dim; ++j)
        for (int k = j + 1; k < rf.dim; ++k)
          if (!rf.c[i][j][k].isZero()) de += Scalar(rf.c[i][j][k]) * wedge(e[j], e[k]);
      m.dalpha[a] += Scalar(rf.P(a, i)) * de;
    }
  return m;
}

HomogeneousModel build_calabi_eckmann() {
  RealFrame rf;
  rf.dim = 6;
  rf.c.assign(6, std::vector<std::vector<GaussRat>>(6, std::vector<GaussRat>(6)));
  // de_i = e_j ∧ e_k for cyclic (i,j,k) on each su(2) factor
  for (int base : {0, 3}) {
    rf.c[base + 0][base + 1][base + 2] = GaussRat(1);
    rf.c[base + 1][base + 0][base + 2] = GaussRat(-1);
    rf.c[base + 2][base + 0][base + 1] = GaussRat(1);
  }
  rf.P = GMat(3, 6);
  const GaussRat I = GaussRat::I();
  rf.P(0, 0) = 1;
  rf.P(0, 3) = I;
  rf.P(1, 1) = 1;
  rf.P(1, 2) = I;
  rf.P(2, 4) = 1;
  rf.P(2, 5) = I;
  HomogeneousModel m = fromRealFrame("calabi-eckmann", rf);
  m.h = diagonal(3, GaussRat::frac(1, 2));
  m.omegaCoeff = Scalar(1);
  m.rank = 3;
  m.F = VForm(3, 3, {Slot::Gauge, Slot::Gauge});
  m.alphaPrime = GaussRat(1);
  m.alphaArbitrary = true;
  return release(std::move(m));
}

HomogeneousModel scaleGauge(const HomogeneousModel& m, const GaussRat& factor) {
  HomogeneousModel r = m;
  r.F *= Scalar(factor);
  return r;
}

bool sameModel(const HomogeneousModel& x, const HomogeneousModel& y) {
  return x.name == y.name && x.n == y.n && x.dalpha == y.dalpha && x.h == y.h && x.omegaCoeff == y.omegaCoeff &&
         x.rank == y.rank && x.F == y.F && x.alphaPrime == y.alphaPrime && x.alphaArbitrary == y.alphaArbitrary &&
         x.chartPullback == y.chartPullback;
}

namespace {

std::string barName(const std::string& s) { return s.substr(0, 1) + "b" + s.substr(1); }

struct Names {
  std::vector<std::string> holo;
  Form lookup(const std::string& s, int n) const {
    for (int a = 0; a < n; ++a) {
      if (holo[a] == s) return Form::alpha(n, a + 1);
      if (barName(holo[a]) == s) return Form::alphaBar(n, a + 1);
    }
    throw ModelError({"unknown coframe symbol '" + s + "'"});
  }
  std::vector<std::string> wedgeOf(MultiIndex k) const {
    std::vector<std::string> w;
    for (int i : indices(k.h)) w.push_back(holo[i - 1]);
    for (int i : indices(k.a)) w.push_back(barName(holo[i - 1]));
    return w;
  }
};

Scalar scalarField(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    return Scalar::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ModelError({where + ": " + e.what()});
  }
}

}  // namespace

HomogeneousModel parse_model_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw ModelError({std::string("not valid JSON: ") + e.what()});
  }
  std::vector<std::string> err;
  for (const char* key : {"name", "n", "coframe", "d", "metric", "bundle", "alpha_prime"})
    if (!doc.contains(key)) err.push_back(std::string("missing field '") + key + "'");
  if (!err.empty()) throw ModelError(err);
  try {
    HomogeneousModel m;
    m.name = doc["name"].get<std::string>();
    m.n = doc["n"].get<int>();
    if (m.n < 1 || m.n > 8) throw ModelError({"n must be between 1 and 8"});
    const int n = m.n;
    Names names{doc["coframe"].get<std::vector<std::string>>()};
    if (static_cast<int>(names.holo.size()) != n) throw ModelError({"coframe must list n symbols"});
    m.dalpha.assign(n, Form(n));
    for (const auto& [sym, terms] : doc["d"].items()) {
      int a = -1;
      for (int i = 0; i < n; ++i)
        if (names.holo[i] == sym) a = i;
      if (a < 0) throw ModelError({"d: unknown coframe symbol '" + sym + "'"});
      for (const auto& t : terms) {
        Form f = Form::constant(n, scalarField(t.at("coeff"), "d." + sym));
        for (const auto& w : t.at("wedge")) f = wedge(f, names.lookup(w.get<std::string>(), n));
        m.dalpha[a] += f;
      }
    }
    const auto& met = doc["metric"];
    if (!met.is_array() || static_cast<int>(met.size()) != n) throw ModelError({"metric must be n x n"});
    m.h = GMat(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(met[i].size()) != n) throw ModelError({"metric must be n x n"});
      for (int j = 0; j < n; ++j) {
        Scalar s = scalarField(met[i][j], "metric");
        if (!s.isConstant()) throw ModelError({"metric entries must be constants"});
        m.h(i, j) = s.constant();
      }
    }
    m.omegaCoeff = doc.contains("omega_coeff") ? scalarField(doc["omega_coeff"], "omega_coeff") : Scalar(1);
    const auto& bundle = doc["bundle"];
    m.rank = bundle.at("rank").get<int>();
    if (m.rank < 1) throw ModelError({"bundle rank must be positive"});
    m.F = VForm(n, m.rank, {Slot::Gauge, Slot::Gauge});
    if (bundle.contains("F"))
      for (const auto& [key, mat] : bundle["F"].items()) {
        Form basis = Form::constant(n, Scalar(1));
        std::stringstream ss(key);
        std::string sym;
        while (std::getline(ss, sym, '^')) basis = wedge(basis, names.lookup(sym, n));
        if (static_cast<int>(mat.size()) != m.rank) throw ModelError({"F." + key + " must be r x r"});
        for (int i = 0; i < m.rank; ++i) {
          if (static_cast<int>(mat[i].size()) != m.rank) throw ModelError({"F." + key + " must be r x r"});
          for (int j = 0; j < m.rank; ++j) m.F[{i, j}] += scalarField(mat[i][j], "F." + key) * basis;
        }
      }
    Scalar ap = scalarField(doc["alpha_prime"], "alpha_prime");
    if (!ap.isConstant()) throw ModelError({"alpha_prime must be a constant"});
    m.alphaPrime = ap.constant();
    m.alphaArbitrary = doc.value("alpha_arbitrary", false);
    if (doc.contains("chart")) {
      const auto& pb = doc["chart"].at("coframe_pullback");
      m.chartPullback.assign(n, "");
      for (int a = 0; a < n; ++a) {
        if (!pb.contains(names.holo[a])) throw ModelError({"chart: missing pullback of " + names.holo[a]});
        m.chartPullback[a] = pb[names.holo[a]].get<std::string>();
      }
    }
    return release(std::move(m));
  } catch (const ModelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelError({std::string("schema violation: ") + e.what()});
  }
}

std::string print_model(const HomogeneousModel& m) {
  const int n = m.n;
  Names names;
  for (int a = 1; a <= n; ++a) names.holo.push_back("a" + std::to_string(a));
  json doc;
  doc["name"] = m.name;
  doc["n"] = n;
  doc["coframe"] = names.holo;
  json d = json::object();
  for (int a = 0; a < n; ++a) {
    json terms = json::array();
    for (const auto& [k, c] : m.dalpha[a].terms()) terms.push_back({{"coeff", c.str()}, {"wedge", names.wedgeOf(k)}});
    d[names.holo[a]] = terms;
  }
  doc["d"] = d;
  json met = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(Scalar(m.h(i, j)).str());
    met.push_back(row);
  }
  doc["metric"] = met;
  doc["omega_coeff"] = m.omegaCoeff.str();
  json F = json::object();
  std::map<MultiIndex, bool> keys;
  for (const auto& f : m.F.c)
    for (const auto& [k, c] : f.terms()) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    json mat = json::array();
    for (int i = 0; i < m.rank; ++i) {
      json row = json::array();
      for (int j = 0; j < m.rank; ++j) row.push_back(m.F[{i, j}].coeff(k).str());
      mat.push_back(row);
    }
    std::string key;
    for (const auto& s : names.wedgeOf(k)) key += (key.empty() ? "" : "^") + s;
    F[key] = mat;
  }
  doc["bundle"] = {{"rank", m.rank}, {"F", F}};
  doc["alpha_prime"] = Scalar(m.alphaPrime).str();
  doc["alpha_arbitrary"] = m.alphaArbitrary;
  if (!m.chartPullback.empty()) {
    json pb = json::object();
    for (int a = 0; a < n; ++a) pb[names.holo[a]] = m.chartPullback[a];
    doc["chart"] = {{"coords", n}, {"coframe_pullback", pb}};
  }
  return doc.dump(2) + "\n";
}

HomogeneousModel load_model(const std::string& source) {
  if (source == "iwasawa") return build_iwasawa();
  if (source == "calabi-eckmann") return build_calabi_eckmann();
  if (source == "torus") return build_torus();
  std::ifstream in(source);
  if (!in) throw ModelError({"no built-in model or readable file named '" + source + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_file(ss.str());
}

}  // namespace hetmod
