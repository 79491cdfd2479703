#include "hetmod/models.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace hetmod;

namespace {
std::string dataFile(const std::string& name) { return std::string(HETMOD_TEST_DATA) + "/" + name; }

std::vector<std::string> diagnosticsOf(const std::string& source) {
  try {
    load_model(source);
  } catch (const ModelError& e) {
    return e.diagnostics;
  }
  return {};
}

bool mentions(const std::vector<std::string>& d, const std::string& what) {
  for (const auto& s : d)
    if (s.find(what) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_SUITE("models") {

TEST_CASE("Iwasawa") {
  HomogeneousModel m = build_iwasawa();
  CHECK(validate(m).empty());
  CHECK(check_heterotic_system(m).pass());
  CHECK(m.alphaPrime == GaussRat(-4));
  CHECK(curvature(chern_connection(m), m).isZero());
  // F is diag(i/4, −i/4) ⊗ (α1ᾱ1 − α2ᾱ2)
  Form f = Form::basis(3, {0b001, 0b001}) - Form::basis(3, {0b010, 0b010});
  CHECK(m.F[{0, 0}] == Scalar(GaussRat::frac(0, 1, 1, 4)) * f);
  CHECK(m.F[{1, 1}] == Scalar(GaussRat::frac(0, 1, -1, 4)) * f);
  CHECK(m.F[{0, 1}].isZero());
}

TEST_CASE("torus") {
  HomogeneousModel m = build_torus();
  CHECK(validate(m).empty());
  for (const auto& d : m.dalpha) CHECK(d.isZero());
  CHECK(m.h == GMat::identity(3));
  CHECK(m.F.isZero());
}

TEST_CASE("model files round trip") {
  for (const auto& m : {build_iwasawa(), build_calabi_eckmann(), build_torus()}) {
    std::string text = print_model(m);
    HomogeneousModel back = parse_model_file(text);
    CHECK(sameModel(m, back));
    CHECK(print_model(back) == text);
  }
  CHECK(sameModel(load_model("iwasawa"), build_iwasawa()));
}

TEST_CASE("validation of handcrafted files") {
  HomogeneousModel ok = load_model(dataFile("integrable_11.json"));
  CHECK(ok.n == 2);
  CHECK(validate(ok).empty());
  CHECK(mentions(diagnosticsOf(dataFile("nonintegrable_02.json")), "non-integrable"));
  CHECK(mentions(diagnosticsOf(dataFile("non_hermitian.json")), "not Hermitian"));
  CHECK(mentions(diagnosticsOf(dataFile("complex_alpha.json")), "alpha_prime must be real"));
  CHECK(mentions(diagnosticsOf(dataFile("truncated.json")), "not valid JSON"));
  CHECK(mentions(diagnosticsOf("no-such-model"), "no built-in model"));
}

TEST_CASE("scaling the gauge field") {
  HomogeneousModel m = scaleGauge(build_iwasawa(), GaussRat(2));
  CHECK(m.F == Scalar(2) * build_iwasawa().F);
  CHECK(!check_heterotic_system(m).passF2());
}

}
