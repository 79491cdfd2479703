#ifndef HETMOD_MODELS_HPP
#define HETMOD_MODELS_HPP

#include "hetmod/geometry.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hetmod {

/// Raised when a model file or built-in name cannot be turned into a valid model.
struct ModelError : std::runtime_error {
  std::vector<std::string> diagnostics;
  explicit ModelError(std::vector<std::string> d);
};

HomogeneousModel build_iwasawa();
HomogeneousModel build_calabi_eckmann();
HomogeneousModel build_torus();
/// Builds from real structure constants and a complex coframe.
HomogeneousModel fromRealFrame(const std::string& name, const RealFrame& rf);
/// Real coframe element e^{i+1} written in the complex coframe.
Form realCoframe(const HomogeneousModel& m, int i);

HomogeneousModel parse_model_file(const std::string& text);
std::string print_model(const HomogeneousModel& m);
/// Built-in name or path to a JSON file.
HomogeneousModel load_model(const std::string& source);
/// Equality of everything that model files carry.
bool sameModel(const HomogeneousModel& x, const HomogeneousModel& y);
/// Copy with F multiplied by a constant.
HomogeneousModel scaleGauge(const HomogeneousModel& m, const GaussRat& factor);

}  // namespace hetmod

#endif
