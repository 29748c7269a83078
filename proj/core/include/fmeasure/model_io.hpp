#pragma once

#include <iosfwd>
#include <string>

#include "fmeasure/eum.hpp"
#include "fmeasure/gauss_sim.hpp"

namespace fmeasure {

// On-disk model: plain-text key=value lines, in order
//   beta=, method=, feature_map=, threshold=, orientation=, lambda=,
//   then w<i>= per weight.  threshold/orientation appear only for the
// thresholding methods.  Floats are written with 17 significant digits so the
// round trip is value-exact.  The sweep's train_f is not persisted; reloaded
// thresholds carry NaN there.
struct SavedModel {
  Method method = Method::MlDelta;
  Beta beta{1.0};
  double lambda = 0.0;
  std::string feature_map = "identity";
  LinearModel model;
  std::optional<ThresholdChoice> threshold;
};

void save_model(std::ostream& out, const SavedModel& m);
SavedModel load_model(std::istream& in);

void save_model_file(const std::string& path, const SavedModel& m);
SavedModel load_model_file(const std::string& path);

std::string to_string(Method method);
Method parse_method(const std::string& text);

}  // namespace fmeasure
