#include "fmeasure/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace fmeasure {

namespace {

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double_strict(const std::string& text, const std::string& key) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw DataError("model file: bad numeric value for '" + key + "'");
  }
  return v;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::MlDelta: return "ml-delta";
    case Method::FDelta: return "f-delta";
    case Method::MlE: return "ml-e";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  if (text == "ml-delta") return Method::MlDelta;
  if (text == "f-delta") return Method::FDelta;
  if (text == "ml-e") return Method::MlE;
  throw std::invalid_argument("unknown method '" + text + "'");
}

void save_model(std::ostream& out, const SavedModel& m) {
  out << "beta=" << format17(m.beta.value()) << '\n';
  out << "method=" << to_string(m.method) << '\n';
  out << "feature_map=" << m.feature_map << '\n';
  if (m.threshold.has_value()) {
    out << "threshold=" << format17(m.threshold->delta) << '\n';
    out << "orientation="
        << (m.threshold->orientation == Orientation::Strict ? "strict" : "inclusive")
        << '\n';
  }
  out << "lambda=" << format17(m.lambda) << '\n';
  for (std::size_t i = 0; i < m.model.weights.size(); ++i) {
    out << 'w' << i << '=' << format17(m.model.weights[i]) << '\n';
  }
}

SavedModel load_model(std::istream& in) {
  SavedModel m;
  bool saw_beta = false, saw_method = false, saw_map = false, saw_lambda = false;
  bool saw_threshold = false, saw_orientation = false;
  double threshold_value = 0.0;
  Orientation orientation = Orientation::Inclusive;
  std::size_t next_weight = 0;

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("model file: malformed line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "beta") {
      try {
        m.beta = parse_beta(value);
      } catch (const std::invalid_argument& e) {
        throw DataError(std::string("model file: ") + e.what());
      }
      saw_beta = true;
    } else if (key == "method") {
      try {
        m.method = parse_method(value);
      } catch (const std::invalid_argument& e) {
        throw DataError(std::string("model file: ") + e.what());
      }
      saw_method = true;
    } else if (key == "feature_map") {
      m.feature_map = value;
      saw_map = true;
    } else if (key == "threshold") {
      threshold_value = parse_double_strict(value, key);
      saw_threshold = true;
    } else if (key == "orientation") {
      if (value == "strict") {
        orientation = Orientation::Strict;
      } else if (value == "inclusive") {
        orientation = Orientation::Inclusive;
      } else {
        throw DataError("model file: unknown orientation '" + value + "'");
      }
      saw_orientation = true;
    } else if (key == "lambda") {
      m.lambda = parse_double_strict(value, key);
      saw_lambda = true;
    } else if (key.size() > 1 && key[0] == 'w') {
      char* end = nullptr;
      const unsigned long idx = std::strtoul(key.c_str() + 1, &end, 10);
      if (*end != '\0') throw DataError("model file: unknown key '" + key + "'");
      if (idx != next_weight) throw DataError("model file: weights out of order at '" + key + "'");
      m.model.weights.push_back(parse_double_strict(value, key));
      ++next_weight;
    } else {
      throw DataError("model file: unknown key '" + key + "'");
    }
  }

  if (!saw_beta || !saw_method || !saw_map || !saw_lambda) {
    throw DataError("model file: missing a required field");
  }
  if (m.model.weights.empty()) throw DataError("model file: no weights");
  if (saw_threshold != saw_orientation) {
    throw DataError("model file: threshold and orientation must appear together");
  }
  if (m.method == Method::MlE) {
    if (saw_threshold) throw DataError("model file: ml-e carries no threshold");
  } else {
    if (!saw_threshold) throw DataError("model file: thresholding method needs a threshold");
    // train_f is a training-time statistic; it is not stored.
    m.threshold = ThresholdChoice{threshold_value, orientation,
                                  std::numeric_limits<double>::quiet_NaN()};
  }
  return m;
}

void save_model_file(const std::string& path, const SavedModel& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open model file for writing: " + path);
  save_model(out, m);
  if (!out) throw DataError("failed writing model file: " + path);
}

SavedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  return load_model(in);
}

}  // namespace fmeasure
