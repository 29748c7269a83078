#include "fmeasure/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fmeasure {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

double parse_double_strict(const std::string& text, std::size_t line_no) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw DataError("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  if (!std::isfinite(v)) {
    throw DataError("line " + std::to_string(line_no) + ": value must be finite");
  }
  return v;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

DenseDataset load_dense_csv(std::istream& in) {
  DenseDataset ds;
  std::string line;
  if (!std::getline(in, line)) throw DataError("dense csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split(line, ',');
  if (header.empty()) throw DataError("dense csv: empty header");
  ds.has_labels = header.back() == "label";
  const std::size_t n_features = header.size() - (ds.has_labels ? 1 : 0);
  if (n_features == 0) throw DataError("dense csv: no feature columns");
  ds.feature_names.assign(header.begin(), header.begin() + static_cast<std::ptrdiff_t>(n_features));

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < n_features; ++j) {
      values.push_back(parse_double_strict(fields[j], line_no));
    }
    if (ds.has_labels) {
      const double v = parse_double_strict(fields.back(), line_no);
      if (v != 0.0 && v != 1.0) {
        throw DataError("line " + std::to_string(line_no) + ": label must be 0 or 1");
      }
      ds.y.push_back(v != 0.0 ? 1 : 0);
    }
    ++rows;
  }
  ds.X = Matrix(rows, n_features);
  ds.X.data = std::move(values);
  return ds;
}

DenseDataset load_dense_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path);
  return load_dense_csv(in);
}

void write_dense_csv(std::ostream& out, const Matrix& X, const LabelVector* y) {
  for (std::size_t j = 0; j < X.cols; ++j) {
    if (j) out << ',';
    out << 'x' << j;
  }
  if (y != nullptr) out << ",label";
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", X.at(i, j));
      out << buf;
    }
    if (y != nullptr) out << ',' << static_cast<int>((*y)[i]);
    out << '\n';
  }
}

bool looks_sparse(const std::string& first_line) {
  const std::string t = trim(first_line);
  if (t.empty()) return false;
  if (t.find(':') != std::string::npos) return true;
  if (t == "-") return true;
  // A bare label list ("3,7") with no feature pairs is sparse as well.
  return t.find_first_not_of("0123456789,") == std::string::npos;
}

SparseDataset load_sparse_multilabel(std::istream& in) {
  SparseDataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    SparseInstance inst;
    std::stringstream ss(line);
    std::string label_field;
    ss >> label_field;
    if (label_field != "-") {
      for (const std::string& tok : split(label_field, ',')) {
        char* end = nullptr;
        const unsigned long idx = std::strtoul(tok.c_str(), &end, 10);
        if (tok.empty() || *end != '\0') {
          throw DataError("line " + std::to_string(line_no) + ": bad label index '" + tok + "'");
        }
        inst.labels.push_back(idx);
        ds.num_labels = std::max(ds.num_labels, static_cast<std::size_t>(idx) + 1);
      }
      std::vector<std::size_t> sorted = inst.labels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DataError("line " + std::to_string(line_no) + ": duplicate label index");
      }
    }
    std::string pair;
    long long prev_index = -1;
    while (ss >> pair) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) {
        throw DataError("line " + std::to_string(line_no) + ": bad feature pair '" + pair + "'");
      }
      char* end = nullptr;
      const std::string idx_text = pair.substr(0, colon);
      const unsigned long idx = std::strtoul(idx_text.c_str(), &end, 10);
      if (idx_text.empty() || *end != '\0') {
        throw DataError("line " + std::to_string(line_no) + ": bad feature index '" + idx_text + "'");
      }
      if (static_cast<long long>(idx) <= prev_index) {
        throw DataError("line " + std::to_string(line_no) + ": feature indices must be strictly ascending");
      }
      prev_index = static_cast<long long>(idx);
      inst.features.emplace_back(idx, parse_double_strict(pair.substr(colon + 1), line_no));
    }
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

SparseDataset load_sparse_multilabel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path);
  return load_sparse_multilabel(in);
}

void write_predictions_csv(std::ostream& out, const ProbVector& probability,
                           const Prediction& prediction) {
  out << "index,probability,prediction\n";
  char buf[64];
  for (std::size_t i = 0; i < probability.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", probability[i]);
    out << i << ',' << buf << ',' << static_cast<int>(prediction[i]) << '\n';
  }
}

PredictionsCsv load_predictions_csv(std::istream& in) {
  PredictionsCsv out;
  std::string line;
  if (!std::getline(in, line)) throw DataError("predictions csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "index,probability,prediction") {
    throw DataError("predictions csv: unexpected header '" + line + "'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 3) {
      throw DataError("line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const double prob = parse_double_strict(fields[1], line_no);
    const double pred = parse_double_strict(fields[2], line_no);
    if (pred != 0.0 && pred != 1.0) {
      throw DataError("line " + std::to_string(line_no) + ": prediction must be 0 or 1");
    }
    out.probability.push_back(prob);
    out.prediction.push_back(pred != 0.0 ? 1 : 0);
  }
  return out;
}

PredictionsCsv load_predictions_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions: " + path);
  return load_predictions_csv(in);
}

}  // namespace fmeasure
