#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fmeasure/types.hpp"

namespace fmeasure {

// Dense dataset: CSV with a header row, feature columns first, optionally a
// final `label` column of 0/1.
struct DenseDataset {
  Matrix X;
  LabelVector y;           // empty when has_labels is false
  bool has_labels = false;
  std::vector<std::string> feature_names;
};

DenseDataset load_dense_csv(std::istream& in);
DenseDataset load_dense_csv_file(const std::string& path);
void write_dense_csv(std::ostream& out, const Matrix& X, const LabelVector* y);

// Sparse multilabel instance: one line per instance, comma-separated label
// indices (or `-` for none), a space, then `index:value` feature pairs with
// 0-based strictly ascending indices.
struct SparseInstance {
  std::vector<std::size_t> labels;
  std::vector<std::pair<std::size_t, double>> features;
};

struct SparseDataset {
  std::vector<SparseInstance> instances;
  std::size_t num_labels = 0;  // max label index + 1
};

SparseDataset load_sparse_multilabel(std::istream& in);
SparseDataset load_sparse_multilabel_file(const std::string& path);

// True if the line looks like the sparse multilabel format rather than a
// dense CSV header.
bool looks_sparse(const std::string& first_line);

// Predictions CSV: header `index,probability,prediction`.
struct PredictionsCsv {
  ProbVector probability;
  Prediction prediction;
};

void write_predictions_csv(std::ostream& out, const ProbVector& probability,
                           const Prediction& prediction);
PredictionsCsv load_predictions_csv(std::istream& in);
PredictionsCsv load_predictions_csv_file(const std::string& path);

}  // namespace fmeasure
