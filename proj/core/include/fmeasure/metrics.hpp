#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fmeasure/types.hpp"

namespace fmeasure {

// Contingency counts and the derived precision / recall / F of a binary
// prediction against gold labels.
struct BinaryEval {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

// Population-level rates of a fixed classifier:
//   p11 = P(Y=1 and predicted 1), p01 = P(Y=0 and predicted 1), pi1 = P(Y=1).
struct PopulationRates {
  double p11 = 0.0;
  double p01 = 0.0;
  double pi1 = 0.0;
};

// Empirical F_beta of prediction s against labels y:
//   F = (1 + b^2) tp / (b^2 (tp + fn) + tp + fp).
// The 0/0 case (no positives predicted, none present) takes the value given
// by the convention.  Precision and recall get the same treatment on their
// own 0/0 cases; F is always computed from the counts directly, never from
// precision and recall.
BinaryEval evaluate_binary(const Prediction& s, const LabelVector& y, Beta beta,
                           EmptyConvention conv);

// F_beta of a classifier with the given population rates:
//   F = (1 + b^2) p11 / (b^2 pi1 + p11 + p01).
// The denominator vanishes only when p11 = p01 = pi1 = 0; that case follows
// the convention.
double population_f(const PopulationRates& rates, Beta beta,
                    EmptyConvention conv = EmptyConvention::OneOnEmpty);

// Arithmetic mean of per-label F over (prediction, gold) pairs.
double macro_f(const std::vector<std::pair<Prediction, LabelVector>>& per_label,
               Beta beta, EmptyConvention conv);

}  // namespace fmeasure
