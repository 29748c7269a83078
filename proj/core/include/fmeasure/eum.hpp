#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fmeasure/dta.hpp"
#include "fmeasure/optimize.hpp"
#include "fmeasure/types.hpp"

namespace fmeasure {

// Linear-logistic model.  There is no separate intercept: when one is wanted
// it is the weight of a constant feature (the R1/R2 dummy attribute).
struct LinearModel {
  std::vector<double> weights;
};

enum class Orientation {
  Strict,     // predict positive iff score >  delta
  Inclusive,  // predict positive iff score >= delta
};

// A threshold fitted by the empirical-F sweep, together with the training F
// it achieved.  train_f is NaN on models reloaded from disk (the sweep data
// is gone).
struct ThresholdChoice {
  double delta = 0.0;
  Orientation orientation = Orientation::Inclusive;
  double train_f = 0.0;
};

enum class Method {
  MlDelta,  // maximum-likelihood fit, then threshold sweep
  FDelta,   // soft-F fit (initialized at the ML solution), then sweep
  MlE,      // maximum-likelihood fit, expected-F-optimal batch prediction
};

struct FittedMethod {
  Method method = Method::MlDelta;
  LinearModel model;
  std::optional<ThresholdChoice> threshold;  // absent for MlE
  Beta beta{1.0};
};

struct TrainOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-6;
  std::vector<double> init;  // empty = zeros
};

struct FitOptions {
  TrainOptions train;
  double softf_lambda = 0.0;        // optional penalty on the soft-F objective
  bool softf_fixed_half = false;    // use delta = 0.5 instead of sweeping
  EmptyConvention convention = EmptyConvention::OneOnEmpty;  // for the sweep
  DtaOptions dta;
};

// Objective selector for train().
struct TrainObjective {
  enum Kind { Nll, SoftF } kind = Nll;
  double lambda = 0.0;  // Nll: Gaussian-norm penalty weight
  Beta beta{1.0};       // SoftF: the F parameter

  static TrainObjective nll(double lambda) { return {Nll, lambda, Beta{1.0}}; }
  static TrainObjective soft_f(Beta beta, double lambda = 0.0) {
    return {SoftF, lambda, beta};
  }
};

double predict_proba(const LinearModel& model, std::span<const double> features);
ProbVector predict_proba(const LinearModel& model, const Matrix& X);

struct ObjectiveEval {
  double value = 0.0;
  std::vector<double> gradient;
};

// Regularized negative log-likelihood:
//   value = sum_i -[y_i log p_i + (1-y_i) log(1-p_i)] + (lambda/2) ||w||^2,
//   gradient = sum_i (p_i - y_i) x_i + lambda w,
// with logs clamped at 1e-12.
ObjectiveEval nll_objective(const LinearModel& model, const Matrix& X,
                            const LabelVector& y, double lambda);

// Soft-F objective: the empirical F with each binary decision replaced by the
// predictive probability,
//   value = (1+b^2) sum_i p_i y_i / (b^2 sum_i y_i + sum_i p_i),
// differentiated through the logistic link.
ObjectiveEval softf_objective(const LinearModel& model, const Matrix& X,
                              const LabelVector& y, Beta beta);

// Finds a stationary point: NLL is minimized, SoftF maximized.  Deterministic
// given inputs and options; SoftF is non-concave, so the result is a local
// optimum from opts.init.
LinearModel train(const TrainObjective& objective, const Matrix& X,
                  const LabelVector& y, const TrainOptions& opts = {});

// Maximizes the empirical F over every realizable cut of the scores: the
// prefixes of the descending score order at distinct-value boundaries, which
// the two orientations realize as thresholds.  Ties break toward predicting
// fewer positives, then toward the inclusive orientation.  O(n log n).
ThresholdChoice threshold_sweep(const std::vector<double>& scores,
                                const LabelVector& y, Beta beta,
                                EmptyConvention conv);

// Applies a fitted threshold to a score vector.
Prediction apply_threshold(const std::vector<double>& scores,
                           const ThresholdChoice& choice);

FittedMethod fit_method(Method method, const Matrix& X_train,
                        const LabelVector& y_train, Beta beta, double lambda,
                        const FitOptions& opts = {});

// MlDelta / FDelta threshold per instance; MlE scores the whole batch as one
// decision-theoretic prediction.
Prediction apply_method(const FittedMethod& fitted, const Matrix& X_test,
                        EmptyConvention conv = EmptyConvention::OneOnEmpty,
                        const DtaOptions& dta = {});

}  // namespace fmeasure
