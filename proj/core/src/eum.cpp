#include "fmeasure/eum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fmeasure/metrics.hpp"

namespace fmeasure {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double dot_row(std::span<const double> w, const double* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
  return s;
}

void check_shapes(const Matrix& X, const LabelVector& y, std::size_t dim) {
  if (X.rows != y.size()) {
    throw std::invalid_argument("objective: row/label count mismatch");
  }
  if (X.cols != dim) {
    throw std::invalid_argument("objective: feature dimension mismatch");
  }
}

double nll_eval(std::span<const double> w, const Matrix& X, const LabelVector& y,
                double lambda, std::span<double> grad) {
  const std::size_t n = X.rows;
  const std::size_t dim = X.cols;
  std::fill(grad.begin(), grad.end(), 0.0);
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = X.row(i);
    const double pi = sigmoid(dot_row(w, xi));
    const double yi = y[i] != 0 ? 1.0 : 0.0;
    const double pc = std::clamp(pi, 1e-12, 1.0 - 1e-12);
    value -= yi * std::log(pc) + (1.0 - yi) * std::log(1.0 - pc);
    const double resid = pi - yi;
    for (std::size_t j = 0; j < dim; ++j) grad[j] += resid * xi[j];
  }
  for (std::size_t j = 0; j < dim; ++j) {
    value += 0.5 * lambda * w[j] * w[j];
    grad[j] += lambda * w[j];
  }
  return value;
}

double softf_eval(std::span<const double> w, const Matrix& X, const LabelVector& y,
                  double b2, std::span<double> grad) {
  const std::size_t n = X.rows;
  const std::size_t dim = X.cols;
  std::fill(grad.begin(), grad.end(), 0.0);
  std::vector<double> ps(n);
  double sum_p = 0.0, sum_py = 0.0, sum_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ps[i] = sigmoid(dot_row(w, X.row(i)));
    sum_p += ps[i];
    if (y[i] != 0) {
      sum_py += ps[i];
      sum_y += 1.0;
    }
  }
  const double den = b2 * sum_y + sum_p;
  if (den <= 0.0) return 0.0;  // only possible for an empty dataset
  const double value = (1.0 + b2) * sum_py / den;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = y[i] != 0 ? 1.0 : 0.0;
    const double coef = ps[i] * (1.0 - ps[i]) * ((1.0 + b2) * yi - value) / den;
    const double* xi = X.row(i);
    for (std::size_t j = 0; j < dim; ++j) grad[j] += coef * xi[j];
  }
  return value;
}

}  // namespace

double predict_proba(const LinearModel& model, std::span<const double> features) {
  if (features.size() != model.weights.size()) {
    throw std::invalid_argument("predict_proba: feature dimension mismatch");
  }
  return sigmoid(dot_row(model.weights, features.data()));
}

ProbVector predict_proba(const LinearModel& model, const Matrix& X) {
  if (X.cols != model.weights.size()) {
    throw std::invalid_argument("predict_proba: feature dimension mismatch");
  }
  ProbVector out(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) {
    out[i] = sigmoid(dot_row(model.weights, X.row(i)));
  }
  return out;
}

ObjectiveEval nll_objective(const LinearModel& model, const Matrix& X,
                            const LabelVector& y, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("nll_objective: lambda must be >= 0");
  check_shapes(X, y, model.weights.size());
  ObjectiveEval out;
  out.gradient.assign(model.weights.size(), 0.0);
  out.value = nll_eval(model.weights, X, y, lambda, out.gradient);
  return out;
}

ObjectiveEval softf_objective(const LinearModel& model, const Matrix& X,
                              const LabelVector& y, Beta beta) {
  check_shapes(X, y, model.weights.size());
  ObjectiveEval out;
  out.gradient.assign(model.weights.size(), 0.0);
  out.value = softf_eval(model.weights, X, y, beta.squared(), out.gradient);
  return out;
}

LinearModel train(const TrainObjective& objective, const Matrix& X,
                  const LabelVector& y, const TrainOptions& opts) {
  if (X.rows == 0) throw std::invalid_argument("train: empty dataset");
  if (X.rows != y.size()) throw std::invalid_argument("train: row/label count mismatch");
  validate_labels(y);
  std::vector<double> x0 = opts.init;
  if (x0.empty()) {
    x0.assign(X.cols, 0.0);
  } else if (x0.size() != X.cols) {
    throw std::invalid_argument("train: init dimension mismatch");
  }

  ValueGrad fg;
  if (objective.kind == TrainObjective::Nll) {
    const double lambda = objective.lambda;
    fg = [&X, &y, lambda](std::span<const double> w, std::span<double> grad) {
      return nll_eval(w, X, y, lambda, grad);
    };
  } else {
    // Maximize soft-F (optionally ridge-penalized) by minimizing its negation.
    const double b2 = objective.beta.squared();
    const double lambda = objective.lambda;
    fg = [&X, &y, b2, lambda](std::span<const double> w, std::span<double> grad) {
      double v = softf_eval(w, X, y, b2, grad);
      double penalty = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        penalty += 0.5 * lambda * w[j] * w[j];
        grad[j] = -grad[j] + lambda * w[j];
      }
      return -v + penalty;
    };
  }

  MinimizeOptions mo;
  mo.max_iterations = opts.max_iterations;
  mo.tolerance = opts.tolerance;
  MinimizeResult res = minimize(fg, std::move(x0), mo);
  return LinearModel{std::move(res.x)};
}

ThresholdChoice threshold_sweep(const std::vector<double>& scores,
                                const LabelVector& y, Beta beta,
                                EmptyConvention conv) {
  if (scores.size() != y.size()) {
    throw std::invalid_argument("threshold_sweep: score/label length mismatch");
  }
  validate_labels(y);
  for (double v : scores) {
    if (!std::isfinite(v)) throw std::invalid_argument("threshold_sweep: scores must be finite");
  }
  const std::size_t n = scores.size();
  const double b2 = beta.squared();
  double positives = 0.0;
  for (auto v : y) positives += v != 0 ? 1.0 : 0.0;

  auto f_at = [&](double tp, double k) {
    const double den = b2 * positives + k;
    if (den == 0.0) return conv == EmptyConvention::OneOnEmpty ? 1.0 : 0.0;
    return (1.0 + b2) * tp / den;
  };

  if (n == 0) {
    return ThresholdChoice{std::numeric_limits<double>::infinity(),
                           Orientation::Strict, f_at(0.0, 0.0)};
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  // Candidate cuts are the prefixes of the descending order at distinct-score
  // boundaries (cuts inside a tie group are not realizable by any threshold).
  double best_f = f_at(0.0, 0.0);
  std::size_t best_k = 0;
  double best_delta = scores[order[0]];
  double tp = 0.0;
  std::size_t i = 0;
  while (i < n) {
    const double v = scores[order[i]];
    std::size_t j = i;
    while (j < n && scores[order[j]] == v) {
      if (y[order[j]] != 0) tp += 1.0;
      ++j;
    }
    const double f = f_at(tp, static_cast<double>(j));
    if (f > best_f) {  // strict: ties keep the earlier (fewer-positive) cut
      best_f = f;
      best_k = j;
      best_delta = v;
    }
    i = j;
  }

  if (best_k == 0) {
    // Predict nothing: only a strict cut at the top score realizes this.
    return ThresholdChoice{scores[order[0]], Orientation::Strict, best_f};
  }
  return ThresholdChoice{best_delta, Orientation::Inclusive, best_f};
}

Prediction apply_threshold(const std::vector<double>& scores,
                           const ThresholdChoice& choice) {
  Prediction out(scores.size(), 0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool positive = choice.orientation == Orientation::Strict
                              ? scores[i] > choice.delta
                              : scores[i] >= choice.delta;
    out[i] = positive ? 1 : 0;
  }
  return out;
}

FittedMethod fit_method(Method method, const Matrix& X_train,
                        const LabelVector& y_train, Beta beta, double lambda,
                        const FitOptions& opts) {
  if (lambda < 0.0) throw std::invalid_argument("fit_method: lambda must be >= 0");
  FittedMethod out;
  out.method = method;
  out.beta = beta;

  LinearModel ml = train(TrainObjective::nll(lambda), X_train, y_train, opts.train);
  switch (method) {
    case Method::MlE:
      out.model = std::move(ml);
      return out;
    case Method::MlDelta:
      out.model = std::move(ml);
      break;
    case Method::FDelta: {
      TrainOptions warm = opts.train;
      warm.init = ml.weights;
      out.model = train(TrainObjective::soft_f(beta, opts.softf_lambda), X_train,
                        y_train, warm);
      break;
    }
  }

  ProbVector probs = predict_proba(out.model, X_train);
  if (method == Method::FDelta && opts.softf_fixed_half) {
    ThresholdChoice fixed{0.5, Orientation::Strict, 0.0};
    fixed.train_f =
        evaluate_binary(apply_threshold(probs, fixed), y_train, beta, opts.convention).f;
    out.threshold = fixed;
  } else {
    out.threshold = threshold_sweep(probs, y_train, beta, opts.convention);
  }
  return out;
}

Prediction apply_method(const FittedMethod& fitted, const Matrix& X_test,
                        EmptyConvention conv, const DtaOptions& dta) {
  ProbVector probs = predict_proba(fitted.model, X_test);
  if (fitted.method == Method::MlE) {
    return optimal_prediction(probs, fitted.beta, conv, dta).mask;
  }
  if (!fitted.threshold.has_value()) {
    throw std::invalid_argument("apply_method: thresholding method without a threshold");
  }
  return apply_threshold(probs, *fitted.threshold);
}

}  // namespace fmeasure
