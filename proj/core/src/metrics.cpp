#include "fmeasure/metrics.hpp"

#include <stdexcept>

namespace fmeasure {

namespace {

double ratio_or_convention(std::size_t num, std::size_t den, EmptyConvention conv) {
  if (den == 0) return conv == EmptyConvention::OneOnEmpty ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

BinaryEval evaluate_binary(const Prediction& s, const LabelVector& y, Beta beta,
                           EmptyConvention conv) {
  if (s.size() != y.size()) {
    throw std::invalid_argument("evaluate_binary: prediction/label length mismatch");
  }
  BinaryEval e;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0) {
      if (y[i] != 0) ++e.tp; else ++e.fp;
    } else {
      if (y[i] != 0) ++e.fn; else ++e.tn;
    }
  }
  const double b2 = beta.squared();
  e.precision = ratio_or_convention(e.tp, e.tp + e.fp, conv);
  e.recall = ratio_or_convention(e.tp, e.tp + e.fn, conv);
  const double den = b2 * static_cast<double>(e.tp + e.fn) + static_cast<double>(e.tp + e.fp);
  if (den == 0.0) {
    e.f = conv == EmptyConvention::OneOnEmpty ? 1.0 : 0.0;
  } else {
    e.f = (1.0 + b2) * static_cast<double>(e.tp) / den;
  }
  return e;
}

double population_f(const PopulationRates& rates, Beta beta, EmptyConvention conv) {
  const double slack = 1e-12;
  if (!(rates.p11 >= 0.0 && rates.p11 <= 1.0) ||
      !(rates.p01 >= 0.0 && rates.p01 <= 1.0) ||
      !(rates.pi1 >= 0.0 && rates.pi1 <= 1.0) ||
      rates.p11 > rates.pi1 + slack || rates.p01 > 1.0 - rates.pi1 + slack) {
    throw std::invalid_argument("population_f: rates outside their valid region");
  }
  const double b2 = beta.squared();
  const double den = b2 * rates.pi1 + rates.p11 + rates.p01;
  if (den <= 0.0) {
    // Possible only when pi1 = p11 = p01 = 0.
    return conv == EmptyConvention::OneOnEmpty ? 1.0 : 0.0;
  }
  return (1.0 + b2) * rates.p11 / den;
}

double macro_f(const std::vector<std::pair<Prediction, LabelVector>>& per_label,
               Beta beta, EmptyConvention conv) {
  if (per_label.empty()) {
    throw std::invalid_argument("macro_f: need at least one label");
  }
  double sum = 0.0;
  for (const auto& [s, y] : per_label) {
    sum += evaluate_binary(s, y, beta, conv).f;
  }
  return sum / static_cast<double>(per_label.size());
}

}  // namespace fmeasure
