#pragma once

// Test-only oracles and helpers.  Everything here is implemented from the
// defining formulas, independent of the library code paths it checks.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fmeasure/random.hpp"
#include "fmeasure/types.hpp"

namespace testkit {

// F from counts, straight from the defining ratio.
inline double f_from_counts(double tp, double sum_s, double sum_y, double beta_sq,
                            bool one_on_empty) {
  const double den = beta_sq * sum_y + sum_s;
  if (den == 0.0) return one_on_empty ? 1.0 : 0.0;
  return (1.0 + beta_sq) * tp / den;
}

// Expected F of mask s_bits under independent labels, by full enumeration of
// the 2^n outcomes.
inline double enum_expected_f(const std::vector<double>& p, std::uint32_t s_bits,
                              double beta_sq, bool one_on_empty) {
  const std::size_t n = p.size();
  const double sum_s = std::popcount(s_bits);
  double total = 0.0;
  for (std::uint32_t y = 0; y < (1u << n); ++y) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) prob *= (y >> i) & 1u ? p[i] : 1.0 - p[i];
    const double tp = std::popcount(y & s_bits);
    const double sum_y = std::popcount(y);
    total += prob * f_from_counts(tp, sum_s, sum_y, beta_sq, one_on_empty);
  }
  return total;
}

struct MaskSearch {
  double best_value = -1.0;
  std::uint32_t best_mask = 0;
  bool top_k_attains = false;  // some size-|mask| prefix of the p-descending
                               // order reaches best_value (within 1e-12)
};

// Global maximum of expected F over all 2^n masks, plus whether a top-k mask
// (by descending probability) attains it.  Precomputes per-outcome weights so
// the scan is O(4^n) with O(1) work per (mask, outcome) pair.
inline MaskSearch enum_best_mask(const std::vector<double>& p, double beta_sq,
                                 bool one_on_empty) {
  const std::size_t n = p.size();
  const std::uint32_t total = 1u << n;
  std::vector<double> prob(total);
  for (std::uint32_t y = 0; y < total; ++y) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= (y >> i) & 1u ? p[i] : 1.0 - p[i];
    prob[y] = w;
  }
  MaskSearch out;
  std::vector<double> value(total, 0.0);
  for (std::uint32_t s = 0; s < total; ++s) {
    const double sum_s = std::popcount(s);
    double v = 0.0;
    for (std::uint32_t y = 0; y < total; ++y) {
      const double tp = std::popcount(y & s);
      const double sum_y = std::popcount(y);
      v += prob[y] * f_from_counts(tp, sum_s, sum_y, beta_sq, one_on_empty);
    }
    value[s] = v;
    if (v > out.best_value) {
      out.best_value = v;
      out.best_mask = s;
    }
  }
  // Masks that take a prefix of the descending-probability order.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&p](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  std::uint32_t mask = 0;
  if (value.empty()) return out;
  if (value[0] >= out.best_value - 1e-12) out.top_k_attains = true;
  for (std::size_t k = 0; k < n; ++k) {
    mask |= 1u << order[k];
    if (value[mask] >= out.best_value - 1e-12) out.top_k_attains = true;
  }
  return out;
}

// Central-difference gradient of f at x with step h.
inline std::vector<double> numeric_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h = 1e-5) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double fp = f(x);
    x[i] = saved - h;
    const double fm = f(x);
    x[i] = saved;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

inline double max_rel_err(std::span<const double> got, std::span<const double> want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double scale = std::max({1.0, std::abs(got[i]), std::abs(want[i])});
    worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
  }
  return worst;
}

inline std::vector<double> random_probs(fmeasure::Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  for (auto& v : p) v = rng.uniform();
  return p;
}

}  // namespace testkit
