#include "fmeasure/poisson_binomial.hpp"

#include <stdexcept>

namespace fmeasure {

namespace {

// In-place convolution with the factor (p x + (1-p)).
void convolve_factor(PBCoefficients& c, double p) {
  const double q = 1.0 - p;
  c.push_back(0.0);
  for (std::size_t i = c.size() - 1; i > 0; --i) {
    c[i] = c[i] * q + c[i - 1] * p;
  }
  c[0] *= q;
}

}  // namespace

PBCoefficients pb_coefficients(const ProbVector& p) {
  validate_probabilities(p);
  PBCoefficients c{1.0};
  c.reserve(p.size() + 1);
  for (double pj : p) convolve_factor(c, pj);
  return c;
}

PBPrefixTable pb_prefix_table(const ProbVector& p) {
  validate_probabilities(p);
  PBPrefixTable table;
  table.rows.reserve(p.size() + 1);
  table.rows.push_back({1.0});
  for (double pj : p) {
    PBCoefficients next = table.rows.back();
    convolve_factor(next, pj);
    table.rows.push_back(std::move(next));
  }
  return table;
}

DeflateResult pb_deflate(const PBCoefficients& c, double p_k) {
  if (c.size() < 2) {
    throw std::invalid_argument("pb_deflate: polynomial has no factor to remove");
  }
  if (!(p_k >= 0.0 && p_k <= 1.0)) {
    throw std::invalid_argument("pb_deflate: p_k must lie in [0,1]");
  }
  const std::size_t m = c.size() - 1;  // quotient length
  DeflateResult out;
  out.c.assign(m, 0.0);
  const double q = 1.0 - p_k;
  if (p_k <= 0.5) {
    // Forward recurrence: b[i] = (c[i] - p b[i-1]) / (1-p).  Amplification
    // factor p/(1-p) <= 1 on this branch.
    out.c[0] = c[0] / q;
    for (std::size_t i = 1; i < m; ++i) {
      out.c[i] = (c[i] - p_k * out.c[i - 1]) / q;
    }
  } else {
    // Backward recurrence: b[i-1] = (c[i] - (1-p) b[i]) / p.  With p = 1 this
    // is the plain index shift (division by x).
    out.c[m - 1] = c[m] / p_k;
    for (std::size_t i = m - 1; i > 0; --i) {
      out.c[i - 1] = (c[i] - q * out.c[i]) / p_k;
    }
  }
  const double eps = 1e-6;
  for (double v : out.c) {
    if (!(v >= -eps && v <= 1.0 + eps)) {
      out.stable = false;
      break;
    }
  }
  return out;
}

}  // namespace fmeasure
