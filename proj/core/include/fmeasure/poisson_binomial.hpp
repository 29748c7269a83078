#pragma once

#include <vector>

#include "fmeasure/types.hpp"

namespace fmeasure {

// c[i] = P(exactly i successes) for a sum of independent, non-identical
// Bernoulli trials; equivalently the coefficients of x^i in the product
// prod_j [p_j x + (1 - p_j)].
using PBCoefficients = std::vector<double>;

// rows[k] holds the coefficients of the length-k prefix product, so
// rows[k][i] = P(exactly i successes among the first k trials).
// rows[0] = (1); row k has k+1 entries.
struct PBPrefixTable {
  std::vector<PBCoefficients> rows;
};

// Full product coefficients by iterated convolution with (1-p_j, p_j), in
// index-ascending factor order (bit-reproducible).
PBCoefficients pb_coefficients(const ProbVector& p);

// All prefix products; O(n^2) time and space.
PBPrefixTable pb_prefix_table(const ProbVector& p);

struct DeflateResult {
  PBCoefficients c;
  bool stable = true;  // false if any quotient coefficient left [-eps, 1+eps]
};

// Removes the factor (p_k x + (1 - p_k)) from a product polynomial by
// synthetic division.  The recurrence direction follows the factor: forward
// for p_k <= 1/2, backward for p_k > 1/2, so the per-step error amplification
// never exceeds 1.  p_k = 1 degenerates to an index shift (division by x).
// A coefficient outside [-1e-6, 1 + 1e-6] marks the result unstable; callers
// then recompute the prefix product directly.
DeflateResult pb_deflate(const PBCoefficients& c, double p_k);

}  // namespace fmeasure
