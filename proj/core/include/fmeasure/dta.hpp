#pragma once

#include <cstddef>
#include <vector>

#include "fmeasure/types.hpp"

namespace fmeasure {

// How the per-k prefix coefficients are maintained while the expected-F
// recurrence walks k downward.
enum class CoeffStrategy {
  Auto,         // prefix table up to a size cutoff, deflation beyond it
  PrefixTable,  // O(n^2) memory, no division
  Deflation,    // O(n) memory, guarded synthetic division
};

struct DtaOptions {
  CoeffStrategy strategy = CoeffStrategy::Auto;
  // When beta^2 is not recognizably rational, force the nearest fraction with
  // denominator <= 100 instead of falling back to the cubic algorithm.
  bool approximate_irrational_betasq = false;
};

// f[k] = expected F_beta when the k highest-probability instances are
// predicted positive.  `order` is the descending-probability permutation the
// table refers to (identity when the caller passed an already-sorted vector).
struct ExpectedFTable {
  std::vector<double> f;            // length n+1
  std::vector<std::size_t> order;   // length n
};

struct OptimalPrediction {
  std::size_t k_star = 0;     // number of instances predicted positive
  Prediction mask;            // in the caller's original instance order
  double expected_f = 0.0;    // = max_k f[k]
};

// Exact expected F of mask s under the independent label model, by summing
// over all 2^n outcomes.  Oracle scale only: n <= 25.
double expected_f_exact(const ProbVector& p, const Prediction& s, Beta beta,
                        EmptyConvention conv);

// O(n^3) expected-F table via the double sum over prefix / suffix success
// counts.  `p` must already be sorted in descending order (rejected
// otherwise, to prevent silent misuse).  Works for any real beta.
ExpectedFTable expected_f_table_cubic(const ProbVector& p, Beta beta,
                                      EmptyConvention conv);

// O((q+r) n^2) expected-F table for rational beta^2 = q/r; see the .cpp for
// the recurrence.  `p` must be sorted in descending order.
ExpectedFTable expected_f_table_quadratic(const ProbVector& p,
                                          RationalBetaSq betasq,
                                          EmptyConvention conv,
                                          const DtaOptions& opts = {});

// Sorts p descending (stable, ties by original index), computes the expected-F
// table (quadratic path when beta^2 is recognized rational, cubic otherwise),
// and returns the argmax-k prediction mapped back to original instance order.
// Argmax ties break toward smaller k.
OptimalPrediction optimal_prediction(const ProbVector& p, Beta beta,
                                     EmptyConvention conv,
                                     const DtaOptions& opts = {});

}  // namespace fmeasure
