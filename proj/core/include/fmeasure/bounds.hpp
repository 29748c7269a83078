#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fmeasure/metrics.hpp"
#include "fmeasure/types.hpp"

namespace fmeasure {

struct BoundInputs {
  std::size_t n = 1;       // sample size
  double eta = 0.05;       // confidence parameter, in (0,1)
  Beta beta{1.0};
  double pi1 = 0.5;        // positive-class probability, in (0,1]
  std::size_t vc_dim = 1;  // VC dimension d (uniform bound only)
};

// Deviation bound for the empirical F of a fixed classifier:
//   r(n, eta) = sqrt(ln(6/eta) / (2n));
// when r < b^2 pi1 / (2 (1+b^2)) the bound is
//   3 (1+b^2) r / (b^2 pi1 - 2 (1+b^2) r),
// otherwise the bound does not apply (empty).
std::optional<double> lemma2_bound(const BoundInputs& inp);

// Regret bound for empirical F maximization over a class of VC dimension d:
//   rbar(n, eta) = sqrt((ln(12/eta) + d ln(2 e n / d)) / n);
// when rbar < b^2 pi1 / (2 (1+b^2)) the bound is
//   6 (1+b^2) rbar / (b^2 pi1 - 2 (1+b^2) rbar),
// otherwise empty.
std::optional<double> theorem3_bound(const BoundInputs& inp);

// One atom of a finite input domain: P(X = x) and P(Y = 1 | X = x).
struct FiniteDomainAtom {
  double mass = 0.0;
  double eta1 = 0.0;
};
using FiniteDomain = std::vector<FiniteDomainAtom>;

struct BruteForceResult {
  double best_f = 0.0;
  std::vector<std::size_t> best_set;  // atom indices predicted positive
};

// Exhausts all 2^|dom| classifiers on a finite domain (|dom| <= 20) and
// returns a population-F maximizer.  Ties go to the first subset in mask
// order.
BruteForceResult finite_domain_bruteforce(const FiniteDomain& dom, Beta beta,
                                          EmptyConvention conv = EmptyConvention::OneOnEmpty);

// Draws one dataset of size n for the given trial seed and returns the fixed
// classifier's predictions together with the true labels.
using TrialSampler =
    std::function<std::pair<Prediction, LabelVector>(std::size_t n, std::uint64_t seed)>;

// Empirical frequency check of the deviation bound: draws `trials` datasets
// of size inp.n (per-trial seeds are seed + trial index), compares each
// empirical F to the population value f_true, and returns the fraction of
// trials whose deviation exceeds lemma2_bound(inp).  Requires the bound to be
// applicable.
double monte_carlo_bound_check(const TrialSampler& sampler, double f_true,
                               const BoundInputs& inp, std::size_t trials,
                               std::uint64_t seed,
                               EmptyConvention conv = EmptyConvention::OneOnEmpty);

}  // namespace fmeasure
