#include "fmeasure/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace fmeasure {

namespace {

void validate_inputs(const BoundInputs& inp) {
  if (inp.n < 1) throw std::invalid_argument("bound inputs: n must be >= 1");
  if (!(inp.eta > 0.0 && inp.eta < 1.0)) {
    throw std::invalid_argument("bound inputs: eta must lie in (0,1)");
  }
  if (!(inp.pi1 > 0.0 && inp.pi1 <= 1.0)) {
    throw std::invalid_argument("bound inputs: pi1 must lie in (0,1]");
  }
}

}  // namespace

std::optional<double> lemma2_bound(const BoundInputs& inp) {
  validate_inputs(inp);
  const double b2 = inp.beta.squared();
  const double r = std::sqrt(std::log(6.0 / inp.eta) / (2.0 * static_cast<double>(inp.n)));
  const double margin = b2 * inp.pi1 / (2.0 * (1.0 + b2));
  if (r >= margin) return std::nullopt;
  return 3.0 * (1.0 + b2) * r / (b2 * inp.pi1 - 2.0 * (1.0 + b2) * r);
}

std::optional<double> theorem3_bound(const BoundInputs& inp) {
  validate_inputs(inp);
  if (inp.vc_dim < 1) throw std::invalid_argument("bound inputs: d must be >= 1");
  if (inp.vc_dim > inp.n) throw std::invalid_argument("bound inputs: d must be <= n");
  const double b2 = inp.beta.squared();
  const double n = static_cast<double>(inp.n);
  const double d = static_cast<double>(inp.vc_dim);
  const double e = 2.71828182845904523536;
  const double rbar = std::sqrt((std::log(12.0 / inp.eta) + d * std::log(2.0 * e * n / d)) / n);
  const double margin = b2 * inp.pi1 / (2.0 * (1.0 + b2));
  if (rbar >= margin) return std::nullopt;
  return 6.0 * (1.0 + b2) * rbar / (b2 * inp.pi1 - 2.0 * (1.0 + b2) * rbar);
}

BruteForceResult finite_domain_bruteforce(const FiniteDomain& dom, Beta beta,
                                          EmptyConvention conv) {
  const std::size_t m = dom.size();
  if (m > 20) throw std::invalid_argument("finite_domain_bruteforce: at most 20 atoms");
  double mass_sum = 0.0;
  for (const auto& atom : dom) {
    if (!(atom.mass > 0.0)) throw std::invalid_argument("finite domain: masses must be positive");
    if (!(atom.eta1 >= 0.0 && atom.eta1 <= 1.0)) {
      throw std::invalid_argument("finite domain: eta1 must lie in [0,1]");
    }
    mass_sum += atom.mass;
  }
  if (std::abs(mass_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("finite domain: masses must sum to 1");
  }

  double pi1 = 0.0;
  for (const auto& atom : dom) pi1 += atom.mass * atom.eta1;
  pi1 = std::min(pi1, 1.0);

  BruteForceResult best;
  best.best_f = -1.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t total = 1u << m;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    double p11 = 0.0, p01 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        p11 += dom[i].mass * dom[i].eta1;
        p01 += dom[i].mass * (1.0 - dom[i].eta1);
      }
    }
    const double f = population_f(PopulationRates{std::min(p11, pi1), p01, pi1}, beta, conv);
    if (f > best.best_f) {
      best.best_f = f;
      best_mask = mask;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (best_mask & (1u << i)) best.best_set.push_back(i);
  }
  return best;
}

double monte_carlo_bound_check(const TrialSampler& sampler, double f_true,
                               const BoundInputs& inp, std::size_t trials,
                               std::uint64_t seed, EmptyConvention conv) {
  std::optional<double> bound = lemma2_bound(inp);
  if (!bound.has_value()) {
    throw std::invalid_argument("monte_carlo_bound_check: bound not applicable for these inputs");
  }
  if (trials == 0) throw std::invalid_argument("monte_carlo_bound_check: trials must be >= 1");
  std::size_t violations = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto [s, y] = sampler(inp.n, seed + t);
    const double f_emp = evaluate_binary(s, y, inp.beta, conv).f;
    if (std::abs(f_emp - f_true) > *bound) ++violations;
  }
  return static_cast<double>(violations) / static_cast<double>(trials);
}

}  // namespace fmeasure
