#include "fmeasure/dta.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "fmeasure/poisson_binomial.hpp"

namespace fmeasure {

namespace {

// Compensated (Kahan) accumulator; keeps the n=20k table sums well below the
// cross-algorithm tolerance.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void require_sorted_descending(const ProbVector& p, const char* who) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] < p[i + 1]) {
      throw std::invalid_argument(std::string(who) + ": probabilities must be sorted in descending order");
    }
  }
}

double empty_prediction_value(const ProbVector& p, EmptyConvention conv) {
  if (conv == EmptyConvention::ZeroOnEmpty) return 0.0;
  double prod = 1.0;
  for (double pi : p) prod *= (1.0 - pi);
  return prod;  // P(no positives at all)
}

// Prefix tables beyond this size switch to deflation under CoeffStrategy::Auto
// (the table is O(n^2) doubles).
constexpr std::size_t kAutoPrefixTableLimit = 4096;

// Rational beta^2 with q+r beyond this gets the cubic path instead; the
// quadratic algorithm's S array is (q+r)*n long.
constexpr std::uint64_t kAutoRationalLimit = 256;

std::size_t argmax_small_k(const std::vector<double>& f) {
  // Ties within 1e-12 break toward smaller k, so exact rational ties that
  // round differently still resolve deterministically.
  std::size_t best_k = 0;
  double best = f[0];
  for (std::size_t k = 1; k < f.size(); ++k) {
    if (f[k] > best + 1e-12) {
      best = f[k];
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace

double expected_f_exact(const ProbVector& p, const Prediction& s, Beta beta,
                        EmptyConvention conv) {
  if (p.size() != s.size()) {
    throw std::invalid_argument("expected_f_exact: probability/prediction length mismatch");
  }
  if (p.size() > 25) {
    throw std::invalid_argument("expected_f_exact: enumeration limited to n <= 25");
  }
  validate_probabilities(p);
  const std::size_t n = p.size();
  const double b2 = beta.squared();
  std::uint32_t s_bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] != 0) s_bits |= (1u << i);
  }
  const double sum_s = static_cast<double>(std::popcount(s_bits));
  Kahan acc;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t y = 0; y < total; ++y) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prob *= (y >> i) & 1u ? p[i] : 1.0 - p[i];
    }
    const auto yb = static_cast<std::uint32_t>(y);
    const double tp = static_cast<double>(std::popcount(yb & s_bits));
    const double sum_y = static_cast<double>(std::popcount(yb));
    const double den = b2 * sum_y + sum_s;
    double fval;
    if (den == 0.0) {
      fval = conv == EmptyConvention::OneOnEmpty ? 1.0 : 0.0;
    } else {
      fval = (1.0 + b2) * tp / den;
    }
    acc.add(prob * fval);
  }
  return acc.sum;
}

ExpectedFTable expected_f_table_cubic(const ProbVector& p, Beta beta,
                                      EmptyConvention conv) {
  validate_probabilities(p);
  require_sorted_descending(p, "expected_f_table_cubic");
  const std::size_t n = p.size();
  ExpectedFTable out;
  out.f.assign(n + 1, 0.0);
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  out.f[0] = empty_prediction_value(p, conv);
  if (n == 0) return out;

  const double b2 = beta.squared();
  PBPrefixTable prefix = pb_prefix_table(p);
  ProbVector reversed(p.rbegin(), p.rend());
  PBPrefixTable suffix = pb_prefix_table(reversed);  // rows[m] covers the last m

  for (std::size_t k = 1; k <= n; ++k) {
    const PBCoefficients& pre = prefix.rows[k];
    const PBCoefficients& suf = suffix.rows[n - k];
    Kahan acc;
    for (std::size_t k1 = 1; k1 <= k; ++k1) {
      const double w1 = (1.0 + b2) * static_cast<double>(k1) * pre[k1];
      for (std::size_t k2 = 0; k2 <= n - k; ++k2) {
        acc.add(w1 * suf[k2] /
                (static_cast<double>(k) + b2 * static_cast<double>(k1 + k2)));
      }
    }
    out.f[k] = acc.sum;
  }
  return out;
}

// Expected-F table in O((q+r) n^2) time for beta^2 = q/r.
//
// Walking k downward, two arrays are maintained:
//   C[k1] = P(exactly k1 positives among the first k instances), and
//   S[i]  = s(k, i/q), where s(k, a) = sum_k2 P(k2 positives after k) / (a + k2).
// The expected F at cut k is then
//   f[k] = sum_{k1} (1 + r/q) k1 C[k1] S[rk + q k1],
// the base case is s(n, a) = 1/a, and the suffix recurrence
//   s(k-1, a) = p_k s(k, a+1) + (1-p_k) s(k, a)
// updates S in ascending i (reading S[i+q] before it is overwritten).
ExpectedFTable expected_f_table_quadratic(const ProbVector& p,
                                          RationalBetaSq betasq,
                                          EmptyConvention conv,
                                          const DtaOptions& opts) {
  validate_probabilities(p);
  require_sorted_descending(p, "expected_f_table_quadratic");
  const std::size_t n = p.size();
  const std::uint64_t q = betasq.q;
  const std::uint64_t r = betasq.r;

  ExpectedFTable out;
  out.f.assign(n + 1, 0.0);
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  out.f[0] = empty_prediction_value(p, conv);
  if (n == 0) return out;

  const std::uint64_t s_len = (q + r) * static_cast<std::uint64_t>(n);
  if (s_len > 200'000'000ull) {
    throw std::invalid_argument("expected_f_table_quadratic: (q+r)*n too large; reduce the beta^2 fraction");
  }
  std::vector<double> S(s_len + 1, 0.0);
  for (std::uint64_t i = 1; i <= s_len; ++i) {
    S[i] = static_cast<double>(q) / static_cast<double>(i);
  }

  const bool use_table =
      opts.strategy == CoeffStrategy::PrefixTable ||
      (opts.strategy == CoeffStrategy::Auto && n <= kAutoPrefixTableLimit);
  PBPrefixTable table;
  PBCoefficients coeff;
  if (use_table) {
    table = pb_prefix_table(p);
  } else {
    coeff = pb_coefficients(p);
  }

  const double weight = 1.0 + static_cast<double>(r) / static_cast<double>(q);
  for (std::size_t k = n; k >= 1; --k) {
    const PBCoefficients& c = use_table ? table.rows[k] : coeff;
    Kahan acc;
    for (std::size_t k1 = 1; k1 <= k; ++k1) {
      acc.add(weight * static_cast<double>(k1) * c[k1] * S[r * k + q * k1]);
    }
    out.f[k] = acc.sum;

    const double pk = p[k - 1];
    if (!use_table && k > 1) {
      DeflateResult deflated = pb_deflate(coeff, pk);
      if (deflated.stable) {
        coeff = std::move(deflated.c);
      } else {
        // Instability guard tripped: recompute this prefix product directly.
        coeff = pb_coefficients(ProbVector(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k - 1)));
      }
    }

    const std::uint64_t upper = (q + r) * static_cast<std::uint64_t>(k - 1);
    const double pk1 = 1.0 - pk;
    for (std::uint64_t i = 1; i <= upper; ++i) {
      S[i] = pk1 * S[i] + pk * S[i + q];
    }
  }
  return out;
}

OptimalPrediction optimal_prediction(const ProbVector& p, Beta beta,
                                     EmptyConvention conv,
                                     const DtaOptions& opts) {
  validate_probabilities(p);
  const std::size_t n = p.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&p](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  ProbVector sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = p[order[i]];

  std::optional<RationalBetaSq> rat = beta.rational_squared();
  if (!rat && opts.approximate_irrational_betasq) {
    rat = best_rational_approx(beta.squared(), 100);
  }

  ExpectedFTable table;
  if (rat && rat->q + rat->r <= kAutoRationalLimit) {
    table = expected_f_table_quadratic(sorted, *rat, conv, opts);
  } else {
    table = expected_f_table_cubic(sorted, beta, conv);
  }
  table.order = order;

  OptimalPrediction out;
  out.k_star = argmax_small_k(table.f);
  out.expected_f = table.f[out.k_star];
  out.mask.assign(n, 0);
  for (std::size_t i = 0; i < out.k_star; ++i) out.mask[order[i]] = 1;
  return out;
}

}  // namespace fmeasure
