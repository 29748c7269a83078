#include "fmeasure/types.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace fmeasure {

RationalBetaSq RationalBetaSq::make(std::uint64_t q, std::uint64_t r) {
  if (q == 0 || r == 0) {
    throw std::invalid_argument("RationalBetaSq: q and r must be positive");
  }
  std::uint64_t g = std::gcd(q, r);
  return RationalBetaSq{q / g, r / g};
}

namespace {

// Continued-fraction convergents of `value`; returns the last convergent
// whose denominator stays within the cap.
RationalBetaSq best_convergent(double value, std::uint64_t max_denominator) {
  double x = value;
  std::uint64_t h_prev = 1, h_prev2 = 0;  // numerators
  std::uint64_t k_prev = 0, k_prev2 = 1;  // denominators
  for (int iter = 0; iter < 64; ++iter) {
    double af = std::floor(x);
    if (af > static_cast<double>(std::numeric_limits<std::int64_t>::max())) break;
    auto a = static_cast<std::uint64_t>(af);
    // Overflow / cap guard before committing the next convergent.
    if (k_prev != 0 && a > (max_denominator - k_prev2) / k_prev) break;
    std::uint64_t h = a * h_prev + h_prev2;
    std::uint64_t k = a * k_prev + k_prev2;
    if (k > max_denominator || k == 0) break;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    double frac = x - af;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k_prev == 0 || h_prev == 0) {
    // value < 1/max_denominator or similar degenerate case
    return RationalBetaSq{h_prev == 0 ? 1 : h_prev, 1};
  }
  return RationalBetaSq::make(h_prev, k_prev);
}

}  // namespace

RationalBetaSq best_rational_approx(double value, std::uint64_t max_denominator) {
  if (!(value > 0) || !std::isfinite(value)) {
    throw std::invalid_argument("best_rational_approx: value must be positive and finite");
  }
  return best_convergent(value, max_denominator);
}

std::optional<RationalBetaSq> recognize_rational(double value,
                                                 std::uint64_t max_denominator,
                                                 double rel_tol) {
  if (!(value > 0) || !std::isfinite(value)) return std::nullopt;
  RationalBetaSq cand = best_convergent(value, max_denominator);
  double err = std::abs(cand.value() - value);
  if (err <= rel_tol * std::max(1.0, value)) return cand;
  return std::nullopt;
}

Beta::Beta(double value) : value_(value) {
  if (!std::isfinite(value_) || !(value_ > 0.0)) {
    throw std::invalid_argument("beta must lie in (0, inf)");
  }
  rational_sq_ = recognize_rational(value_ * value_, 1000, 1e-12);
}

Beta Beta::from_ratio(std::uint64_t num, std::uint64_t den) {
  if (num == 0 || den == 0) {
    throw std::invalid_argument("beta ratio: numerator and denominator must be positive");
  }
  if (num > (1ULL << 26) || den > (1ULL << 26)) {
    throw std::invalid_argument("beta ratio: numerator and denominator too large");
  }
  double value = static_cast<double>(num) / static_cast<double>(den);
  // beta^2 = num^2 / den^2, reduced.
  RationalBetaSq sq = RationalBetaSq::make(num * num, den * den);
  return Beta(value, sq);
}

Beta parse_beta(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    char* end = nullptr;
    unsigned long long num = std::strtoull(text.c_str(), &end, 10);
    if (end != text.c_str() + slash) {
      throw std::invalid_argument("beta: malformed ratio '" + text + "'");
    }
    const char* den_begin = text.c_str() + slash + 1;
    unsigned long long den = std::strtoull(den_begin, &end, 10);
    if (*end != '\0' || end == den_begin) {
      throw std::invalid_argument("beta: malformed ratio '" + text + "'");
    }
    return Beta::from_ratio(num, den);
  }
  char* end = nullptr;
  double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw std::invalid_argument("beta: malformed value '" + text + "'");
  }
  return Beta(value);
}

void validate_labels(const LabelVector& y, const char* what) {
  for (auto v : y) {
    if (v > 1) {
      throw std::invalid_argument(std::string(what) + " must be 0 or 1");
    }
  }
}

void validate_probabilities(const ProbVector& p) {
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("probabilities must lie in [0,1]");
    }
  }
}

}  // namespace fmeasure
