#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmeasure {

// Binary label sequences: 0 = irrelevant, 1 = relevant.  A Prediction has the
// same shape as a LabelVector; the distinction is purely semantic (s vs y).
using LabelVector = std::vector<std::uint8_t>;
using Prediction = std::vector<std::uint8_t>;

// Per-instance positive-class probabilities, each in [0,1].
using ProbVector = std::vector<double>;

// Value of the F-measure when no positives are predicted and none exist
// (the defining formula is 0/0 in that case).
enum class EmptyConvention {
  OneOnEmpty,   // a vacuously correct prediction scores 1
  ZeroOnEmpty,  // the degenerate case scores 0
};

// Thrown for malformed or inconsistent input files / data.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a numerical procedure fails to make progress (e.g. a line
// search that cannot find a finite, decreasing step).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// beta^2 as a reduced fraction q/r.  Drives the index arithmetic of the
// quadratic-time expected-F algorithm.
struct RationalBetaSq {
  std::uint64_t q = 1;  // numerator
  std::uint64_t r = 1;  // denominator, gcd(q, r) == 1

  // Reduces q/r and validates q, r >= 1.
  static RationalBetaSq make(std::uint64_t q, std::uint64_t r);

  double value() const { return static_cast<double>(q) / static_cast<double>(r); }
};

// Best rational approximation p/q of `value` with q <= max_denominator,
// found by the continued-fraction expansion.
RationalBetaSq best_rational_approx(double value, std::uint64_t max_denominator);

// Recognizes `value` as a small fraction: returns the best approximation with
// denominator <= max_denominator if it matches to within rel_tol, else empty.
std::optional<RationalBetaSq> recognize_rational(double value,
                                                 std::uint64_t max_denominator,
                                                 double rel_tol);

// The F-measure parameter, constrained to (0, inf).  When beta is given as an
// exact ratio, or its square is recognizable as a small fraction, the exact
// rational beta^2 is kept alongside the double so callers can route to the
// rational-only fast path.
class Beta {
 public:
  explicit Beta(double value);
  static Beta from_ratio(std::uint64_t num, std::uint64_t den);

  double value() const { return value_; }
  double squared() const { return value_ * value_; }
  const std::optional<RationalBetaSq>& rational_squared() const { return rational_sq_; }

 private:
  Beta(double value, std::optional<RationalBetaSq> sq)
      : value_(value), rational_sq_(sq) {}
  double value_;
  std::optional<RationalBetaSq> rational_sq_;
};

// Parses "1", "0.5" or a ratio "q/r" (meaning beta = q/r).
Beta parse_beta(const std::string& text);

// Dense row-major matrix of doubles.  Rows are instances, columns features.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }
  std::span<const double> row_span(std::size_t i) const { return {row(i), cols}; }
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Throws std::invalid_argument unless every element is 0 or 1.
void validate_labels(const LabelVector& y, const char* what = "labels");

// Throws std::invalid_argument unless every element lies in [0,1].
void validate_probabilities(const ProbVector& p);

}  // namespace fmeasure
