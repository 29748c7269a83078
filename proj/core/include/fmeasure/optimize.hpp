#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fmeasure {

// Evaluates the objective at x and writes the gradient into grad (same
// length as x).  Returns the objective value.
using ValueGrad = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct MinimizeOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-6;   // stop when ||g|| <= tolerance * max(1, ||g0||)
  std::size_t history = 10;  // L-BFGS memory
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Deterministic L-BFGS with Armijo backtracking.  Non-finite trial values
// shrink the step; a line search that cannot make progress at all throws
// NumericalError.  Hitting max_iterations is not an error (converged=false).
MinimizeResult minimize(const ValueGrad& fg, std::vector<double> x0,
                        const MinimizeOptions& opts = {});

}  // namespace fmeasure
