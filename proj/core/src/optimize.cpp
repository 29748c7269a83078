#include "fmeasure/optimize.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "fmeasure/types.hpp"

namespace fmeasure {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

struct HistoryPair {
  std::vector<double> s;  // x_{k+1} - x_k
  std::vector<double> y;  // g_{k+1} - g_k
  double rho = 0.0;       // 1 / (y . s)
};

}  // namespace

MinimizeResult minimize(const ValueGrad& fg, std::vector<double> x0,
                        const MinimizeOptions& opts) {
  const std::size_t dim = x0.size();
  std::vector<double> x = std::move(x0);
  std::vector<double> g(dim, 0.0), g_new(dim, 0.0), x_new(dim, 0.0), d(dim, 0.0);

  double f = fg(x, g);
  if (!std::isfinite(f)) {
    throw NumericalError("minimize: objective is not finite at the initial point");
  }
  const double stop = opts.tolerance * std::max(1.0, norm(g));

  std::deque<HistoryPair> history;
  std::vector<double> alpha;

  MinimizeResult res;
  std::size_t iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const double gn = norm(g);
    if (gn <= stop) break;

    // Two-loop recursion for d = -H g.
    d = g;
    alpha.assign(history.size(), 0.0);
    for (std::size_t h = history.size(); h-- > 0;) {
      const HistoryPair& hp = history[h];
      alpha[h] = hp.rho * dot(hp.s, d);
      for (std::size_t i = 0; i < dim; ++i) d[i] -= alpha[h] * hp.y[i];
    }
    if (!history.empty()) {
      const HistoryPair& last = history.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& v : d) v *= gamma;
    }
    for (std::size_t h = 0; h < history.size(); ++h) {
      const HistoryPair& hp = history[h];
      const double beta = hp.rho * dot(hp.y, d);
      for (std::size_t i = 0; i < dim; ++i) d[i] += (alpha[h] - beta) * hp.s[i];
    }
    for (double& v : d) v = -v;

    double dg = dot(d, g);
    if (!(dg < 0.0) || !std::isfinite(dg)) {
      // Not a descent direction (degenerate curvature); restart from steepest
      // descent.
      history.clear();
      for (std::size_t i = 0; i < dim; ++i) d[i] = -g[i];
      dg = -gn * gn;
    }

    // Armijo backtracking from a unit step.
    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    while (step >= 1e-20) {
      for (std::size_t i = 0; i < dim; ++i) x_new[i] = x[i] + step * d[i];
      f_new = fg(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * dg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      throw NumericalError("minimize: line search failed to make progress");
    }

    HistoryPair hp;
    hp.s.resize(dim);
    hp.y.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      hp.s[i] = x_new[i] - x[i];
      hp.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(hp.s, hp.y);
    if (sy > 1e-12 * norm(hp.s) * norm(hp.y)) {
      hp.rho = 1.0 / sy;
      history.push_back(std::move(hp));
      if (history.size() > opts.history) history.pop_front();
    }

    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
  }

  res.x = std::move(x);
  res.value = f;
  res.gradient_norm = norm(g);
  res.iterations = iter;
  res.converged = res.gradient_norm <= stop;
  return res;
}

}  // namespace fmeasure
