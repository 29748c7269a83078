#include "fmeasure/gauss_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fmeasure/random.hpp"

namespace fmeasure {

namespace {

constexpr double kGoldenRatioConjugate = 0.61803398874989484820;

double prior_log_odds(const GaussianMixtureSpec& spec) {
  return std::log(spec.pi1 / (1.0 - spec.pi1));
}

// Intercept of the exact posterior: ln(pi1/(1-pi1)) - S*O/2.
double posterior_intercept(const GaussianMixtureSpec& spec, double pi1) {
  return std::log(pi1 / (1.0 - pi1)) - spec.separation * spec.offset / 2.0;
}

}  // namespace

void validate_spec(const GaussianMixtureSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("mixture spec: dim must be >= 1");
  if (!(spec.separation >= 0.0) || !std::isfinite(spec.separation)) {
    throw std::invalid_argument("mixture spec: separation must be >= 0");
  }
  if (!(spec.offset >= 0.0) || !std::isfinite(spec.offset)) {
    throw std::invalid_argument("mixture spec: offset must be >= 0");
  }
  if (!(spec.pi1 > 0.0 && spec.pi1 < 1.0)) {
    throw std::invalid_argument("mixture spec: pi1 must lie in (0,1)");
  }
}

std::vector<double> mean_positive(const GaussianMixtureSpec& spec) {
  const double c = (spec.separation + spec.offset) / std::sqrt(4.0 * static_cast<double>(spec.dim));
  return std::vector<double>(spec.dim, c);
}

std::vector<double> mean_negative(const GaussianMixtureSpec& spec) {
  const double c = -(spec.separation - spec.offset) / std::sqrt(4.0 * static_cast<double>(spec.dim));
  return std::vector<double>(spec.dim, c);
}

double project_unit_diagonal(const GaussianMixtureSpec& spec, std::span<const double> x) {
  if (x.size() != spec.dim) throw std::invalid_argument("projection: dimension mismatch");
  double s = 0.0;
  for (double v : x) s += v;
  return s / std::sqrt(static_cast<double>(spec.dim));
}

std::pair<double, double> projection_means(const GaussianMixtureSpec& spec) {
  const double m0 = (spec.offset - spec.separation) / 2.0;
  const double m1 = (spec.offset + spec.separation) / 2.0;
  return {m0, m1};
}

LabeledSample sample(const GaussianMixtureSpec& spec, std::size_t n, std::uint64_t seed) {
  validate_spec(spec);
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  LabeledSample out;
  out.seed = seed;
  out.xs = Matrix(n, spec.dim);
  out.ys.resize(n);
  const std::vector<double> mu1 = mean_positive(spec);
  const std::vector<double> mu0 = mean_negative(spec);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = rng.bernoulli(spec.pi1);
    out.ys[i] = positive ? 1 : 0;
    const std::vector<double>& mu = positive ? mu1 : mu0;
    double* row = out.xs.row(i);
    for (std::size_t j = 0; j < spec.dim; ++j) row[j] = mu[j] + rng.normal();
  }
  return out;
}

LabeledSample sample_posterior_filtered(const GaussianMixtureSpec& spec, std::size_t n,
                                        double max_posterior, std::uint64_t seed) {
  validate_spec(spec);
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  if (!(max_posterior > 0.0 && max_posterior <= 1.0)) {
    throw std::invalid_argument("sample: max_posterior must lie in (0,1]");
  }
  LabeledSample out;
  out.seed = seed;
  out.xs = Matrix(n, spec.dim);
  out.ys.resize(n);
  const std::vector<double> mu1 = mean_positive(spec);
  const std::vector<double> mu0 = mean_negative(spec);
  Rng rng(seed);
  std::vector<double> x(spec.dim);
  std::size_t kept = 0;
  const std::size_t max_attempts = 10000 * n + 1000;
  for (std::size_t attempt = 0; attempt < max_attempts && kept < n; ++attempt) {
    const bool positive = rng.bernoulli(spec.pi1);
    const std::vector<double>& mu = positive ? mu1 : mu0;
    for (std::size_t j = 0; j < spec.dim; ++j) x[j] = mu[j] + rng.normal();
    if (true_posterior(spec, x) < max_posterior) {
      out.ys[kept] = positive ? 1 : 0;
      std::copy(x.begin(), x.end(), out.xs.row(kept));
      ++kept;
    }
  }
  if (kept < n) {
    throw NumericalError("sample_posterior_filtered: acceptance rate too low");
  }
  return out;
}

double true_posterior(const GaussianMixtureSpec& spec, std::span<const double> x) {
  if (x.size() != spec.dim) throw std::invalid_argument("true_posterior: dimension mismatch");
  const double w = spec.separation / std::sqrt(static_cast<double>(spec.dim));
  double z = 0.0;
  for (double v : x) z += w * v;
  z += posterior_intercept(spec, spec.pi1);
  return 1.0 / (1.0 + std::exp(-z));
}

LinearModel posterior_as_linear_model(const GaussianMixtureSpec& spec, double assumed_pi1) {
  if (!(assumed_pi1 > 0.0 && assumed_pi1 < 1.0)) {
    throw std::invalid_argument("posterior model: assumed pi1 must lie in (0,1)");
  }
  const double w = spec.separation / std::sqrt(static_cast<double>(spec.dim));
  LinearModel model;
  model.weights.assign(spec.dim, w);
  model.weights.push_back(posterior_intercept(spec, assumed_pi1));
  return model;
}

PopulationRates population_rates_at_threshold(const GaussianMixtureSpec& spec, double t) {
  const auto [m0, m1] = projection_means(spec);
  PopulationRates rates;
  rates.pi1 = spec.pi1;
  rates.p11 = spec.pi1 * (1.0 - normal_cdf(t - m1));
  rates.p01 = (1.0 - spec.pi1) * (1.0 - normal_cdf(t - m0));
  return rates;
}

OptimalOperatingPoint theoretical_optimal_f(const GaussianMixtureSpec& spec, Beta beta) {
  validate_spec(spec);
  if (!(spec.separation > 0.0)) {
    throw std::invalid_argument("theoretical_optimal_f: separation must be positive");
  }
  const auto [m0, m1] = projection_means(spec);
  auto f_of = [&](double t) {
    return population_f(population_rates_at_threshold(spec, t), beta);
  };

  // Golden-section search for the maximizing projection threshold.
  double a = m0 - 10.0;
  double b = m1 + 10.0;
  double x1 = b - kGoldenRatioConjugate * (b - a);
  double x2 = a + kGoldenRatioConjugate * (b - a);
  double f1 = f_of(x1);
  double f2 = f_of(x2);
  while (b - a > 1e-8) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatioConjugate * (b - a);
      f2 = f_of(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatioConjugate * (b - a);
      f1 = f_of(x1);
    }
  }

  OptimalOperatingPoint out;
  out.threshold = 0.5 * (a + b);
  out.f_star = f_of(out.threshold);
  // The posterior is monotone in the projection, so t* maps to a cutoff on it.
  const double z = spec.separation * out.threshold + posterior_intercept(spec, spec.pi1);
  out.posterior_threshold = 1.0 / (1.0 + std::exp(-z));
  return out;
}

std::size_t feature_map_dim(FeatureMapKind kind, std::size_t input_dim) {
  switch (kind) {
    case FeatureMapKind::Identity:
    case FeatureMapKind::R0:
      return input_dim;
    case FeatureMapKind::R1:
      return input_dim + 1;
    case FeatureMapKind::R2:
      return input_dim + 1 + input_dim * (input_dim + 1) / 2;
  }
  throw std::invalid_argument("feature_map_dim: unknown map");
}

std::vector<double> featurize(FeatureMapKind kind, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(feature_map_dim(kind, x.size()));
  out.assign(x.begin(), x.end());
  if (kind == FeatureMapKind::Identity || kind == FeatureMapKind::R0) return out;
  out.push_back(1.0);
  if (kind == FeatureMapKind::R1) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i; j < x.size(); ++j) {
      out.push_back(x[i] * x[j]);
    }
  }
  return out;
}

Matrix featurize(FeatureMapKind kind, const Matrix& xs) {
  Matrix out(xs.rows, feature_map_dim(kind, xs.cols));
  for (std::size_t i = 0; i < xs.rows; ++i) {
    std::vector<double> row = featurize(kind, xs.row_span(i));
    std::copy(row.begin(), row.end(), out.row(i));
  }
  return out;
}

double empirical_conditional_kl(const GaussianMixtureSpec& spec, const LinearModel& model,
                                FeatureMapKind map, const Matrix& xs) {
  if (xs.rows == 0) throw std::invalid_argument("empirical_conditional_kl: empty sample");
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.rows; ++i) {
    const double p = true_posterior(spec, xs.row_span(i));
    std::vector<double> feats = featurize(map, xs.row_span(i));
    double q = predict_proba(model, feats);
    q = std::clamp(q, 1e-12, 1.0 - 1e-12);
    double term = 0.0;
    if (p > 0.0) term += p * std::log(p / q);
    if (p < 1.0) term += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    sum += term;
  }
  return sum / static_cast<double>(xs.rows);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace fmeasure
