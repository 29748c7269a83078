#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fmeasure/eum.hpp"
#include "fmeasure/metrics.hpp"
#include "fmeasure/types.hpp"

namespace fmeasure {

// Two-class isotropic Gaussian mixture on D dimensions:
//   Y ~ Bernoulli(pi1),  X | Y ~ N(mu_Y, I_D),
//   mu_1 = (S + O) 1 / sqrt(4D),  mu_0 = -(S - O) 1 / sqrt(4D),
// so S is the distance between the centers and O shifts both away from the
// origin along the diagonal.
struct GaussianMixtureSpec {
  std::size_t dim = 10;      // D
  double separation = 4.0;   // S >= 0
  double offset = 0.0;       // O >= 0
  double pi1 = 0.5;          // positive-class prior, in (0,1)
};

void validate_spec(const GaussianMixtureSpec& spec);

std::vector<double> mean_positive(const GaussianMixtureSpec& spec);
std::vector<double> mean_negative(const GaussianMixtureSpec& spec);

// Projection onto the unit diagonal u = 1/sqrt(D).  The class-conditional
// projections are unit-variance Gaussians with means (S+O)/2 and (O-S)/2.
double project_unit_diagonal(const GaussianMixtureSpec& spec, std::span<const double> x);

// Class-conditional projection means (m0, m1), with m1 - m0 = S.
std::pair<double, double> projection_means(const GaussianMixtureSpec& spec);

struct LabeledSample {
  Matrix xs;
  LabelVector ys;
  std::uint64_t seed = 0;
};

// n i.i.d. draws; deterministic per (spec, n, seed).
LabeledSample sample(const GaussianMixtureSpec& spec, std::size_t n, std::uint64_t seed);

// Rejection-samples n instances whose true posterior P(1|x) is below the cap
// (covariate-shift test sets).
LabeledSample sample_posterior_filtered(const GaussianMixtureSpec& spec, std::size_t n,
                                        double max_posterior, std::uint64_t seed);

// Exact posterior P(Y=1 | x) = sigma(w.x + b) with w = (S/sqrt(D)) 1 and
// b = ln(pi1/(1-pi1)) - S*O/2.
double true_posterior(const GaussianMixtureSpec& spec, std::span<const double> x);

// The same posterior as a LinearModel over R1 features (coordinates plus a
// constant), optionally with an assumed prior in place of the true one.
LinearModel posterior_as_linear_model(const GaussianMixtureSpec& spec, double assumed_pi1);

// Population rates of the classifier that thresholds the diagonal projection
// at t: p11 = pi1 (1 - Phi(t - m1)), p01 = (1-pi1)(1 - Phi(t - m0)).
PopulationRates population_rates_at_threshold(const GaussianMixtureSpec& spec, double t);

struct OptimalOperatingPoint {
  double threshold = 0.0;            // t* on the diagonal projection
  double posterior_threshold = 0.0;  // the same point as a posterior cutoff
  double f_star = 0.0;               // the population F it achieves
};

// Best achievable population F over all classifiers.  The problem reduces to
// one dimension along the diagonal (the posterior is monotone in it), where a
// golden-section search over [m0-10, m1+10] maximizes eq-2-style F to 1e-8 in
// t.  Requires S > 0; the result depends only on S and pi1.
OptimalOperatingPoint theoretical_optimal_f(const GaussianMixtureSpec& spec, Beta beta);

enum class FeatureMapKind {
  Identity,  // dataset features as given
  R0,        // the coordinates only
  R1,        // R0 plus a constant feature fixed at 1
  R2,        // R1 plus all degree-two monomials x_i x_j, i <= j
};

std::size_t feature_map_dim(FeatureMapKind kind, std::size_t input_dim);
std::vector<double> featurize(FeatureMapKind kind, std::span<const double> x);
Matrix featurize(FeatureMapKind kind, const Matrix& xs);

// Mean per-instance KL divergence from the true posterior to the model's,
//   (1/n) sum_i [P_i ln(P_i/Q_i) + (1-P_i) ln((1-P_i)/(1-Q_i))],
// with Q clamped to [1e-12, 1-1e-12] and 0 ln 0 = 0.
double empirical_conditional_kl(const GaussianMixtureSpec& spec, const LinearModel& model,
                                FeatureMapKind map, const Matrix& xs);

double normal_cdf(double z);

}  // namespace fmeasure
