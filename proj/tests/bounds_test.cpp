#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fmeasure/bounds.hpp"
#include "fmeasure/random.hpp"
#include "support.hpp"

using namespace fmeasure;
using doctest::Approx;

namespace {

BoundInputs make_inputs(std::size_t n, double eta, double beta, double pi1,
                        std::size_t d = 1) {
  BoundInputs inp;
  inp.n = n;
  inp.eta = eta;
  inp.beta = Beta(beta);
  inp.pi1 = pi1;
  inp.vc_dim = d;
  return inp;
}

// Best F over classifiers that take an upward-closed set in eta1 order
// (threshold classifiers on the conditional probability), at tie-group
// granularity.
double best_threshold_f(const FiniteDomain& dom, Beta beta) {
  std::vector<std::size_t> order(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dom[a].eta1 > dom[b].eta1;
  });
  double pi1 = 0.0;
  for (const auto& atom : dom) pi1 += atom.mass * atom.eta1;
  double best = population_f({0.0, 0.0, pi1}, beta);
  double p11 = 0.0, p01 = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    const double v = dom[order[i]].eta1;
    while (j < order.size() && dom[order[j]].eta1 == v) {
      p11 += dom[order[j]].mass * dom[order[j]].eta1;
      p01 += dom[order[j]].mass * (1.0 - dom[order[j]].eta1);
      ++j;
    }
    best = std::max(best, population_f({std::min(p11, pi1), p01, pi1}, beta));
    i = j;
  }
  return best;
}

}  // namespace

TEST_CASE("lemma2 bound spot values") {
  const auto b = lemma2_bound(make_inputs(10000, 0.05, 1.0, 0.5));
  REQUIRE(b.has_value());
  CHECK(*b == Approx(0.21189).epsilon(1e-3));
  CHECK(std::abs(*b - 0.21189) < 1e-4);

  CHECK(!lemma2_bound(make_inputs(100, 0.05, 1.0, 0.5)).has_value());
}

TEST_CASE("lemma2 bound vanishes with n") {
  double prev = 1e100;
  for (std::size_t n : {1000ul, 10000ul, 100000ul, 1000000ul, 100000000ul}) {
    const auto b = lemma2_bound(make_inputs(n, 0.05, 1.0, 0.5));
    if (!b.has_value()) continue;
    CHECK(*b < prev);
    prev = *b;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("theorem3 bound spot value and monotonicity") {
  const auto b = theorem3_bound(make_inputs(1000000, 0.05, 1.0, 0.5, 1));
  REQUIRE(b.has_value());
  CHECK(std::abs(*b - 0.11415) < 1e-4);

  const auto b10 = theorem3_bound(make_inputs(1000000, 0.05, 1.0, 0.5, 10));
  REQUIRE(b10.has_value());
  CHECK(*b10 > *b);

  // Rare classes push the bound out of applicability.
  CHECK(!theorem3_bound(make_inputs(1000000, 0.05, 1.0, 1e-6, 1)).has_value());
}

TEST_CASE("bounds grow as pi1 shrinks") {
  double prev = 0.0;
  for (double pi1 : {0.5, 0.3, 0.2, 0.1}) {
    const auto b = lemma2_bound(make_inputs(100000, 0.05, 1.0, pi1));
    REQUIRE(b.has_value());
    CHECK(*b > prev);
    prev = *b;
  }
}

TEST_CASE("bound input validation") {
  CHECK_THROWS_AS(lemma2_bound(make_inputs(10, 0.0, 1.0, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(lemma2_bound(make_inputs(10, 0.05, 1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(theorem3_bound(make_inputs(10, 0.05, 1.0, 0.5, 11)), std::invalid_argument);
}

TEST_CASE("finite domain brute force two atoms") {
  const FiniteDomain dom{{0.5, 0.9}, {0.5, 0.2}};
  const BruteForceResult r = finite_domain_bruteforce(dom, Beta(1.0));
  CHECK(r.best_f == Approx(0.8571428571428571).epsilon(1e-12));
  REQUIRE(r.best_set.size() == 1);
  CHECK(r.best_set[0] == 0);
}

TEST_CASE("finite domain brute force with perfect labels") {
  const FiniteDomain dom{{0.25, 1.0}, {0.25, 1.0}, {0.5, 1.0}};
  const BruteForceResult r = finite_domain_bruteforce(dom, Beta(1.0));
  CHECK(r.best_f == Approx(1.0));
  CHECK(r.best_set.size() == 3);
}

TEST_CASE("finite domain validation") {
  CHECK_THROWS_AS(finite_domain_bruteforce(FiniteDomain(21, {0.04, 0.5}), Beta(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(finite_domain_bruteforce({{0.5, 0.5}, {0.6, 0.5}}, Beta(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(finite_domain_bruteforce({{0.5, 1.5}, {0.5, 0.5}}, Beta(1.0)),
                  std::invalid_argument);
}

TEST_CASE("brute-force maximum is attained by a probability threshold") {
  Rng rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + (rng.next_u64() % 9);
    FiniteDomain dom(m);
    double total = 0.0;
    for (auto& atom : dom) {
      atom.mass = 0.05 + rng.uniform();
      atom.eta1 = rng.uniform();
      total += atom.mass;
    }
    for (auto& atom : dom) atom.mass /= total;
    const Beta beta(trial % 2 == 0 ? 1.0 : 0.5);
    const BruteForceResult r = finite_domain_bruteforce(dom, beta);
    CHECK(r.best_f == Approx(best_threshold_f(dom, beta)).epsilon(1e-12));

    // Rank preservation: any increasing transform of eta1 orders the atoms
    // identically, so the threshold family (and its best F) is unchanged.
    std::vector<double> scores(m);
    for (std::size_t i = 0; i < m; ++i) scores[i] = std::exp(2.0 * dom[i].eta1) - 1.0;
    std::vector<std::size_t> by_eta(m), by_score(m);
    for (std::size_t i = 0; i < m; ++i) by_eta[i] = by_score[i] = i;
    std::stable_sort(by_eta.begin(), by_eta.end(),
                     [&](std::size_t a, std::size_t b) { return dom[a].eta1 > dom[b].eta1; });
    std::stable_sort(by_score.begin(), by_score.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    CHECK(by_eta == by_score);
  }
}

TEST_CASE("monte carlo bound check on a finite distribution") {
  // Two atoms; the classifier predicts the high-eta1 atom positive.
  const FiniteDomain dom{{0.5, 0.9}, {0.5, 0.2}};
  const double f_true = population_f({0.45, 0.05, 0.55}, Beta(1.0));
  const TrialSampler sampler = [&](std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Prediction s(n);
    LabelVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool atom0 = rng.bernoulli(0.5);
      s[i] = atom0 ? 1 : 0;
      y[i] = rng.bernoulli(atom0 ? 0.9 : 0.2) ? 1 : 0;
    }
    return std::make_pair(s, y);
  };
  const BoundInputs inp = make_inputs(4000, 0.05, 1.0, 0.55);
  REQUIRE(lemma2_bound(inp).has_value());
  const double rate = monte_carlo_bound_check(sampler, f_true, inp, 200, 99);
  CHECK(rate >= 0.0);
  CHECK(rate <= 0.05);
}

TEST_CASE("monte carlo bound check requires applicability") {
  const TrialSampler sampler = [](std::size_t n, std::uint64_t) {
    return std::make_pair(Prediction(n, 0), LabelVector(n, 0));
  };
  CHECK_THROWS_AS(monte_carlo_bound_check(sampler, 0.5, make_inputs(10, 0.05, 1.0, 0.5), 10, 1),
                  std::invalid_argument);
}
