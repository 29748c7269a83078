// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fmeasure/bounds.hpp"
#include "fmeasure/dta.hpp"
#include "fmeasure/eum.hpp"
#include "fmeasure/experiment.hpp"
#include "fmeasure/gauss_sim.hpp"
#include "fmeasure/metrics.hpp"
#include "fmeasure/random.hpp"
#include "../tests/support.hpp"

using namespace fmeasure;

namespace {

constexpr auto kOne = EmptyConvention::OneOnEmpty;

struct Criterion {
  int number;
  std::string name;
  std::function<bool(std::string&)> body;
};

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Mean f1 per method name (learned methods keyed method/map).
std::map<std::string, double> mean_f1(const std::vector<ResultRow>& rows) {
  std::map<std::string, double> sum;
  std::map<std::string, int> count;
  for (const auto& row : rows) {
    if (row.trial < 0) continue;  // skip summary rows
    const std::string key = row.method + "/" + row.feature_map;
    sum[key] += row.f1;
    count[key] += 1;
  }
  for (auto& [key, value] : sum) value /= count[key];
  return sum;
}

std::vector<std::uint64_t> ten_seeds() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

// ---- criterion bodies -------------------------------------------------

bool criterion1_theory(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const double f_default = theoretical_optimal_f({10, 4.0, 0.0, 0.5}, Beta(1.0)).f_star;
  const double f_noisy = theoretical_optimal_f({10, 0.4, 0.0, 0.5}, Beta(1.0)).f_star;
  const double f_rare = theoretical_optimal_f({10, 4.0, 0.0, 0.05}, Beta(1.0)).f_star;
  const double t = elapsed_seconds(start);
  detail = "f*=" + fmt(f_default) + "/" + fmt(f_noisy) + "/" + fmt(f_rare) +
           " vs 0.9772/0.6688/0.9173, " + fmt(t) + "s";
  return std::abs(f_default - 0.9772) <= 5e-4 && std::abs(f_noisy - 0.6688) <= 5e-4 &&
         std::abs(f_rare - 0.9173) <= 5e-4 && t < 1.0;
}

bool criterion2_algorithm1(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(20001);
  const std::pair<std::uint64_t, std::uint64_t> fracs[] = {{1, 1}, {1, 2}, {2, 1}, {4, 9}};
  double worst_small = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + (rng.next_u64() % 12);
    ProbVector p = testkit::random_probs(rng, n);
    std::sort(p.rbegin(), p.rend());
    const auto [q, r] = fracs[trial % 4];
    const ExpectedFTable table =
        expected_f_table_quadratic(p, RationalBetaSq::make(q, r), kOne);
    const double b2 = static_cast<double>(q) / static_cast<double>(r);
    for (std::size_t k = 0; k <= n; ++k) {
      const std::uint32_t mask = k == 0 ? 0u : (1u << k) - 1u;
      const double oracle = testkit::enum_expected_f(p, mask, b2, true);
      worst_small = std::max(worst_small, std::abs(table.f[k] - oracle));
    }
  }

  const std::pair<std::uint64_t, std::uint64_t> fracs_big[] = {
      {1, 1}, {1, 2}, {2, 1}, {4, 9}, {9, 4}};
  double worst_big = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + (rng.next_u64() % 200);
    ProbVector p = testkit::random_probs(rng, n);
    std::sort(p.rbegin(), p.rend());
    const auto [q, r] = fracs_big[trial % 5];
    const RationalBetaSq bsq = RationalBetaSq::make(q, r);
    const ExpectedFTable quad = expected_f_table_quadratic(p, bsq, kOne);
    const ExpectedFTable cubic = expected_f_table_cubic(p, Beta(std::sqrt(bsq.value())), kOne);
    for (std::size_t k = 0; k <= n; ++k) {
      worst_big = std::max(worst_big, std::abs(quad.f[k] - cubic.f[k]));
    }
  }
  const double t = elapsed_seconds(start);
  detail = "max|quad-oracle|=" + std::to_string(worst_small) +
           ", max|quad-cubic|=" + std::to_string(worst_big) + ", " + fmt(t) + "s";
  return worst_small < 1e-10 && worst_big < 1e-8 && t < 60.0;
}

bool criterion3_theorem9(std::string& detail) {
  Rng rng(30001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + (rng.next_u64() % 12);
    const ProbVector p = testkit::random_probs(rng, n);
    const double beta_value = (trial % 3 == 0) ? 0.5 : (trial % 3 == 1 ? 1.0 : 2.0);
    const testkit::MaskSearch oracle =
        testkit::enum_best_mask(p, beta_value * beta_value, true);
    if (!oracle.top_k_attains) {
      detail = "global optimum not attained by any top-k mask (trial " +
               std::to_string(trial) + ")";
      return false;
    }
    const OptimalPrediction opt = optimal_prediction(p, Beta(beta_value), kOne);
    worst = std::max(worst, std::abs(opt.expected_f - oracle.best_value));
  }
  detail = "200 instances, max|opt-bruteforce|=" + std::to_string(worst);
  return worst < 1e-10;
}

bool criterion4_performance(std::string& detail) {
  Rng rng(40001);
  ProbVector p = testkit::random_probs(rng, 20000);
  std::sort(p.rbegin(), p.rend());
  const auto start = std::chrono::steady_clock::now();
  const ExpectedFTable table =
      expected_f_table_quadratic(p, RationalBetaSq::make(1, 1), kOne);
  const double t = elapsed_seconds(start);
  double best = 0.0;
  for (double v : table.f) best = std::max(best, v);
  detail = "n=20000 in " + fmt(t) + "s (max f=" + fmt(best) + ")";
  return t < 30.0 && table.f.size() == 20001;
}

bool criterion5_asymptotic_equivalence(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg = default_config(Suite::Table1);
  cfg.methods = {ExpMethod::TruthDelta, ExpMethod::TruthE};
  cfg.maps.clear();
  cfg.seeds = ten_seeds();
  cfg.jobs = 2;
  const std::vector<ResultRow> rows = run_experiment(cfg);
  std::map<std::uint64_t, double> f_delta, f_e;
  for (const auto& row : rows) {
    (row.method == "truth-delta" ? f_delta : f_e)[row.seed] = row.f1;
  }
  double mean_delta = 0.0, mean_e = 0.0, worst_gap = 0.0;
  for (const auto& [seed, value] : f_delta) {
    mean_delta += value;
    mean_e += f_e[seed];
    worst_gap = std::max(worst_gap, std::abs(value - f_e[seed]));
  }
  mean_delta /= 10.0;
  mean_e /= 10.0;
  const double t = elapsed_seconds(start);
  detail = "mean truth-delta=" + fmt(mean_delta) + ", mean truth-e=" + fmt(mean_e) +
           ", max per-seed gap=" + fmt(worst_gap) + ", " + fmt(t) + "s";
  return std::abs(mean_delta - 0.9772) < 0.015 && std::abs(mean_e - 0.9772) < 0.015 &&
         worst_gap < 0.02 && t < 120.0;
}

bool criterion6_learned_bands(std::string& detail) {
  ExperimentConfig base = default_config(Suite::Table1);
  base.seeds = ten_seeds();
  base.jobs = 2;
  base.methods = {ExpMethod::MlE, ExpMethod::MlDelta, ExpMethod::FDelta};
  base.maps = {FeatureMapKind::R1};

  const auto means_default = mean_f1(run_experiment(base));

  ExperimentConfig rare = base;
  rare.spec.pi1 = 0.05;
  rare.maps = {FeatureMapKind::R0};
  rare.methods = {ExpMethod::MlE, ExpMethod::MlDelta};
  const auto means_rare = mean_f1(run_experiment(rare));

  ExperimentConfig shifted = base;
  shifted.spec.offset = 50.0;
  const auto means_shifted = mean_f1(run_experiment(shifted));

  const double d_mle = means_default.at("ml-e/r1");
  const double d_mld = means_default.at("ml-delta/r1");
  const double d_fd = means_default.at("f-delta/r1");
  const bool band_mle = std::abs(d_mle - 0.978) <= 0.02;
  const bool band_mld = std::abs(d_mld - 0.979) <= 0.02;
  const bool band_fd = std::abs(d_fd - 0.976) <= 0.02;

  const double rare_gap = means_rare.at("ml-delta/r0") - means_rare.at("ml-e/r0");
  const double s_fd = means_shifted.at("f-delta/r1");
  const double s_mld = means_shifted.at("ml-delta/r1");
  const double s_mle = means_shifted.at("ml-e/r1");

  const bool hard = rare_gap >= 0.05 && s_fd >= s_mld && s_mld >= s_mle && s_fd >= 0.94;
  std::ostringstream os;
  os << "default r1 means ml-e/ml-delta/f-delta=" << fmt(d_mle) << "/" << fmt(d_mld)
     << "/" << fmt(d_fd) << " (soft bands "
     << (band_mle && band_mld && band_fd ? "met" : "MISSED, report-only")
     << "); rare r0 ml-delta - ml-e=" << fmt(rare_gap)
     << "; O=50 r1 f-delta/ml-delta/ml-e=" << fmt(s_fd) << "/" << fmt(s_mld) << "/"
     << fmt(s_mle);
  detail = os.str();
  return hard;
}

bool criterion7_table2(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg = default_config(Suite::Table2);
  cfg.trials = 500;
  cfg.seeds = {42};
  cfg.jobs = 2;
  cfg.methods = {ExpMethod::TruthE, ExpMethod::TruthDelta, ExpMethod::MlE,
                 ExpMethod::MlDelta};
  cfg.maps = {FeatureMapKind::R1};
  const auto means = mean_f1(run_experiment(cfg));
  const double truth_gap = means.at("truth-e/-") - means.at("truth-delta/-");
  const double ml_slack = means.at("ml-e/r1") - means.at("ml-delta/r1");
  const double t = elapsed_seconds(start);
  detail = "truth-e - truth-delta = " + fmt(truth_gap) +
           ", ml-e - ml-delta = " + fmt(ml_slack) + ", " + fmt(t) + "s";
  return truth_gap >= 0.01 && ml_slack >= -0.01 && t < 300.0;
}

bool criterion8_domain_adaptation(std::string& detail) {
  ExperimentConfig cfg = default_config(Suite::DomainAdapt);
  cfg.seeds = {1};
  const auto means = mean_f1(run_experiment(cfg));
  const double truth_gap = means.at("truth-e/-") - means.at("truth-delta/-");
  const double ml_gap = means.at("ml-e/r1") - means.at("ml-delta/r1");
  detail = "truth-e - truth-delta = " + fmt(truth_gap) +
           ", ml-e - ml-delta = " + fmt(ml_gap);
  return truth_gap >= 0.10 && ml_gap >= 0.15;
}

bool criterion9_bound_validity(std::string& detail) {
  BoundInputs inp;
  inp.n = 10000;
  inp.eta = 0.05;
  inp.beta = Beta(1.0);
  inp.pi1 = 0.5;

  const auto lemma = lemma2_bound(inp);
  BoundInputs small = inp;
  small.n = 100;
  BoundInputs vc = inp;
  vc.n = 1000000;
  vc.vc_dim = 1;
  const auto thm = theorem3_bound(vc);
  const bool spots = lemma.has_value() && std::abs(*lemma - 0.21189) < 1e-4 &&
                     thm.has_value() && std::abs(*thm - 0.11415) < 1e-4 &&
                     !lemma2_bound(small).has_value();

  // Midpoint-threshold classifier on the default mixture; only the diagonal
  // projection matters, so trials draw it directly.
  const GaussianMixtureSpec spec{10, 4.0, 0.0, 0.5};
  const auto [m0, m1] = projection_means(spec);
  const double mid = 0.5 * (m0 + m1);
  const TrialSampler sampler = [&, m0 = m0, m1 = m1](std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Prediction s(n);
    LabelVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool pos = rng.bernoulli(spec.pi1);
      const double z = (pos ? m1 : m0) + rng.normal();
      y[i] = pos ? 1 : 0;
      s[i] = z > mid ? 1 : 0;
    }
    return std::make_pair(s, y);
  };
  const double f_true = population_f(population_rates_at_threshold(spec, mid), inp.beta);
  const double rate = monte_carlo_bound_check(sampler, f_true, inp, 1000, 90001);
  detail = "violation rate = " + fmt(rate) + ", lemma2 = " + fmt(*lemma) +
           ", theorem3 = " + fmt(*thm);
  return spots && rate <= 0.05;
}

bool criterion10_gradients(std::string& detail) {
  Rng rng(100001);
  double worst = 0.0;
  for (int set = 0; set < 10; ++set) {
    const std::size_t n = 20 + (rng.next_u64() % 30);
    const std::size_t dim = 2 + (rng.next_u64() % 4);
    Matrix X(n, dim);
    LabelVector y(n);
    bool has_pos = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < dim; ++j) X.at(i, j) = 2.0 * rng.normal();
      y[i] = rng.bernoulli(0.4) ? 1 : 0;
      has_pos = has_pos || y[i] != 0;
    }
    if (!has_pos) y[0] = 1;
    const double lambda = 0.5 * rng.uniform();
    const Beta beta(0.5 + rng.uniform());
    for (int pt = 0; pt < 20; ++pt) {
      std::vector<double> w(dim);
      for (auto& v : w) v = rng.normal();
      const LinearModel model{w};
      const ObjectiveEval nll = nll_objective(model, X, y, lambda);
      const auto nll_numeric = testkit::numeric_gradient(
          [&](const std::vector<double>& ww) {
            return nll_objective(LinearModel{ww}, X, y, lambda).value;
          },
          w);
      worst = std::max(worst, testkit::max_rel_err(nll.gradient, nll_numeric));
      const ObjectiveEval soft = softf_objective(model, X, y, beta);
      const auto soft_numeric = testkit::numeric_gradient(
          [&](const std::vector<double>& ww) {
            return softf_objective(LinearModel{ww}, X, y, beta).value;
          },
          w);
      worst = std::max(worst, testkit::max_rel_err(soft.gradient, soft_numeric));
    }
  }
  detail = "max relative gradient error = " + std::to_string(worst);
  return worst < 1e-5;
}

bool criterion11_threshold_optimality(std::string& detail) {
  Rng rng(110001);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + (rng.next_u64() % 11);
    FiniteDomain dom(m);
    double total = 0.0;
    for (auto& atom : dom) {
      atom.mass = 0.05 + rng.uniform();
      atom.eta1 = rng.uniform();
      total += atom.mass;
    }
    for (auto& atom : dom) atom.mass /= total;
    const Beta beta(trial % 2 == 0 ? 1.0 : 2.0);
    const BruteForceResult brute = finite_domain_bruteforce(dom, beta);

    // Best F over eta1-threshold classifiers, which a monotone transform of
    // eta1 (used as the score) must also realize.
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return dom[a].eta1 > dom[b].eta1;
    });
    std::vector<std::size_t> order_transformed(m);
    for (std::size_t i = 0; i < m; ++i) order_transformed[i] = i;
    std::stable_sort(order_transformed.begin(), order_transformed.end(),
                     [&](std::size_t a, std::size_t b) {
                       return std::atan(5.0 * dom[a].eta1) > std::atan(5.0 * dom[b].eta1);
                     });
    if (order != order_transformed) {
      detail = "monotone transform changed the threshold family (trial " +
               std::to_string(trial) + ")";
      return false;
    }
    double pi1 = 0.0;
    for (const auto& atom : dom) pi1 += atom.mass * atom.eta1;
    double best = population_f({0.0, 0.0, pi1}, beta);
    double p11 = 0.0, p01 = 0.0;
    std::size_t i = 0;
    while (i < m) {
      std::size_t j = i;
      const double v = dom[order[i]].eta1;
      while (j < m && dom[order[j]].eta1 == v) {
        p11 += dom[order[j]].mass * dom[order[j]].eta1;
        p01 += dom[order[j]].mass * (1.0 - dom[order[j]].eta1);
        ++j;
      }
      best = std::max(best, population_f({std::min(p11, pi1), p01, pi1}, beta));
      i = j;
    }
    if (std::abs(brute.best_f - best) > 1e-12) {
      detail = "threshold classifiers miss the brute-force optimum by " +
               std::to_string(brute.best_f - best) + " (trial " + std::to_string(trial) + ")";
      return false;
    }
  }
  detail = "100 domains: brute-force optimum matches the best threshold classifier";
  return true;
}

bool criterion12_fig1(std::string& detail) {
  std::ostringstream os;
  bool ok = true;
  for (double pi1 : {0.1, 0.5, 0.9}) {
    ExperimentConfig cfg = default_config(Suite::Fig1);
    cfg.spec.pi1 = pi1;
    cfg.seeds = {3};
    cfg.jobs = 2;
    const std::vector<ResultRow> rows = run_experiment(cfg);
    std::size_t truth_idx = 0, kl_idx = 0, f1_idx = 0;
    double best_kl = 1e100, best_f1 = -1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double assumed = 0.05 * static_cast<double>(i + 1);
      if (std::abs(assumed - pi1) < 1e-9) truth_idx = i;
      if (*rows[i].kl < best_kl) {
        best_kl = *rows[i].kl;
        kl_idx = i;
      }
      if (rows[i].f1 > best_f1) {  // max f1 = min (1 - f1)
        best_f1 = rows[i].f1;
        f1_idx = i;
      }
    }
    const bool kl_exact = kl_idx == truth_idx;
    const std::size_t f1_dist =
        f1_idx > truth_idx ? f1_idx - truth_idx : truth_idx - f1_idx;
    ok = ok && kl_exact && f1_dist <= 1;
    os << "pi1=" << pi1 << ": kl argmin at grid " << kl_idx << " (truth " << truth_idx
       << "), f1 argmax offset " << f1_dist << "; ";
  }
  detail = os.str();
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "theory-column reproduction", criterion1_theory},
      {2, "quadratic-algorithm correctness", criterion2_algorithm1},
      {3, "probability-ranking optimality", criterion3_theorem9},
      {4, "n=20000 performance", criterion4_performance},
      {5, "large-test equivalence of thresholding and expectation", criterion5_asymptotic_equivalence},
      {6, "learned-method bands and orderings", criterion6_learned_bands},
      {7, "small-test advantage of expectation methods", criterion7_table2},
      {8, "domain adaptation orderings", criterion8_domain_adaptation},
      {9, "deviation-bound validity", criterion9_bound_validity},
      {10, "objective gradient checks", criterion10_gradients},
      {11, "thresholding optimality on finite domains", criterion11_threshold_optimality},
      {12, "model-quality sweep minima", criterion12_fig1},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
