#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fmeasure/gauss_sim.hpp"

namespace fmeasure {

enum class Suite { Table1, Table2, Fig1, DomainAdapt };

enum class ExpMethod { MlDelta, FDelta, MlE, TruthDelta, TruthE };

struct ExperimentConfig {
  Suite suite = Suite::Table1;
  GaussianMixtureSpec spec;               // defaults: D=10, S=4, O=0, pi1=0.5
  std::size_t n_train = 1000;
  std::size_t n_test = 3000;
  std::size_t trials = 2000;              // Table2 only
  Beta beta{1.0};
  std::vector<double> lambdas = {1.0};    // regularization grid (usually one)
  EmptyConvention convention = EmptyConvention::OneOnEmpty;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<ExpMethod> methods;
  std::vector<FeatureMapKind> maps = {FeatureMapKind::R1};
  std::vector<double> assumed_pi1_grid;   // Fig1; default 0.05..0.95 step 0.05
  bool retrain_per_trial = false;         // Table2: refit the model each trial
  std::size_t jobs = 1;                   // parallel workers; output-invariant
};

// Suite defaults: Table2 switches to pi1=0.05 and test size 100; Fig1 to S=2
// with no training; DomainAdapt to 5000 train / 5000 filtered test.
ExperimentConfig default_config(Suite suite);

struct ResultRow {
  std::string setting;
  std::string method;
  std::string feature_map;  // "-" when not applicable
  std::uint64_t seed = 0;
  std::int64_t trial = 0;   // -1 marks a per-method summary row (Table2)
  double f1 = 0.0;
  double theory_f1 = 0.0;
  std::optional<double> kl;
  std::string extra;
};

// Runs the configured suite.  Row order is fixed by (method, map, seed,
// trial) regardless of the jobs count, and all randomness derives from the
// config seeds.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// CSV with header setting,method,feature_map,seed,trial,f1,theory_f1,kl,extra
// and 6-decimal floats; unavailable fields are left empty.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

std::string to_string(Suite suite);
std::string to_string(ExpMethod method);
std::string to_string(FeatureMapKind map);
Suite parse_suite(const std::string& text);
ExpMethod parse_exp_method(const std::string& text);
FeatureMapKind parse_feature_map(const std::string& text);

// Applies a "key=value" override to the config; unknown keys or malformed
// values are rejected with a message naming the field.
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

}  // namespace fmeasure
