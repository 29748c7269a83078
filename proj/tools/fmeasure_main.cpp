// Command-line front end: train/predict/eval for dense and sparse datasets,
// bound calculators, and the Gaussian-mixture experiment suites.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "fmeasure/bounds.hpp"
#include "fmeasure/dataset_io.hpp"
#include "fmeasure/dta.hpp"
#include "fmeasure/eum.hpp"
#include "fmeasure/experiment.hpp"
#include "fmeasure/gauss_sim.hpp"
#include "fmeasure/metrics.hpp"
#include "fmeasure/model_io.hpp"

namespace {

using namespace fmeasure;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Beta beta_from_flag(const std::string& text) {
  try {
    return parse_beta(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

EmptyConvention convention_from_flag(const std::string& text) {
  if (text == "one") return EmptyConvention::OneOnEmpty;
  if (text == "zero") return EmptyConvention::ZeroOnEmpty;
  throw UsageError("--convention must be 'one' or 'zero'");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (*end != '\0') throw UsageError("--seeds: bad seed '" + item + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw UsageError("--seeds: need at least one seed");
  return seeds;
}

struct TrainArgs {
  std::string method = "ml-delta";
  std::string data;
  std::string map = "identity";
  double lambda = 1.0;
  std::string beta = "1";
  std::string out;
};

int cmd_train(const TrainArgs& args) {
  const Method method = parse_method(args.method);
  const Beta beta = beta_from_flag(args.beta);
  const FeatureMapKind map = parse_feature_map(args.map);
  DenseDataset ds = load_dense_csv_file(args.data);
  if (!ds.has_labels) throw DataError("training data needs a final `label` column");
  if (ds.X.rows == 0) throw DataError("training data has no rows");
  Matrix xf = featurize(map, ds.X);
  FittedMethod fit = fit_method(method, xf, ds.y, beta, args.lambda);
  SavedModel sm;
  sm.method = method;
  sm.beta = beta;
  sm.lambda = args.lambda;
  sm.feature_map = args.map;
  sm.model = std::move(fit.model);
  sm.threshold = fit.threshold;
  save_model_file(args.out, sm);
  return 0;
}

struct PredictArgs {
  std::string model;
  std::string data;
  std::string out;
  std::string convention = "one";
};

int cmd_predict(const PredictArgs& args) {
  const SavedModel sm = load_model_file(args.model);
  const EmptyConvention conv = convention_from_flag(args.convention);
  FeatureMapKind map = FeatureMapKind::Identity;
  try {
    map = parse_feature_map(sm.feature_map);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
  DenseDataset ds = load_dense_csv_file(args.data);
  Matrix xf = featurize(map, ds.X);
  if (xf.cols != sm.model.weights.size()) {
    throw DataError("model/data dimension mismatch: model has " +
                    std::to_string(sm.model.weights.size()) + " weights, data maps to " +
                    std::to_string(xf.cols) + " features");
  }
  const ProbVector probs = predict_proba(sm.model, xf);
  FittedMethod fitted{sm.method, sm.model, sm.threshold, sm.beta};
  const Prediction pred = apply_method(fitted, xf, conv);
  std::ofstream out(args.out);
  if (!out) throw DataError("cannot open output file: " + args.out);
  write_predictions_csv(out, probs, pred);
  return 0;
}

struct EvalArgs {
  std::string pred;
  std::string gold;
  std::string beta = "1";
  std::string convention = "one";
  bool per_label = false;
};

bool file_looks_sparse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return looks_sparse(line);
  }
  throw DataError("empty file: " + path);
}

int cmd_eval(const EvalArgs& args) {
  const Beta beta = beta_from_flag(args.beta);
  const EmptyConvention conv = convention_from_flag(args.convention);

  if (file_looks_sparse(args.gold)) {
    // Multilabel: per-label F over the gold label universe, macro-averaged.
    const SparseDataset gold = load_sparse_multilabel_file(args.gold);
    if (!file_looks_sparse(args.pred)) {
      throw DataError("multilabel gold needs multilabel predictions");
    }
    const SparseDataset pred = load_sparse_multilabel_file(args.pred);
    if (pred.instances.size() != gold.instances.size()) {
      throw DataError("prediction/gold instance count mismatch");
    }
    std::set<std::size_t> label_set;
    for (const auto& inst : gold.instances) {
      label_set.insert(inst.labels.begin(), inst.labels.end());
    }
    if (label_set.empty()) throw DataError("gold file defines no labels");
    const std::size_t n = gold.instances.size();
    std::vector<std::pair<Prediction, LabelVector>> per_label;
    std::vector<std::size_t> label_ids(label_set.begin(), label_set.end());
    for (std::size_t label : label_ids) {
      Prediction s(n, 0);
      LabelVector y(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& gl = gold.instances[i].labels;
        const auto& pl = pred.instances[i].labels;
        y[i] = std::find(gl.begin(), gl.end(), label) != gl.end() ? 1 : 0;
        s[i] = std::find(pl.begin(), pl.end(), label) != pl.end() ? 1 : 0;
      }
      per_label.emplace_back(std::move(s), std::move(y));
    }
    if (args.per_label) {
      for (std::size_t li = 0; li < label_ids.size(); ++li) {
        const BinaryEval e = evaluate_binary(per_label[li].first, per_label[li].second,
                                             beta, conv);
        std::printf("label %zu: precision=%.6f recall=%.6f f=%.6f\n", label_ids[li],
                    e.precision, e.recall, e.f);
      }
    }
    std::printf("macro_f=%.6f\n", macro_f(per_label, beta, conv));
    return 0;
  }

  const DenseDataset gold = load_dense_csv_file(args.gold);
  if (!gold.has_labels) throw DataError("gold data needs a final `label` column");
  const PredictionsCsv pred = load_predictions_csv_file(args.pred);
  if (pred.prediction.size() != gold.y.size()) {
    throw DataError("prediction/gold row count mismatch");
  }
  const BinaryEval e = evaluate_binary(pred.prediction, gold.y, beta, conv);
  std::printf("precision=%.6f\nrecall=%.6f\nf=%.6f\n", e.precision, e.recall, e.f);
  return 0;
}

struct BoundsArgs {
  bool lemma2 = false;
  bool theorem3 = false;
  std::size_t n = 0;
  double eta = 0.0;
  std::string beta = "1";
  double pi1 = 0.0;
  std::size_t d = 1;
};

int cmd_bounds(const BoundsArgs& args) {
  if (args.lemma2 == args.theorem3) {
    throw UsageError("pick exactly one of --lemma2 / --theorem3");
  }
  BoundInputs inp;
  inp.n = args.n;
  inp.eta = args.eta;
  inp.beta = beta_from_flag(args.beta);
  inp.pi1 = args.pi1;
  inp.vc_dim = args.d;
  std::optional<double> bound;
  try {
    bound = args.lemma2 ? lemma2_bound(inp) : theorem3_bound(inp);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (bound.has_value()) {
    std::printf("%.6f\n", *bound);
  } else {
    std::printf("not-applicable\n");
  }
  return 0;
}

struct ExperimentArgs {
  std::string suite;
  std::vector<std::string> overrides;
  std::string seeds = "1";
  std::string out;
  std::size_t jobs = 1;
};

int cmd_experiment(const ExperimentArgs& args) {
  ExperimentConfig cfg;
  try {
    cfg = default_config(parse_suite(args.suite));
    for (const std::string& kv : args.overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("experiment override: expected key=value, got '" + kv + "'");
      }
      apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.seeds = parse_seed_list(args.seeds);
    cfg.jobs = args.jobs;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<ResultRow> rows;
  try {
    rows = run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());  // config rejected by the runner
  }
  std::ofstream out(args.out);
  if (!out) throw DataError("cannot open output file: " + args.out);
  write_csv(out, rows);
  if (!out) throw DataError("failed writing output file: " + args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"F-measure optimal classification: EUM training and "
               "decision-theoretic prediction"};
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand(
      "train", "Fit a linear-logistic method on a dense CSV dataset");
  train->add_option("--method", train_args.method, "ml-delta | f-delta | ml-e")
      ->check(CLI::IsMember({"ml-delta", "f-delta", "ml-e"}));
  train->add_option("--data", train_args.data, "dense CSV with a final `label` column")
      ->required();
  train->add_option("--map", train_args.map, "identity | r0 | r1 | r2")
      ->check(CLI::IsMember({"identity", "r0", "r1", "r2"}));
  train->add_option("--lambda", train_args.lambda, "Gaussian-norm penalty weight (>= 0)")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--beta", train_args.beta,
                    "F parameter; decimal or ratio q/r (a ratio keeps beta^2 "
                    "exactly rational, routing ml-e prediction to the "
                    "quadratic algorithm; unrecognized decimals use the cubic "
                    "fallback)");
  train->add_option("--out", train_args.out, "model file to write")->required();

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "Score a dataset with a saved model");
  predict->add_option("--model", predict_args.model, "model file")->required();
  predict->add_option("--data", predict_args.data, "dense CSV (label column optional)")
      ->required();
  predict->add_option("--out", predict_args.out, "predictions CSV to write")->required();
  predict->add_option("--convention", predict_args.convention,
                      "empty-prediction convention: one | zero");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Score predictions against gold labels (binary or multilabel macro-F)");
  eval->add_option("--pred", eval_args.pred,
                   "predictions CSV, or a sparse multilabel file for multilabel gold")
      ->required();
  eval->add_option("--gold", eval_args.gold, "dense CSV or sparse multilabel file")
      ->required();
  eval->add_option("--beta", eval_args.beta, "F parameter; decimal or ratio q/r");
  eval->add_option("--convention", eval_args.convention, "one | zero");
  eval->add_flag("--per-label", eval_args.per_label, "print per-label scores (multilabel)");

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Convergence-bound calculators (prints the bound or `not-applicable`)");
  bounds->add_flag("--lemma2", bounds_args.lemma2, "fixed-classifier deviation bound");
  bounds->add_flag("--theorem3", bounds_args.theorem3, "VC-class regret bound");
  bounds->add_option("--n", bounds_args.n, "sample size")->required();
  bounds->add_option("--eta", bounds_args.eta, "confidence parameter in (0,1)")->required();
  bounds->add_option("--beta", bounds_args.beta, "F parameter");
  bounds->add_option("--pi1", bounds_args.pi1, "positive-class probability")->required();
  bounds->add_option("--d", bounds_args.d, "VC dimension (theorem3)");

  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Gaussian-mixture suites; writes one CSV row per cell/trial/grid point");
  experiment->add_option("--suite", exp_args.suite, "table1 | table2 | fig1 | domain-adapt")
      ->required();
  experiment->add_option("--override", exp_args.overrides,
                         "key=value config override (repeatable); keys: D,S,O,pi1,"
                         "n_train,n_test,trials,beta,lambda,convention,methods,maps,"
                         "assumed_pi1_grid,retrain_per_trial");
  experiment->add_option("--seeds", exp_args.seeds, "comma-separated seed list");
  experiment->add_option("--out", exp_args.out, "results CSV to write")->required();
  experiment->add_option("--jobs", exp_args.jobs, "parallel workers (output-invariant)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (train->parsed()) return cmd_train(train_args);
    if (predict->parsed()) return cmd_predict(predict_args);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (bounds->parsed()) return cmd_bounds(bounds_args);
    if (experiment->parsed()) return cmd_experiment(exp_args);
    std::fprintf(stderr, "error: no subcommand\n");
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
