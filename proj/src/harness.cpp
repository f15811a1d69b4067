#include "cone/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace cone {

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "cone") return Algorithm::Cone;
  if (name == "us-sne") return Algorithm::UsSne;
  if (name == "us-krig") return Algorithm::UsKrig;
  throw ConfigError("unknown algorithm '" + name + "' (expected cone, us-sne or us-krig)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Cone: return "cone";
    case Algorithm::UsSne: return "us-sne";
    case Algorithm::UsKrig: return "us-krig";
  }
  return "?";
}

double evaluate_varpi(const std::function<int(const Context&, Rng&)>& predictor,
                      const Oracle& oracle, int eval_points, LossMetric metric,
                      Rng& eval_rng) {
  if (eval_points < 1) throw ConfigError("evaluate_varpi: eval_points must be >= 1");
  if (!oracle.has_true_best()) {
    throw ConfigError("evaluate_varpi: oracle provides no ground-truth best decision");
  }
  if (metric == LossMetric::EOC && !oracle.has_true_mean()) {
    throw ConfigError("evaluate_varpi: EOC needs an oracle with true means");
  }
  double total = 0.0;
  for (int i = 0; i < eval_points; ++i) {
    const Context y = uniform_context(oracle.context_box(), eval_rng);
    const int predicted = predictor(y, eval_rng);
    const int actual = oracle.true_best(y, eval_rng);
    if (metric == LossMetric::PFS) {
      // Correctness compares decision indices, not float means.
      total += predicted != actual ? 1.0 : 0.0;
    } else {
      total += decision_loss(LossMetric::EOC, oracle.true_mean(predicted, y),
                             oracle.true_mean(actual, y));
    }
  }
  return total / static_cast<double>(eval_points);
}

namespace {

// Substream tags of the per-trial seed.
constexpr std::uint64_t kPolicyStream = 0;
constexpr std::uint64_t kOracleStream = 1;
constexpr std::uint64_t kEvalStream = 2;

struct CheckpointTracker {
  const ExperimentConfig& config;
  const Oracle& oracle;
  int trial;
  Rng& eval_rng;
  std::vector<CurveRow>& rows;
  int next = 0;

  CheckpointTracker(const ExperimentConfig& cfg, const Oracle& orc, int trial_idx,
                    Rng& erng, std::vector<CurveRow>& out)
      : config(cfg), oracle(orc), trial(trial_idx), eval_rng(erng), rows(out),
        next(cfg.checkpoint_every) {}

  void advance(int charged, const std::function<int(const Context&, Rng&)>& predictor) {
    while (next <= charged && next <= config.budget) {
      record(next, predictor);
      next += config.checkpoint_every;
    }
    // Ensure a final row when the budget is not a checkpoint multiple.
    if (charged >= config.budget && (rows.empty() || rows.back().stage != config.budget)) {
      record(config.budget, predictor);
    }
  }

  void record(int stage, const std::function<int(const Context&, Rng&)>& predictor) {
    const double varpi = evaluate_varpi(predictor, oracle, config.eval_points,
                                        config.metric, eval_rng);
    rows.push_back({trial, stage, 1.0 - varpi});
  }
};

TrialResult run_sne_trial(const ExperimentConfig& config, const Oracle& oracle,
                          int trial_index) {
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(trial_index);
  Rng policy_rng = make_rng(seed, kPolicyStream);
  Rng oracle_rng = make_rng(seed, kOracleStream);
  Rng eval_rng = make_rng(seed, kEvalStream);

  const int init_cost = 2 * oracle.n_decisions();
  if (config.budget < init_cost) {
    throw ConfigError("budget below the initialization cost of 2 observations per decision");
  }

  const SneParams& sne_params = config.cone.sne;
  Dataset dataset = initialize(oracle, sne_params, policy_rng, oracle_rng);
  int charged = dataset.size();

  std::vector<CurveRow> rows;
  CheckpointTracker tracker(config, oracle, trial_index, eval_rng, rows);
  auto predictor = [&](const Context& y, Rng& rng) {
    return predict_best(dataset, y, sne_params, rng);
  };

  tracker.advance(charged, predictor);
  while (charged < config.budget) {
    const Proposal prop = config.algorithm == Algorithm::Cone
                              ? cone_next(dataset, config.cone, policy_rng)
                              : uniform_next(dataset.box(), dataset.n_decisions(), policy_rng);
    const double value = oracle.sample(prop.decision, prop.context, oracle_rng);
    dataset.append(prop.decision, prop.context, value);
    ++charged;
    tracker.advance(charged, predictor);
  }
  return {std::move(rows), std::move(dataset)};
}

TrialResult run_krig_trial(const ExperimentConfig& config, const Oracle& oracle,
                           int trial_index) {
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(trial_index);
  Rng policy_rng = make_rng(seed, kPolicyStream);
  Rng oracle_rng = make_rng(seed, kOracleStream);
  Rng eval_rng = make_rng(seed, kEvalStream);

  const int l = config.batch_size;
  if (l < 2) throw ConfigError("us-krig: batch size must be >= 2");
  const int init_cost = 2 * oracle.n_decisions() * l;
  if (config.budget < init_cost) {
    throw ConfigError("budget below the us-krig initialization cost of 2 batches per decision");
  }

  Dataset dataset(oracle.context_box(), oracle.n_decisions());
  BatchedDesign design(oracle.context_box(), oracle.n_decisions());
  int charged = 0;

  auto run_batch = [&](int decision, const Context& y, int replications) {
    std::vector<double> values(static_cast<size_t>(replications));
    for (double& v : values) {
      v = oracle.sample(decision, y, oracle_rng);
      dataset.append(decision, y, v);
    }
    design.add(decision, y, values);
    charged += replications;
  };

  for (int x = 0; x < oracle.n_decisions(); ++x) {
    for (int j = 0; j < 2; ++j) {
      run_batch(x, uniform_context(oracle.context_box(), policy_rng), l);
    }
  }

  std::vector<CurveRow> rows;
  CheckpointTracker tracker(config, oracle, trial_index, eval_rng, rows);

  // Refit from the data accumulated so far at each checkpoint.
  std::vector<GpModel> models;
  auto predictor = [&](const Context& y, Rng& rng) {
    return predict_best_krig(models, y, rng);
  };
  auto advance = [&](int upto) {
    if (tracker.next <= upto || upto >= config.budget) {
      models = fit_all(design);
      tracker.advance(upto, predictor);
    }
  };

  advance(charged);
  while (charged < config.budget) {
    const int remaining = config.budget - charged;
    const int this_batch = std::min(l, remaining);
    if (this_batch < 2) {
      throw ConfigError("us-krig: budget leaves a final batch of fewer than 2 replications; "
                        "choose a budget compatible with the batch size");
    }
    const BatchProposal bp =
        batch_uniform_next(oracle.context_box(), oracle.n_decisions(), this_batch, policy_rng);
    run_batch(bp.proposal.decision, bp.proposal.context, bp.replications);
    advance(charged);
  }
  return {std::move(rows), std::move(dataset)};
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& config, const Oracle& oracle,
                      int trial_index) {
  if (config.budget < 1) throw ConfigError("budget must be positive");
  if (config.checkpoint_every < 1) throw ConfigError("checkpoint_every must be positive");
  return config.algorithm == Algorithm::UsKrig
             ? run_krig_trial(config, oracle, trial_index)
             : run_sne_trial(config, oracle, trial_index);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Oracle& oracle) {
  if (config.n_trials < 1) throw ConfigError("n_trials must be positive");
  ExperimentResult result;
  size_t rows_per_trial = 0;
  for (int trial = 0; trial < config.n_trials; ++trial) {
    TrialResult tr = run_trial(config, oracle, trial);
    if (trial == 0) {
      rows_per_trial = tr.rows.size();
    } else if (tr.rows.size() != rows_per_trial) {
      throw std::runtime_error("run_experiment: inconsistent checkpoint count across trials");
    }
    result.curve.insert(result.curve.end(), tr.rows.begin(), tr.rows.end());
    result.final_datasets.push_back(std::move(tr.dataset));
  }

  ExperimentSummary& s = result.summary;
  const int n_cp = static_cast<int>(rows_per_trial);
  for (int cp = 0; cp < n_cp; ++cp) {
    double sum = 0.0, sum2 = 0.0;
    for (int trial = 0; trial < config.n_trials; ++trial) {
      const double v = result.curve[static_cast<size_t>(trial) * rows_per_trial +
                                    static_cast<size_t>(cp)].one_minus_varpi;
      sum += v;
      sum2 += v * v;
    }
    const double n = config.n_trials;
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1)) : 0.0;
    s.stages.push_back(result.curve[static_cast<size_t>(cp)].stage);
    s.mean.push_back(mean);
    s.std.push_back(std::sqrt(var));
  }
  s.final_mean = s.mean.empty() ? 0.0 : s.mean.back();
  s.final_std = s.std.empty() ? 0.0 : s.std.back();
  return result;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void export_csv(const std::vector<CurveRow>& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_csv: cannot open " + path);
  out << "trial,stage,one_minus_varpi\n";
  for (const CurveRow& row : curve) {
    out << row.trial << ',' << row.stage << ',' << fmt_double(row.one_minus_varpi) << '\n';
  }
}

void export_aggregate_csv(const ExperimentSummary& summary, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_aggregate_csv: cannot open " + path);
  out << "stage,mean,std\n";
  for (size_t i = 0; i < summary.stages.size(); ++i) {
    out << summary.stages[i] << ',' << fmt_double(summary.mean[i]) << ','
        << fmt_double(summary.std[i]) << '\n';
  }
}

}  // namespace cone
