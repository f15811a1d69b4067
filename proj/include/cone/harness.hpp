#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cone/allocation.hpp"
#include "cone/kriging.hpp"
#include "cone/oracle.hpp"

namespace cone {

enum class Algorithm { Cone, UsSne, UsKrig };

Algorithm algorithm_from_name(const std::string& name);  // cone | us-sne | us-krig
std::string algorithm_name(Algorithm a);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Cone;
  int budget = 3000;
  int n_trials = 100;
  int eval_points = 20;
  int checkpoint_every = 100;
  std::uint64_t base_seed = 0;
  LossMetric metric = LossMetric::PFS;
  ConeParams cone;     // sne schedule shared by cone and us-sne
  int batch_size = 5;  // us-krig replications per design point
};

/// One curve sample: after `stage` charged observations in trial `trial`,
/// the Monte-Carlo estimate of the correct-selection rate 1 - varpi.
struct CurveRow {
  int trial;
  int stage;
  double one_minus_varpi;
};

struct TrialResult {
  std::vector<CurveRow> rows;
  Dataset dataset;  // final state, for persistence and later queries
};

struct ExperimentSummary {
  std::vector<int> stages;
  std::vector<double> mean;  // across trials, per checkpoint
  std::vector<double> std;   // sample std across trials
  double final_mean = 0.0;
  double final_std = 0.0;
};

struct ExperimentResult {
  std::vector<CurveRow> curve;  // all trials
  std::vector<Dataset> final_datasets;
  ExperimentSummary summary;
};

/// Fraction of evaluation contexts where the predictor disagrees with the
/// oracle's conditional best (PFS), or the mean true-mean gap (EOC).
/// Contexts are redrawn uniformly from `eval_rng` on every call.
double evaluate_varpi(const std::function<int(const Context&, Rng&)>& predictor,
                      const Oracle& oracle, int eval_points, LossMetric metric,
                      Rng& eval_rng);

/// Runs one macro trial: initialize, loop policy proposals until the
/// budget is exhausted, and record 1 - varpi at every checkpoint.
/// All randomness derives from base_seed + trial_index through three
/// independent substreams (policy, oracle, evaluation).
TrialResult run_trial(const ExperimentConfig& config, const Oracle& oracle,
                      int trial_index);

/// All trials plus the aggregated curve.
ExperimentResult run_experiment(const ExperimentConfig& config, const Oracle& oracle);

/// trial,stage,one_minus_varpi rows.
void export_csv(const std::vector<CurveRow>& curve, const std::string& path);

/// stage,mean,std rows of the across-trial aggregate.
void export_aggregate_csv(const ExperimentSummary& summary, const std::string& path);

}  // namespace cone
