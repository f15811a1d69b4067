// Command-line front end: run experiments, plot aggregated curves, and
// query the neighborhood surrogate from a saved dataset.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cone/callcenter.hpp"
#include "cone/harness.hpp"
#include "cone/io.hpp"
#include "cone/plot.hpp"

namespace fs = std::filesystem;
using namespace cone;

namespace {

struct RunOptions {
  std::string algorithm = "cone";
  std::string oracle = "toy";
  int budget = 3000;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_dir = "out";
  int checkpoint_every = 100;
  int eval_points = 20;
  double xi = 0.5;
  double lambda_lo = 0.01;
  double lambda_hi = 100.0;
  int batch_size = 5;
  bool save_datasets = false;
};

int cmd_run(const RunOptions& opt) {
  std::unique_ptr<Oracle> oracle;
  if (opt.oracle == "toy") {
    oracle = std::make_unique<ToyOracle>();
  } else if (opt.oracle == "callcenter") {
    CallCenterConfig cc = opt.config_path.empty()
                              ? CallCenterConfig::defaults()
                              : CallCenterConfig::from_json_file(opt.config_path);
    oracle = std::make_unique<CallCenterOracle>(std::move(cc));
  } else {
    throw ConfigError("unknown oracle '" + opt.oracle + "' (expected toy or callcenter)");
  }

  ExperimentConfig config;
  config.algorithm = algorithm_from_name(opt.algorithm);
  config.budget = opt.budget;
  config.n_trials = opt.trials;
  config.eval_points = opt.eval_points;
  config.checkpoint_every = opt.checkpoint_every;
  config.base_seed = opt.seed;
  config.batch_size = opt.batch_size;
  config.cone.lambda_lo = opt.lambda_lo;
  config.cone.lambda_hi = opt.lambda_hi;
  config.cone.sne = make_sne_params(oracle->context_box(), opt.xi);

  fs::create_directories(opt.out_dir);
  const ExperimentResult result = run_experiment(config, *oracle);

  const std::string stem = (fs::path(opt.out_dir) / algorithm_name(config.algorithm)).string();
  export_csv(result.curve, stem + "_curve.csv");
  export_aggregate_csv(result.summary, stem + "_aggregate.csv");
  if (opt.save_datasets) {
    for (size_t k = 0; k < result.final_datasets.size(); ++k) {
      std::ostringstream name;
      name << stem << "_trial" << k << ".dataset.csv";
      save_dataset(result.final_datasets[k], name.str());
    }
  } else if (!result.final_datasets.empty()) {
    save_dataset(result.final_datasets.front(), stem + "_trial0.dataset.csv");
  }

  std::cout << algorithm_name(config.algorithm) << ": final 1-varpi mean "
            << result.summary.final_mean << " (std " << result.summary.final_std << ") over "
            << config.n_trials << " trials, budget " << config.budget << "\n"
            << "wrote " << stem << "_curve.csv, " << stem << "_aggregate.csv\n";
  return 0;
}

int cmd_plot(const std::string& in_dir, const std::string& out_file) {
  std::vector<CurveSeries> series;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 14 && name.substr(name.size() - 14) == "_aggregate.csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    CurveSeries s;
    const std::string name = path.filename().string();
    s.label = name.substr(0, name.size() - 14);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::string cell;
      std::getline(ss, cell, ',');
      s.stages.push_back(std::stod(cell));
      std::getline(ss, cell, ',');
      s.values.push_back(std::stod(cell));
    }
    if (!s.stages.empty()) series.push_back(std::move(s));
  }
  if (series.empty()) {
    throw ConfigError("plot: no *_aggregate.csv files found in " + in_dir);
  }
  emit_plot(series, out_file);
  std::cout << "wrote " << out_file << " (" << series.size() << " series)\n";
  return 0;
}

int cmd_estimate(const std::string& dataset_path, int decision, const std::string& y_csv,
                 double xi, double sigma_floor) {
  const Dataset dataset = load_dataset(dataset_path);

  Context y(dataset.box().dim());
  {
    std::istringstream ss(y_csv);
    std::string cell;
    int k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= dataset.box().dim()) throw ConfigError("estimate: too many context coordinates");
      y[k++] = std::stod(cell);
    }
    if (k != dataset.box().dim()) {
      throw ConfigError("estimate: expected " + std::to_string(dataset.box().dim()) +
                        " context coordinates");
    }
  }
  if (decision < 0 || decision >= dataset.n_decisions()) {
    throw ConfigError("estimate: decision index out of range");
  }

  SneParams params = make_sne_params(dataset.box(), xi, sigma_floor);
  const NeighborhoodSummary nb = neighborhood(dataset, decision, y, params);
  if (nb.psi == 0) {
    std::cout << "decision " << decision << ": no neighborhood at the query\n";
    return 0;
  }
  std::cout << "decision " << decision << " at y = [" << y.transpose() << "]\n"
            << "  psi:    " << nb.psi << "\n"
            << "  mean:   " << nb.mean << "\n"
            << "  std:    " << (nb.psi >= 2 ? std::to_string(nb.std_dev) : std::string("n/a")) << "\n"
            << "  radius: " << nb.radius << " (normalized)\n"
            << "  activation stage: " << nb.activation_stage << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextual simulation-optimization experiments"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run one algorithm over independent trials");
  run->add_option("--algorithm", run_opt.algorithm, "cone | us-sne | us-krig")->required();
  run->add_option("--oracle", run_opt.oracle, "toy | callcenter");
  run->add_option("--budget", run_opt.budget, "total observation budget");
  run->add_option("--trials", run_opt.trials, "number of macro trials");
  run->add_option("--seed", run_opt.seed, "base seed; trial k uses seed+k");
  run->add_option("--config", run_opt.config_path, "call-center JSON config");
  run->add_option("--out", run_opt.out_dir, "output directory");
  run->add_option("--checkpoint-every", run_opt.checkpoint_every, "evaluation cadence");
  run->add_option("--eval-points", run_opt.eval_points, "Monte-Carlo contexts per evaluation");
  run->add_option("--xi", run_opt.xi, "shrink exponent in (0,1)");
  run->add_option("--lambda-lo", run_opt.lambda_lo, "sampling intensity floor");
  run->add_option("--lambda-hi", run_opt.lambda_hi, "sampling intensity cap");
  run->add_option("--batch-size", run_opt.batch_size, "us-krig replications per point");
  run->add_flag("--save-datasets", run_opt.save_datasets, "persist every trial's final dataset");

  std::string plot_in, plot_out = "curves.svg";
  auto* plot = app.add_subcommand("plot", "Plot aggregated curves from a run directory");
  plot->add_option("--in", plot_in, "directory with *_aggregate.csv files")->required();
  plot->add_option("--out", plot_out, "output SVG file");

  std::string est_dataset, est_y;
  int est_x = 0;
  double est_xi = 0.5, est_floor = 1e-6;
  auto* est = app.add_subcommand("estimate", "Query the surrogate from a saved dataset");
  est->add_option("--dataset", est_dataset, "dataset CSV from a run")->required();
  est->add_option("--x", est_x, "decision index")->required();
  est->add_option("--y", est_y, "context coordinates, comma-separated")->required();
  est->add_option("--xi", est_xi, "shrink exponent");
  est->add_option("--sigma-floor", est_floor, "std floor");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (plot->parsed()) return cmd_plot(plot_in, plot_out);
    if (est->parsed()) return cmd_estimate(est_dataset, est_x, est_y, est_xi, est_floor);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
