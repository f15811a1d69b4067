#pragma once

#include <vector>

#include "cone/core.hpp"

namespace cone {

/// One replicated design point: where it was simulated and the batch
/// statistics of its replications.
struct DesignPoint {
  Context context;
  double batch_mean = 0.0;
  double batch_variance = 0.0;  ///< sample variance of the replications
  int batch_size = 0;           ///< >= 2
};

/// Per-decision batched designs plus the box used to normalize inputs.
struct BatchedDesign {
  ContextBox box;
  std::vector<std::vector<DesignPoint>> per_decision;

  BatchedDesign(ContextBox b, int n_decisions)
      : box(std::move(b)), per_decision(static_cast<size_t>(n_decisions)) {}

  void add(int decision, const Context& y, const std::vector<double>& replications);
  int n_decisions() const { return static_cast<int>(per_decision.size()); }
};

/// Gaussian-process interpolator for one decision: squared-exponential
/// kernel on normalized contexts, constant mean, heteroscedastic nugget
/// batch_variance/batch_size on the diagonal.
class GpModel {
 public:
  /// Hyperparameters (length-scale, signal variance) are picked by the
  /// Gaussian log marginal likelihood over a fixed 10x10 log-spaced grid.
  static GpModel fit(const ContextBox& box, const std::vector<DesignPoint>& design);

  double predict(const Context& query) const;

  double length_scale() const { return length_scale_; }
  double signal_variance() const { return signal_variance_; }
  double prior_mean() const { return prior_mean_; }

 private:
  explicit GpModel(ContextBox box) : box_(std::move(box)) {}

  ContextBox box_;
  Eigen::MatrixXd inputs_;   // normalized design contexts, one column each
  Eigen::VectorXd weights_;  // (K + diag(nugget))^{-1} (y - mu0)
  double length_scale_ = 1.0;
  double signal_variance_ = 1.0;
  double prior_mean_ = 0.0;
};

/// Fits one GP per decision. Every decision needs >= 2 design points.
std::vector<GpModel> fit_all(const BatchedDesign& design);

/// Argmin of the posterior means, ties broken uniformly from `rng`.
int predict_best_krig(const std::vector<GpModel>& models, const Context& query, Rng& rng);

}  // namespace cone
