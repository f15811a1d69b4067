#pragma once

#include "cone/core.hpp"

namespace cone {

/// Contract every stochastic simulator plugs into: a finite decision set,
/// a bounded context box, and a noisy sampler. Ground-truth accessors are
/// optional; evaluation code queries them when present.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual int n_decisions() const = 0;
  virtual const ContextBox& context_box() const = 0;

  /// One noisy performance observation at (decision, context).
  virtual double sample(int decision, const Context& y, Rng& rng) const = 0;

  virtual bool has_true_mean() const { return false; }
  virtual double true_mean(int /*decision*/, const Context& /*y*/) const {
    throw std::runtime_error("oracle: true mean not available");
  }

  virtual bool has_true_best() const { return false; }
  /// Conditional optimal decision at `y`. Deterministic oracles ignore
  /// `rng`; simulation-backed ones may spend evaluation-only replications.
  virtual int true_best(const Context& /*y*/, Rng& /*rng*/) const {
    throw std::runtime_error("oracle: true best not available");
  }
};

/// f_x(y) of the 1-d three-decision benchmark, y in [0,2], decision in {0,1,2}.
double toy_mean(int decision, double y);

/// Heteroscedastic noise level sigma_x(y) of the benchmark; always >= 0.1.
double toy_std(int decision, double y);

/// One Gaussian observation N(toy_mean, toy_std * noise_scale).
double toy_sample(int decision, double y, Rng& rng, double noise_scale = 1.0);

/// Conditional optimum by closed-form comparison; exact ties resolve to
/// the lowest index (they occur on a measure-zero set of y).
int toy_true_best(double y);

/// The benchmark wrapped in the oracle contract. `noise_scale` is a test
/// hook; 0 makes the oracle deterministic.
class ToyOracle final : public Oracle {
 public:
  explicit ToyOracle(double noise_scale = 1.0);

  int n_decisions() const override { return 3; }
  const ContextBox& context_box() const override { return box_; }
  double sample(int decision, const Context& y, Rng& rng) const override;
  bool has_true_mean() const override { return true; }
  double true_mean(int decision, const Context& y) const override;
  bool has_true_best() const override { return true; }
  int true_best(const Context& y, Rng& rng) const override;

 private:
  ContextBox box_;
  double noise_scale_;
};

}  // namespace cone
