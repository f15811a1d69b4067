#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "cone/rng.hpp"

namespace cone {

/// A context is a point of the continuous covariate space.
using Context = Eigen::VectorXd;

/// Raised for malformed user-facing configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Axis-aligned box bounding the context space.
///
/// All neighborhood geometry works on affinely normalized coordinates
/// (the box mapped onto the unit hypercube), so that one radius schedule
/// is meaningful for heterogeneous context units.
class ContextBox {
 public:
  ContextBox(Eigen::VectorXd lower, Eigen::VectorXd upper);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  bool contains(const Context& y) const;

  /// Affine map onto [0,1]^d.
  Eigen::VectorXd normalize(const Context& y) const;

  /// Euclidean diameter in raw units.
  double diameter() const { return (upper_ - lower_).norm(); }

  /// Diameter after normalization, i.e. sqrt(d).
  double normalized_diameter() const { return std::sqrt(static_cast<double>(dim())); }

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

/// One simulation run: (decision, context, performance sample), with its
/// 1-based arrival stage.
struct Observation {
  int decision = 0;
  Context context;
  double value = 0.0;
  int stage = 0;
};

/// Append-only log of observations, the sole state shared by estimators
/// and allocators. Single writer, any number of readers of a snapshot.
class Dataset {
 public:
  Dataset(ContextBox box, int n_decisions);

  /// Appends one observation; the stage index is assigned automatically.
  void append(int decision, const Context& y, double value);

  int size() const { return static_cast<int>(observations_.size()); }
  const std::vector<Observation>& observations() const { return observations_; }
  const Observation& observation(int i) const { return observations_[static_cast<size_t>(i)]; }

  /// Indices (0-based positions) of the observations taken at `decision`,
  /// in arrival order.
  const std::vector<int>& indices_for(int decision) const;

  /// Normalized context of observation i, cached at append time.
  const Eigen::VectorXd& normalized_context(int i) const {
    return normalized_[static_cast<size_t>(i)];
  }

  const ContextBox& box() const { return box_; }
  int n_decisions() const { return n_decisions_; }

 private:
  ContextBox box_;
  int n_decisions_;
  std::vector<Observation> observations_;
  std::vector<Eigen::VectorXd> normalized_;
  std::vector<std::vector<int>> by_decision_;
};

enum class LossMetric { PFS, EOC };

/// Loss of selecting a decision with true mean `f_selected` when the
/// conditional optimum has true mean `f_optimal`.
/// PFS: 1 if the means differ (exact float equality), else 0. EOC: |gap|.
double decision_loss(LossMetric metric, double f_selected, double f_optimal);

/// Index of the minimum of `values`; exact ties are resolved uniformly at
/// random from `rng`. Deterministic given the rng state.
int argmin_tiebreak(const Eigen::Ref<const Eigen::VectorXd>& values, Rng& rng);

}  // namespace cone
