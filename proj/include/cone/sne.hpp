#pragma once

#include <limits>
#include <vector>

#include "cone/core.hpp"

namespace cone {

/// Parameters of the shrinking-radius schedule r_m = c * m^(-xi/dim).
struct SneParams {
  double xi = 0.5;           ///< shrink exponent, in (0,1)
  double c = 0.0;            ///< radius scale (normalized units)
  int dim = 1;               ///< context dimension
  double sigma_floor = 1e-6; ///< lower clamp for the std estimate
};

/// Radius scale guaranteeing that the 2-level ball covers the whole
/// normalized box: c = diameter / 2^(-xi/dim), so r_2 == diameter.
double default_c(const ContextBox& box, double xi);

/// Convenience constructor: schedule covering `box` with exponent `xi`.
SneParams make_sne_params(const ContextBox& box, double xi = 0.5,
                          double sigma_floor = 1e-6);

/// r_m = c * m^(-xi/dim); strictly decreasing in m. m must be >= 1.
double radius(int m, const SneParams& params);

/// Distance between two raw contexts after normalization onto [0,1]^d.
/// Shared by the estimator and by any replay of its definitions so that
/// membership predicates agree bit for bit.
double normalized_distance(const ContextBox& box, const Context& a, const Context& b);

/// The frozen neighborhood of one (decision, query) pair.
///
/// psi is the largest activated level: the largest m such that at some
/// stage the m observations closest in arrival order lay within r_m.
/// Members are frozen at activation time, so later appends that do not
/// activate a higher level leave the summary unchanged.
struct NeighborhoodSummary {
  int psi = 0;
  int activation_stage = 0;        ///< stage of the last member to arrive; 0 when psi == 0
  std::vector<int> member_stages;  ///< arrival order, size psi
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std_dev = std::numeric_limits<double>::quiet_NaN();  ///< defined only when psi >= 2
  double radius = std::numeric_limits<double>::quiet_NaN();   ///< r_psi
};

/// Computes the neighborhood summary by lazy replay of the activation
/// definition over the arrival-ordered observations of `decision`.
/// Returns a psi = 0 summary when the decision has no usable observation.
NeighborhoodSummary neighborhood(const Dataset& dataset, int decision,
                                 const Context& query, const SneParams& params);

struct SneEstimate {
  double mean = 0.0;
  double std_dev = 0.0;  ///< floored at params.sigma_floor
  int psi = 0;
};

/// Mean and floored standard deviation at (decision, query).
/// Throws if psi == 0 (no data) or psi == 1 (variance undefined).
SneEstimate estimate(const Dataset& dataset, int decision, const Context& query,
                     const SneParams& params);

/// Neighborhood means of every decision at `query`; requires psi >= 1 for
/// each decision, otherwise throws.
Eigen::VectorXd estimate_means(const Dataset& dataset, const Context& query,
                               const SneParams& params);

/// The inferred conditional best decision: argmin of the neighborhood
/// means, ties broken uniformly from `rng`.
int predict_best(const Dataset& dataset, const Context& query,
                 const SneParams& params, Rng& rng);

}  // namespace cone
