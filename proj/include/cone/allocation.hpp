#pragma once

#include <functional>

#include "cone/oracle.hpp"
#include "cone/sne.hpp"

namespace cone {

/// Truncation bounds and schedule parameters of the rate-efficient sampler.
struct ConeParams {
  double lambda_lo = 0.01;    ///< global floor of the sampling intensity
  double lambda_hi = 100.0;   ///< global cap; also the rejection envelope
  SneParams sne;
  int max_rejections = 10000; ///< forced accept after this many proposals
};

/// A candidate (decision, context) pair for the next simulation run.
struct Proposal {
  int decision = 0;
  Context context;
};

/// Per-decision ranking difficulty at `query`: the squared estimated mean
/// gap to the estimated best over 4 * estimated variance. For the current
/// best the gap to its closest competitor is used. The best is located by
/// deterministic lowest-index tie-breaking so the result is a pure
/// function of the dataset. Requires psi >= 2 for every decision.
Eigen::VectorXd zeta_hat_all(const Dataset& dataset, const Context& query,
                             const SneParams& params);

double zeta_hat(const Dataset& dataset, int decision, const Context& query,
                const SneParams& params);

/// Untruncated sampling intensity as a function of zeta: the factor
/// -W_{-1}(-exp(-zeta-1)) over zeta^(1+xi). Monotone decreasing in zeta.
double beta_raw(double zeta, double xi);

/// Truncated sampling intensity at (decision, query): beta_raw clamped to
/// [lambda_lo, lambda_hi]. zeta = 0 maps to lambda_hi (the raw limit is
/// +inf there).
double beta(const Dataset& dataset, int decision, const Context& query,
            const ConeParams& params);

/// Rejection sampler over an arbitrary nonnegative intensity field bounded
/// by `envelope`: proposals are uniform on decisions x box, accepted with
/// probability field/envelope. After `max_rejections` failed proposals the
/// last one is accepted unconditionally.
Proposal rejection_sample(const std::function<double(int, const Context&)>& field,
                          const ContextBox& box, int n_decisions,
                          double envelope, int max_rejections, Rng& rng);

/// Next proposal under the rate-efficient rule: rejection sampling against
/// the truncated beta field of the current dataset.
Proposal cone_next(const Dataset& dataset, const ConeParams& params, Rng& rng);

/// Next proposal under uniform sampling.
Proposal uniform_next(const ContextBox& box, int n_decisions, Rng& rng);

struct BatchProposal {
  Proposal proposal;
  int replications;
};

/// Uniform proposal to be simulated `batch_size` times (batch variance
/// needs at least 2). Budget accounting charges batch_size observations.
BatchProposal batch_uniform_next(const ContextBox& box, int n_decisions,
                                 int batch_size, Rng& rng);

/// Uniform draw inside the box.
Context uniform_context(const ContextBox& box, Rng& rng);

/// Initial dataset: two uniform contexts per decision, one observation
/// each. With the default radius scale this activates level 2 everywhere.
Dataset initialize(const Oracle& oracle, const SneParams& params,
                   Rng& proposal_rng, Rng& oracle_rng);

}  // namespace cone
