#include "cone/allocation.hpp"

#include <cmath>

#include "cone/lambert.hpp"

namespace cone {

namespace {

// Means and floored stds of every decision at the query, or throws when
// any decision lacks a two-sample neighborhood.
void sne_profile(const Dataset& dataset, const Context& query, const SneParams& params,
                 Eigen::VectorXd& means, Eigen::VectorXd& stds) {
  const int n = dataset.n_decisions();
  means.resize(n);
  stds.resize(n);
  for (int x = 0; x < n; ++x) {
    const SneEstimate e = estimate(dataset, x, query, params);
    means[x] = e.mean;
    stds[x] = e.std_dev;
  }
}

int lowest_index_argmin(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  v.minCoeff(&best);
  for (Eigen::Index i = 0; i < best; ++i) {
    if (v[i] == v[best]) return static_cast<int>(i);
  }
  return static_cast<int>(best);
}

Eigen::VectorXd zeta_from_profile(const Eigen::VectorXd& means, const Eigen::VectorXd& stds) {
  const int n = static_cast<int>(means.size());
  const int best = lowest_index_argmin(means);
  double closest_gap = std::numeric_limits<double>::infinity();
  for (int x = 0; x < n; ++x) {
    if (x != best) closest_gap = std::min(closest_gap, means[x] - means[best]);
  }
  Eigen::VectorXd zeta(n);
  for (int x = 0; x < n; ++x) {
    const double gap = (x == best) ? closest_gap : means[x] - means[best];
    zeta[x] = gap * gap / (4.0 * stds[x] * stds[x]);
  }
  return zeta;
}

}  // namespace

Eigen::VectorXd zeta_hat_all(const Dataset& dataset, const Context& query,
                             const SneParams& params) {
  Eigen::VectorXd means, stds;
  sne_profile(dataset, query, params, means, stds);
  return zeta_from_profile(means, stds);
}

double zeta_hat(const Dataset& dataset, int decision, const Context& query,
                const SneParams& params) {
  return zeta_hat_all(dataset, query, params)[decision];
}

double beta_raw(double zeta, double xi) {
  if (zeta < 0.0) throw std::domain_error("beta_raw: zeta must be >= 0");
  if (zeta == 0.0) return std::numeric_limits<double>::infinity();
  return neg_w_factor(zeta) / std::pow(zeta, 1.0 + xi);
}

double beta(const Dataset& dataset, int decision, const Context& query,
            const ConeParams& params) {
  const double zeta = zeta_hat(dataset, decision, query, params.sne);
  const double raw = beta_raw(zeta, params.sne.xi);
  return std::clamp(raw, params.lambda_lo, params.lambda_hi);
}

Proposal rejection_sample(const std::function<double(int, const Context&)>& field,
                          const ContextBox& box, int n_decisions,
                          double envelope, int max_rejections, Rng& rng) {
  Proposal prop;
  for (int k = 0; k < max_rejections; ++k) {
    prop.decision = uniform_int(rng, n_decisions);
    prop.context = uniform_context(box, rng);
    const double threshold = uniform_real(rng, 0.0, envelope);
    if (threshold <= field(prop.decision, prop.context)) return prop;
  }
  return prop;  // cap reached: accept the last proposal
}

Proposal cone_next(const Dataset& dataset, const ConeParams& params, Rng& rng) {
  auto field = [&](int decision, const Context& y) {
    return beta(dataset, decision, y, params);
  };
  return rejection_sample(field, dataset.box(), dataset.n_decisions(),
                          params.lambda_hi, params.max_rejections, rng);
}

Context uniform_context(const ContextBox& box, Rng& rng) {
  Context y(box.dim());
  for (int k = 0; k < box.dim(); ++k) {
    y[k] = uniform_real(rng, box.lower()[k], box.upper()[k]);
  }
  return y;
}

Proposal uniform_next(const ContextBox& box, int n_decisions, Rng& rng) {
  Proposal prop;
  prop.decision = uniform_int(rng, n_decisions);
  prop.context = uniform_context(box, rng);
  return prop;
}

BatchProposal batch_uniform_next(const ContextBox& box, int n_decisions,
                                 int batch_size, Rng& rng) {
  if (batch_size < 2) {
    throw std::invalid_argument("batch_uniform_next: batch_size must be >= 2");
  }
  return {uniform_next(box, n_decisions, rng), batch_size};
}

Dataset initialize(const Oracle& oracle, const SneParams& /*params*/,
                   Rng& proposal_rng, Rng& oracle_rng) {
  Dataset dataset(oracle.context_box(), oracle.n_decisions());
  for (int x = 0; x < oracle.n_decisions(); ++x) {
    for (int j = 0; j < 2; ++j) {
      const Context y = uniform_context(oracle.context_box(), proposal_rng);
      dataset.append(x, y, oracle.sample(x, y, oracle_rng));
    }
  }
  return dataset;
}

}  // namespace cone
