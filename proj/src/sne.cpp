#include "cone/sne.hpp"

#include <algorithm>
#include <cmath>

namespace cone {

double default_c(const ContextBox& box, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw std::invalid_argument("default_c: xi must lie in (0,1)");
  }
  const double d = static_cast<double>(box.dim());
  return box.normalized_diameter() / std::pow(2.0, -xi / d);
}

SneParams make_sne_params(const ContextBox& box, double xi, double sigma_floor) {
  SneParams p;
  p.xi = xi;
  p.dim = box.dim();
  p.c = default_c(box, xi);
  p.sigma_floor = sigma_floor;
  return p;
}

double radius(int m, const SneParams& params) {
  if (m < 1) {
    throw std::invalid_argument("radius: level m must be >= 1");
  }
  return params.c * std::pow(static_cast<double>(m), -params.xi / static_cast<double>(params.dim));
}

double normalized_distance(const ContextBox& box, const Context& a, const Context& b) {
  return (box.normalize(a) - box.normalize(b)).norm();
}

namespace {

// Mean and sample std (divisor n-1) accumulated in arrival order. Kept as
// the plain two-pass formula so an independent replay of the definitions
// reproduces the exact same doubles.
void mean_and_std(const Dataset& dataset, const std::vector<int>& member_idx,
                  double& mean, double& std_dev) {
  const int n = static_cast<int>(member_idx.size());
  double sum = 0.0;
  for (int i : member_idx) sum += dataset.observation(i).value;
  mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0;
    for (int i : member_idx) {
      const double dev = dataset.observation(i).value - mean;
      ss += dev * dev;
    }
    std_dev = std::sqrt(ss / static_cast<double>(n - 1));
  } else {
    std_dev = std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

NeighborhoodSummary neighborhood(const Dataset& dataset, int decision,
                                 const Context& query, const SneParams& params) {
  NeighborhoodSummary out;
  const std::vector<int>& idx = dataset.indices_for(decision);
  const int n = static_cast<int>(idx.size());
  if (n == 0) return out;

  const Eigen::VectorXd q = dataset.box().normalize(query);
  std::vector<double> dist(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    dist[static_cast<size_t>(j)] = (dataset.normalized_context(idx[static_cast<size_t>(j)]) - q).norm();
  }

  // Level m is activated iff at least m of the distances are < r_m.
  // That count is nonincreasing in m while m increases, so the set of
  // activated levels is {1, ..., psi}: binary search for psi.
  std::vector<double> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  auto activated = [&](int m) {
    const double r = radius(m, params);
    const auto count = std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin();
    return count >= m;
  };
  if (!activated(1)) return out;
  int lo = 1, hi = n;  // activated(lo) holds
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (activated(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const int psi = lo;

  // Members: the first psi arrivals within r_psi. The level was activated
  // the moment the psi-th of them arrived, which freezes exactly this set.
  const double r_psi = radius(psi, params);
  out.psi = psi;
  out.radius = r_psi;
  out.member_stages.reserve(static_cast<size_t>(psi));
  std::vector<int> member_idx;
  member_idx.reserve(static_cast<size_t>(psi));
  for (int j = 0; j < n && static_cast<int>(member_idx.size()) < psi; ++j) {
    if (dist[static_cast<size_t>(j)] < r_psi) {
      member_idx.push_back(idx[static_cast<size_t>(j)]);
      out.member_stages.push_back(dataset.observation(idx[static_cast<size_t>(j)]).stage);
    }
  }
  out.activation_stage = out.member_stages.back();
  mean_and_std(dataset, member_idx, out.mean, out.std_dev);
  return out;
}

SneEstimate estimate(const Dataset& dataset, int decision, const Context& query,
                     const SneParams& params) {
  const NeighborhoodSummary nb = neighborhood(dataset, decision, query, params);
  if (nb.psi == 0) {
    throw std::runtime_error("sne::estimate: no observations for the requested decision");
  }
  if (nb.psi < 2) {
    throw std::runtime_error("sne::estimate: variance undefined with a single neighborhood sample");
  }
  SneEstimate e;
  e.mean = nb.mean;
  e.std_dev = std::max(nb.std_dev, params.sigma_floor);
  e.psi = nb.psi;
  return e;
}

Eigen::VectorXd estimate_means(const Dataset& dataset, const Context& query,
                               const SneParams& params) {
  Eigen::VectorXd means(dataset.n_decisions());
  for (int x = 0; x < dataset.n_decisions(); ++x) {
    const NeighborhoodSummary nb = neighborhood(dataset, x, query, params);
    if (nb.psi == 0) {
      throw std::runtime_error("sne: decision " + std::to_string(x) +
                               " has no neighborhood at the query");
    }
    means[x] = nb.mean;
  }
  return means;
}

int predict_best(const Dataset& dataset, const Context& query,
                 const SneParams& params, Rng& rng) {
  return argmin_tiebreak(estimate_means(dataset, query, params), rng);
}

}  // namespace cone
