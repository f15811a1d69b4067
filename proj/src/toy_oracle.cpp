#include <cmath>

#include "cone/oracle.hpp"

namespace cone {

namespace {

void check_toy_args(int decision, double y) {
  if (decision < 0 || decision > 2) {
    throw std::domain_error("toy oracle: decision must be 0, 1 or 2");
  }
  if (!(y >= 0.0 && y <= 2.0)) {
    throw std::domain_error("toy oracle: y must lie in [0, 2]");
  }
}

}  // namespace

double toy_mean(int decision, double y) {
  check_toy_args(decision, y);
  switch (decision) {
    case 0:
      return 10.0 / ((y + 1.0) * (y + 1.0)) * std::sin(std::exp(y + 1.0));
    case 1:
      return 0.0;
    default:
      return -10.0 / ((y + 0.8) * (y + 0.8)) * std::sin(std::exp(y + 0.8));
  }
}

double toy_std(int decision, double y) {
  check_toy_args(decision, y);
  const double freq[3] = {16.0, 8.0, 4.0};
  return 0.5 * (std::sin(freq[decision] * y) + 1.2);
}

double toy_sample(int decision, double y, Rng& rng, double noise_scale) {
  return normal(rng, toy_mean(decision, y), toy_std(decision, y) * noise_scale);
}

int toy_true_best(double y) {
  int best = 0;
  double best_val = toy_mean(0, y);
  for (int x = 1; x < 3; ++x) {
    const double v = toy_mean(x, y);
    if (v < best_val) {
      best_val = v;
      best = x;
    }
  }
  return best;
}

ToyOracle::ToyOracle(double noise_scale)
    : box_(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, 2.0)),
      noise_scale_(noise_scale) {}

double ToyOracle::sample(int decision, const Context& y, Rng& rng) const {
  return toy_sample(decision, y[0], rng, noise_scale_);
}

double ToyOracle::true_mean(int decision, const Context& y) const {
  return toy_mean(decision, y[0]);
}

int ToyOracle::true_best(const Context& y, Rng& /*rng*/) const {
  return toy_true_best(y[0]);
}

}  // namespace cone
