#include "cone/core.hpp"

#include <cmath>
#include <string>

namespace cone {

ContextBox::ContextBox(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() == 0 || lower_.size() != upper_.size()) {
    throw std::invalid_argument("ContextBox: bounds must be nonempty and of equal dimension");
  }
  for (Eigen::Index k = 0; k < lower_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]) || !(lower_[k] < upper_[k])) {
      throw std::invalid_argument("ContextBox: requires finite lower[k] < upper[k]");
    }
  }
}

bool ContextBox::contains(const Context& y) const {
  if (y.size() != lower_.size()) return false;
  return (y.array() >= lower_.array()).all() && (y.array() <= upper_.array()).all();
}

Eigen::VectorXd ContextBox::normalize(const Context& y) const {
  return (y - lower_).cwiseQuotient(upper_ - lower_);
}

Dataset::Dataset(ContextBox box, int n_decisions)
    : box_(std::move(box)), n_decisions_(n_decisions) {
  if (n_decisions_ < 2) {
    throw std::invalid_argument("Dataset: need at least 2 decisions");
  }
  by_decision_.resize(static_cast<size_t>(n_decisions_));
}

void Dataset::append(int decision, const Context& y, double value) {
  if (decision < 0 || decision >= n_decisions_) {
    throw std::invalid_argument("Dataset::append: decision index out of range");
  }
  if (!box_.contains(y)) {
    throw std::domain_error("Dataset::append: context outside the context box");
  }
  if (!std::isfinite(value)) {
    throw std::invalid_argument("Dataset::append: non-finite observation value");
  }
  Observation obs;
  obs.decision = decision;
  obs.context = y;
  obs.value = value;
  obs.stage = size() + 1;
  by_decision_[static_cast<size_t>(decision)].push_back(size());
  normalized_.push_back(box_.normalize(y));
  observations_.push_back(std::move(obs));
}

const std::vector<int>& Dataset::indices_for(int decision) const {
  if (decision < 0 || decision >= n_decisions_) {
    throw std::invalid_argument("Dataset::indices_for: decision index out of range");
  }
  return by_decision_[static_cast<size_t>(decision)];
}

double decision_loss(LossMetric metric, double f_selected, double f_optimal) {
  if (!std::isfinite(f_selected) || !std::isfinite(f_optimal)) {
    throw std::invalid_argument("decision_loss: non-finite input");
  }
  switch (metric) {
    case LossMetric::PFS:
      return f_selected != f_optimal ? 1.0 : 0.0;
    case LossMetric::EOC:
      return std::abs(f_selected - f_optimal);
  }
  throw std::invalid_argument("decision_loss: unknown metric");
}

int argmin_tiebreak(const Eigen::Ref<const Eigen::VectorXd>& values, Rng& rng) {
  if (values.size() == 0) {
    throw std::invalid_argument("argmin_tiebreak: empty input");
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) {
      throw std::invalid_argument("argmin_tiebreak: NaN in input");
    }
  }
  const double best = values.minCoeff();
  int n_ties = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] == best) ++n_ties;
  }
  int pick = n_ties > 1 ? uniform_int(rng, n_ties) : 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] == best && pick-- == 0) return static_cast<int>(i);
  }
  return 0;  // unreachable
}

}  // namespace cone
