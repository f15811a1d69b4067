#include "cone/kriging.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace cone {

void BatchedDesign::add(int decision, const Context& y, const std::vector<double>& replications) {
  if (decision < 0 || decision >= n_decisions()) {
    throw std::invalid_argument("BatchedDesign::add: decision index out of range");
  }
  const int l = static_cast<int>(replications.size());
  if (l < 2) {
    throw std::invalid_argument("BatchedDesign::add: batch variance needs >= 2 replications");
  }
  DesignPoint pt;
  pt.context = y;
  pt.batch_size = l;
  double sum = 0.0;
  for (double v : replications) sum += v;
  pt.batch_mean = sum / l;
  double ss = 0.0;
  for (double v : replications) ss += (v - pt.batch_mean) * (v - pt.batch_mean);
  pt.batch_variance = ss / (l - 1);
  per_decision[static_cast<size_t>(decision)].push_back(std::move(pt));
}

namespace {

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& inputs, double ell, double s2) {
  const Eigen::Index n = inputs.cols();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = s2;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (inputs.col(i) - inputs.col(j)).squaredNorm();
      k(i, j) = k(j, i) = s2 * std::exp(-d2 / (2.0 * ell * ell));
    }
  }
  return k;
}

// LLT with jitter escalation: 1e-10 growing tenfold up to 1e-4.
Eigen::LLT<Eigen::MatrixXd> factorize(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return llt;
  for (double jitter = 1e-10; jitter <= 1e-4; jitter *= 10.0) {
    Eigen::MatrixXd bumped = cov;
    bumped.diagonal().array() += jitter;
    llt.compute(bumped);
    if (llt.info() == Eigen::Success) return llt;
  }
  throw std::runtime_error("kriging: covariance not positive definite after jitter escalation");
}

double log_marginal_likelihood(const Eigen::LLT<Eigen::MatrixXd>& llt,
                               const Eigen::VectorXd& residual) {
  const Eigen::VectorXd alpha = llt.solve(residual);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  }
  const double n = static_cast<double>(residual.size());
  return -0.5 * residual.dot(alpha) - 0.5 * log_det - 0.5 * n * std::log(2.0 * M_PI);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  const double step = (std::log(hi) - std::log(lo)) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = std::exp(std::log(lo) + step * i);
  return out;
}

}  // namespace

GpModel GpModel::fit(const ContextBox& box, const std::vector<DesignPoint>& design) {
  const int n = static_cast<int>(design.size());
  if (n < 2) {
    throw std::invalid_argument("GpModel::fit: need at least 2 design points");
  }

  Eigen::MatrixXd inputs(box.dim(), n);
  Eigen::VectorXd means(n), nugget(n);
  for (int i = 0; i < n; ++i) {
    const auto& pt = design[static_cast<size_t>(i)];
    inputs.col(i) = box.normalize(pt.context);
    means[i] = pt.batch_mean;
    nugget[i] = pt.batch_variance / pt.batch_size;  // variance of the batch mean
  }

  const double mu0 = means.mean();
  const Eigen::VectorXd residual = means.array() - mu0;
  double var_means = 0.0;
  for (int i = 0; i < n; ++i) var_means += residual[i] * residual[i];
  var_means /= std::max(1, n - 1);
  var_means = std::max(var_means, 1e-12);  // constant data still needs a grid

  const double diam = box.normalized_diameter();
  const std::vector<double> ells = log_spaced(0.05 * diam, 2.0 * diam, 10);
  const std::vector<double> s2s = log_spaced(0.01 * var_means, 100.0 * var_means, 10);

  double best_lml = -std::numeric_limits<double>::infinity();
  double best_ell = ells.front(), best_s2 = s2s.front();
  for (double ell : ells) {
    for (double s2 : s2s) {
      Eigen::MatrixXd cov = kernel_matrix(inputs, ell, s2);
      cov.diagonal() += nugget;
      const auto llt = factorize(cov);
      const double lml = log_marginal_likelihood(llt, residual);
      if (lml > best_lml) {
        best_lml = lml;
        best_ell = ell;
        best_s2 = s2;
      }
    }
  }

  GpModel model(box);
  model.inputs_ = std::move(inputs);
  model.length_scale_ = best_ell;
  model.signal_variance_ = best_s2;
  model.prior_mean_ = mu0;
  Eigen::MatrixXd cov = kernel_matrix(model.inputs_, best_ell, best_s2);
  cov.diagonal() += nugget;
  model.weights_ = factorize(cov).solve(residual);
  return model;
}

double GpModel::predict(const Context& query) const {
  const Eigen::VectorXd q = box_.normalize(query);
  double out = prior_mean_;
  const double inv2l2 = 1.0 / (2.0 * length_scale_ * length_scale_);
  for (Eigen::Index i = 0; i < inputs_.cols(); ++i) {
    const double d2 = (inputs_.col(i) - q).squaredNorm();
    out += signal_variance_ * std::exp(-d2 * inv2l2) * weights_[i];
  }
  return out;
}

std::vector<GpModel> fit_all(const BatchedDesign& design) {
  std::vector<GpModel> models;
  models.reserve(static_cast<size_t>(design.n_decisions()));
  for (int x = 0; x < design.n_decisions(); ++x) {
    models.push_back(GpModel::fit(design.box, design.per_decision[static_cast<size_t>(x)]));
  }
  return models;
}

int predict_best_krig(const std::vector<GpModel>& models, const Context& query, Rng& rng) {
  if (models.empty()) throw std::runtime_error("predict_best_krig: no fitted models");
  Eigen::VectorXd post(static_cast<Eigen::Index>(models.size()));
  for (size_t x = 0; x < models.size(); ++x) {
    post[static_cast<Eigen::Index>(x)] = models[x].predict(query);
  }
  return argmin_tiebreak(post, rng);
}

}  // namespace cone
