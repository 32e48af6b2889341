#include "gaitshift/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

void validate_hyper(const GpHyper& hyper) {
  if (!(hyper.lengthscale > 0.0)) throw InvalidInputError("lengthscale must be positive");
  if (!(hyper.signal_variance > 0.0))
    throw InvalidInputError("signal variance must be positive");
  if (hyper.noise_variance < 0.0)
    throw InvalidInputError("noise variance must be non-negative");
  if (hyper.jitter < 0.0) throw InvalidInputError("jitter must be non-negative");
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& X, const GpHyper& hyper) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = hyper.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double k = rbf_kernel(X.row(i).transpose(), X.row(j).transpose(), hyper);
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

}  // namespace

double rbf_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  const GpHyper& hyper) {
  if (a.size() != b.size())
    throw InvalidInputError("kernel inputs must have equal dimension");
  const double d2 = (a - b).squaredNorm();
  return hyper.signal_variance *
         std::exp(-d2 / (2.0 * hyper.lengthscale * hyper.lengthscale));
}

GpHyper default_hyper_for(const Eigen::VectorXd& y) {
  GpHyper hyper;
  if (y.size() > 0) {
    const double mean = y.mean();
    const double var = (y.array() - mean).square().sum() / static_cast<double>(y.size());
    hyper.signal_variance = std::max(var, 1e-6);
  }
  hyper.noise_variance = 1e-6 * hyper.signal_variance;
  return hyper;
}

GpModel gp_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const GpHyper& hyper) {
  validate_hyper(hyper);
  if (X.rows() < 1) throw InvalidInputError("GP fit needs at least one point");
  if (X.rows() != y.size())
    throw InvalidInputError("GP fit input/target row counts disagree");

  GpModel model;
  model.X = X;
  model.hyper = hyper;
  model.y_mean = y.mean();
  model.y_centered = y.array() - model.y_mean;

  const Eigen::MatrixXd K = gram(X, hyper);
  double jitter = hyper.jitter;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Eigen::MatrixXd Kn = K;
    Kn.diagonal().array() += hyper.noise_variance + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(Kn);
    if (llt.info() == Eigen::Success) {
      model.chol = llt.matrixL();
      model.alpha = llt.solve(model.y_centered);
      model.jitter_used = jitter;
      return model;
    }
    jitter = std::max(jitter, 1e-12) * 10.0;
  }
  throw NumericalError("GP covariance not positive definite after jitter escalation");
}

GpPrediction gp_predict(const GpModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.X.cols())
    throw InvalidInputError("prediction input dimension mismatch");
  const Eigen::Index n = model.X.rows();
  Eigen::VectorXd ks(n);
  for (Eigen::Index i = 0; i < n; ++i)
    ks(i) = rbf_kernel(model.X.row(i).transpose(), x, model.hyper);

  GpPrediction out;
  out.mean = model.y_mean + ks.dot(model.alpha);
  const Eigen::VectorXd v =
      model.chol.triangularView<Eigen::Lower>().solve(ks);
  const double var = model.hyper.signal_variance - v.squaredNorm();
  out.std = std::sqrt(std::max(var, 0.0));
  return out;
}

double acquisition(const GpModel& model, const Eigen::VectorXd& x, double k) {
  if (k < 0.0 || k > 1.0) throw InvalidInputError("acquisition weight must be in [0, 1]");
  const GpPrediction p = gp_predict(model, x);
  return k * p.mean - (1.0 - k) * p.std;
}

double log_marginal_likelihood(const GpModel& model) {
  const double n = static_cast<double>(model.X.rows());
  double log_det_half = 0.0;
  for (Eigen::Index i = 0; i < model.chol.rows(); ++i)
    log_det_half += std::log(model.chol(i, i));
  return -0.5 * model.y_centered.dot(model.alpha) - log_det_half -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

GpHyper refit_lengthscale(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          GpHyper base, const std::vector<double>& grid) {
  if (grid.empty()) return base;
  GpHyper best = base;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (double ls : grid) {
    GpHyper candidate = base;
    candidate.lengthscale = ls;
    const double lml = log_marginal_likelihood(gp_fit(X, y, candidate));
    if (lml > best_lml) {
      best_lml = lml;
      best = candidate;
    }
  }
  return best;
}

}  // namespace gaitshift
