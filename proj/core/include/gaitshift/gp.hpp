#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gaitshift {

/// RBF kernel hyperparameters. Inputs are expected normalized to the unit
/// cube, so the default lengthscale is in normalized units.
struct GpHyper {
  double lengthscale = 0.2;
  double signal_variance = 1.0;
  double noise_variance = 1e-6;
  double jitter = 1e-9;
};

/// k(x, x') = signal_variance * exp(-|x - x'|^2 / (2 lengthscale^2)).
double rbf_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  const GpHyper& hyper);

/// Fitted posterior. y is mean-centered internally; the prior mean equals the
/// sample mean. Immutable after fitting.
struct GpModel {
  Eigen::MatrixXd X;        // n x d training inputs
  Eigen::VectorXd y_centered;
  double y_mean = 0.0;
  GpHyper hyper;
  Eigen::MatrixXd chol;     // lower factor of K + (noise + jitter) I
  Eigen::VectorXd alpha;    // (K + (noise + jitter) I)^-1 y_centered
  double jitter_used = 0.0; // after any escalation
};

/// Default hyperparameters from the observations: signal variance from
/// var(y) (floored at 1e-6) with proportional noise.
GpHyper default_hyper_for(const Eigen::VectorXd& y);

/// Cholesky fit of K + (noise + jitter) I. A failed factorization escalates
/// the jitter tenfold up to three times before giving up.
GpModel gp_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const GpHyper& hyper);

struct GpPrediction {
  double mean = 0.0;
  double std = 0.0;  // latent std, excludes observation noise
};

GpPrediction gp_predict(const GpModel& model, const Eigen::VectorXd& x);

/// Confidence-bound score A(x) = k * mean(x) - (1 - k) * std(x); minimized by
/// the optimizer, so larger uncertainty attracts sampling. k in [0, 1].
double acquisition(const GpModel& model, const Eigen::VectorXd& x, double k);

/// Log marginal likelihood of the fitted model.
double log_marginal_likelihood(const GpModel& model);

/// Refits over a lengthscale grid and keeps the likelihood maximizer.
/// Optional; the tuners leave it off for determinism across configurations.
GpHyper refit_lengthscale(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          GpHyper base, const std::vector<double>& grid);

}  // namespace gaitshift
