#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "gaitshift/kinematics.hpp"

namespace gaitshift {

/// Weights for the misalignment basis [1, x, xd, xdd, x*xd, x*xdd, xd*xdd].
/// Inputs are deliberately not normalized, so the weights span scales.
struct MappingWeights {
  std::array<double, 7> w{};
};

inline constexpr std::size_t kMappingBasisSize = 7;

/// Basis row for one sample of angle, velocity, acceleration.
Eigen::RowVector<double, 7> design_row(double x, double xd, double xdd);

/// Stacks one basis row per frame. Requires derivatives present.
Eigen::MatrixXd design_matrix(const std::vector<KinematicFrame>& frames);

struct FitOutcome {
  MappingWeights weights;
  bool rank_deficient = false;  // solved via minimum-norm least squares
};

/// Least-squares weights via the normal equations; rank-deficient systems
/// fall back to the minimum-norm solution and are flagged. Requires at least
/// as many rows as basis functions.
FitOutcome fit_weights(const Eigen::MatrixXd& X, const Eigen::VectorXd& target);

/// The mapped angle phi(x) . w for one frame. Requires derivatives present.
double apply_map(const MappingWeights& weights, const KinematicFrame& frame);
double apply_map(const MappingWeights& weights, double x, double xd, double xdd);

/// Gradient of the squared-error loss 0.5 * |X w - t|^2 at w.
Eigen::Vector<double, 7> loss_gradient(const Eigen::MatrixXd& X,
                                       const Eigen::VectorXd& target,
                                       const MappingWeights& weights);

/// One time-normalized gait cycle, all series the same length.
struct CycleSeries {
  std::vector<double> theta, theta_dot, theta_ddot;
};

/// Linear interpolation of a measured cycle onto n_points equally spaced
/// samples of its own time span. Requires derivatives present and >= 2 frames.
CycleSeries resample_cycle(const std::vector<KinematicFrame>& cycle,
                           std::size_t n_points = 100);

/// Fits mapping weights on resampled cycles against reference angle curves.
/// A single reference cycle is broadcast across all measured cycles;
/// otherwise one reference per measured cycle is required, each matching its
/// cycle's length.
FitOutcome fit_map(const std::vector<CycleSeries>& measured,
                   const std::vector<std::vector<double>>& reference);

struct MappingFitReport {
  double rmse_before = 0.0;  // degrees, measured angle vs reference
  double rmse_after = 0.0;   // degrees, mapped angle vs reference
  double residual_gradient_norm = 0.0;  // loss gradient magnitude at w
  std::size_t n_samples = 0;
  double mhf_mean_before = 0.0;  // mean per-cycle peak of the measured angle
  double mhf_mean_after = 0.0;   // same, after mapping
  double mhf_mean_reference = 0.0;
};

/// Compares measured and mapped cycles against the reference.
MappingFitReport evaluate_map(const MappingWeights& weights,
                              const std::vector<CycleSeries>& measured,
                              const std::vector<std::vector<double>>& reference);

}  // namespace gaitshift
