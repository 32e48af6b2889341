#include "gaitshift/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

const std::vector<double>& reference_for(const std::vector<std::vector<double>>& reference,
                                         std::size_t cycle_idx) {
  return reference.size() == 1 ? reference.front() : reference[cycle_idx];
}

void require_reference_shape(const std::vector<CycleSeries>& measured,
                             const std::vector<std::vector<double>>& reference) {
  if (measured.empty()) throw InvalidInputError("no measured cycles");
  if (reference.empty()) throw InvalidInputError("no reference cycles");
  if (reference.size() != 1 && reference.size() != measured.size())
    throw InvalidInputError("reference count must be 1 or match measured cycles");
  for (std::size_t c = 0; c < measured.size(); ++c) {
    const auto& m = measured[c];
    if (m.theta.size() != m.theta_dot.size() ||
        m.theta.size() != m.theta_ddot.size())
      throw InvalidInputError("cycle series lengths disagree");
    if (reference_for(reference, c).size() != m.theta.size())
      throw InvalidInputError("reference cycle length mismatch");
  }
}

Eigen::MatrixXd stacked_design(const std::vector<CycleSeries>& measured) {
  std::size_t rows = 0;
  for (const auto& m : measured) rows += m.theta.size();
  Eigen::MatrixXd X(rows, kMappingBasisSize);
  std::size_t r = 0;
  for (const auto& m : measured)
    for (std::size_t i = 0; i < m.theta.size(); ++i)
      X.row(static_cast<Eigen::Index>(r++)) =
          design_row(m.theta[i], m.theta_dot[i], m.theta_ddot[i]);
  return X;
}

Eigen::VectorXd stacked_reference(const std::vector<CycleSeries>& measured,
                                  const std::vector<std::vector<double>>& reference) {
  std::size_t rows = 0;
  for (const auto& m : measured) rows += m.theta.size();
  Eigen::VectorXd t(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < measured.size(); ++c)
    for (double v : reference_for(reference, c)) t(static_cast<Eigen::Index>(r++)) = v;
  return t;
}

}  // namespace

Eigen::RowVector<double, 7> design_row(double x, double xd, double xdd) {
  Eigen::RowVector<double, 7> row;
  row << 1.0, x, xd, xdd, x * xd, x * xdd, xd * xdd;
  return row;
}

Eigen::MatrixXd design_matrix(const std::vector<KinematicFrame>& frames) {
  Eigen::MatrixXd X(frames.size(), kMappingBasisSize);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (!f.theta_dot || !f.theta_ddot)
      throw InvalidInputError("design matrix requires derivatives on every frame");
    X.row(static_cast<Eigen::Index>(i)) =
        design_row(f.theta_th, *f.theta_dot, *f.theta_ddot);
  }
  return X;
}

FitOutcome fit_weights(const Eigen::MatrixXd& X, const Eigen::VectorXd& target) {
  if (X.cols() != static_cast<Eigen::Index>(kMappingBasisSize))
    throw InvalidInputError("design matrix must have 7 columns");
  if (X.rows() != target.size())
    throw InvalidInputError("design matrix and target row counts disagree");
  if (X.rows() < static_cast<Eigen::Index>(kMappingBasisSize))
    throw InvalidInputError("need at least 7 samples to fit the mapping");

  FitOutcome out;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(X);
  Eigen::VectorXd w;
  if (cod.rank() < static_cast<Eigen::Index>(kMappingBasisSize)) {
    out.rank_deficient = true;
    w = cod.solve(target);  // minimum-norm least squares
  } else {
    const Eigen::MatrixXd gram = X.transpose() * X;
    w = gram.ldlt().solve(X.transpose() * target);
  }
  for (std::size_t i = 0; i < kMappingBasisSize; ++i)
    out.weights.w[i] = w(static_cast<Eigen::Index>(i));
  return out;
}

double apply_map(const MappingWeights& weights, double x, double xd, double xdd) {
  const auto row = design_row(x, xd, xdd);
  double sum = 0.0;
  for (std::size_t i = 0; i < kMappingBasisSize; ++i)
    sum += row(static_cast<Eigen::Index>(i)) * weights.w[i];
  return sum;
}

double apply_map(const MappingWeights& weights, const KinematicFrame& frame) {
  if (!frame.theta_dot || !frame.theta_ddot)
    throw InvalidInputError("apply_map requires derivatives on the frame");
  return apply_map(weights, frame.theta_th, *frame.theta_dot, *frame.theta_ddot);
}

Eigen::Vector<double, 7> loss_gradient(const Eigen::MatrixXd& X,
                                       const Eigen::VectorXd& target,
                                       const MappingWeights& weights) {
  Eigen::VectorXd w(kMappingBasisSize);
  for (std::size_t i = 0; i < kMappingBasisSize; ++i)
    w(static_cast<Eigen::Index>(i)) = weights.w[i];
  return X.transpose() * (X * w - target);
}

CycleSeries resample_cycle(const std::vector<KinematicFrame>& cycle,
                           std::size_t n_points) {
  if (cycle.size() < 2) throw InvalidInputError("cycle needs at least 2 frames");
  if (n_points < 2) throw InvalidInputError("resampling needs at least 2 points");
  for (const auto& f : cycle)
    if (!f.theta_dot || !f.theta_ddot)
      throw InvalidInputError("resampling requires derivatives on every frame");

  const double t0 = cycle.front().t;
  const double span = cycle.back().t - t0;
  if (!(span > 0.0)) throw InvalidInputError("cycle time span must be positive");

  CycleSeries out;
  out.theta.resize(n_points);
  out.theta_dot.resize(n_points);
  out.theta_ddot.resize(n_points);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = t0 + span * static_cast<double>(i) /
                              static_cast<double>(n_points - 1);
    while (j + 2 < cycle.size() && cycle[j + 1].t < t) ++j;
    const auto& a = cycle[j];
    const auto& b = cycle[j + 1];
    const double u = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    out.theta[i] = a.theta_th + u * (b.theta_th - a.theta_th);
    out.theta_dot[i] = *a.theta_dot + u * (*b.theta_dot - *a.theta_dot);
    out.theta_ddot[i] = *a.theta_ddot + u * (*b.theta_ddot - *a.theta_ddot);
  }
  return out;
}

FitOutcome fit_map(const std::vector<CycleSeries>& measured,
                   const std::vector<std::vector<double>>& reference) {
  require_reference_shape(measured, reference);
  return fit_weights(stacked_design(measured), stacked_reference(measured, reference));
}

MappingFitReport evaluate_map(const MappingWeights& weights,
                              const std::vector<CycleSeries>& measured,
                              const std::vector<std::vector<double>>& reference) {
  require_reference_shape(measured, reference);
  MappingFitReport report;
  double sq_before = 0.0;
  double sq_after = 0.0;
  for (std::size_t c = 0; c < measured.size(); ++c) {
    const auto& m = measured[c];
    const auto& ref = reference_for(reference, c);
    double peak_before = -std::numeric_limits<double>::infinity();
    double peak_after = peak_before;
    double peak_ref = peak_before;
    for (std::size_t i = 0; i < m.theta.size(); ++i) {
      const double mapped =
          apply_map(weights, m.theta[i], m.theta_dot[i], m.theta_ddot[i]);
      sq_before += (m.theta[i] - ref[i]) * (m.theta[i] - ref[i]);
      sq_after += (mapped - ref[i]) * (mapped - ref[i]);
      peak_before = std::max(peak_before, m.theta[i]);
      peak_after = std::max(peak_after, mapped);
      peak_ref = std::max(peak_ref, ref[i]);
      ++report.n_samples;
    }
    report.mhf_mean_before += peak_before;
    report.mhf_mean_after += peak_after;
    report.mhf_mean_reference += peak_ref;
  }
  const double n = static_cast<double>(report.n_samples);
  const double cycles = static_cast<double>(measured.size());
  report.rmse_before = std::sqrt(sq_before / n);
  report.rmse_after = std::sqrt(sq_after / n);
  report.mhf_mean_before /= cycles;
  report.mhf_mean_after /= cycles;
  report.mhf_mean_reference /= cycles;
  report.residual_gradient_norm =
      loss_gradient(stacked_design(measured), stacked_reference(measured, reference),
                    weights)
          .norm();
  return report;
}

}  // namespace gaitshift
