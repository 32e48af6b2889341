#pragma once

#include <vector>

#include "gaitshift/kinematics.hpp"

namespace gaitshift {

/// Centered moving average with the window shrunk near the edges.
/// A window <= 1 returns the input unchanged.
std::vector<double> moving_average(const std::vector<double>& values,
                                   std::size_t window);

/// Smooths theta_th with a moving average, then fills theta_dot and
/// theta_ddot from three-point finite differences (one-sided at the ends).
/// The smoothed angle replaces the raw one so downstream consumers see a
/// consistent signal. Exact for polynomials up to degree two when smoothing
/// is disabled. Requires >= 3 frames and strictly increasing timestamps.
std::vector<KinematicFrame> estimate_derivatives(std::vector<KinematicFrame> frames,
                                                 const DetectorConfig& config);

/// Returns the frames with both derivative signals guaranteed present.
/// Fully present signals are kept as-is; fully absent ones are derived
/// (theta_ddot from a caller-supplied theta_dot when only that is missing).
/// A signal present on some frames but not others is rejected.
std::vector<KinematicFrame> ensure_derivatives(std::vector<KinematicFrame> frames,
                                               const DetectorConfig& config);

}  // namespace gaitshift
