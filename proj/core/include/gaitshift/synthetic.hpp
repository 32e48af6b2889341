#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaitshift/evaluation.hpp"
#include "gaitshift/types.hpp"

namespace gaitshift {

/// One bout of a synthetic trial. Walk-like modes emit `cycles` raised-cosine
/// strides; Sit emits a stand-to-sit ramp plus a dwell and ignores `cycles`.
/// `cycle_drops` overrides the heel-strike drop per cycle: empty uses the
/// mode default, one value applies to every cycle, otherwise one per cycle.
struct SegmentSpec {
  LocomotionMode mode = LocomotionMode::Walk;
  std::size_t cycles = 3;
  std::optional<double> amplitude;
  std::vector<double> cycle_drops;
};

/// Shape parameters for the generator. Angles in degrees, times in seconds.
/// The heel-strike drop is how far the thigh angle has fallen from the cycle
/// peak when the foot loads; it must stay inside (0, amplitude - base).
struct ScenarioParams {
  double dt = 0.01;
  double base_angle = 5.0;

  double walk_amplitude = 25.0;
  double walk_period = 1.2;
  double walk_drop = 5.0;

  double ascent_amplitude = 58.0;
  double ascent_period = 1.6;
  double ascent_drop = 12.0;

  double descent_amplitude = 30.0;
  double descent_period = 1.4;
  double descent_drop = 16.0;

  double sit_angle = 90.0;
  double sit_rate = 70.0;  // ramp speed, deg/s
  double sit_dwell = 2.0;

  double stance_fraction = 0.6;  // loaded fraction of a cycle after heel strike

  double noise_std = 0.0;  // Gaussian, applied to the thigh angle only
  unsigned seed = 0;

  SystemTag system = SystemTag::EWalk;
  std::string subject = "synthetic";
};

/// Builds a fully labeled trial from a segment plan. The first segment must
/// be Walk and every non-Walk segment must be bracketed by Walk segments.
/// Frames carry the thigh angle, a binary vertical load, and a mode label;
/// derivatives are left for the estimation pipeline. Ground-truth transitions
/// sit at segment boundaries. The load holds its previous value through sit
/// and stand ramps, so no heel strikes occur there.
Trial generate_synthetic_trial(const std::vector<SegmentSpec>& segments,
                               const ScenarioParams& params);

/// Walk, sit bout, walk, stair ascent, walk, stair descent, walk. Exercises
/// all six transitions exactly once.
Trial scenario_all_transitions(const ScenarioParams& params = {});

/// Walk, then a descent bout whose first two strides are too shallow to
/// detect, then walk. The detector fires two strides late.
Trial scenario_delayed_descent(const ScenarioParams& params = {});

/// Walk, then a descent bout whose first stride is too shallow, then walk.
/// The detector fires exactly at the second heel strike.
Trial scenario_deadline_descent(const ScenarioParams& params = {});

/// Five descent trials for one subject whose strides are shallower than the
/// stock thresholds expect. The first two trials sweep ascending bout depths
/// for training; the last three hold near-uniform bout depths for evaluation.
std::vector<Trial> scenario_descent_subject(const ScenarioParams& params = {});

struct RomScenario {
  std::vector<Trial> training_subject;  // stock-range mover, 3 trials
  std::vector<Trial> new_subject;       // reduced range of motion, 5 trials
};

/// Walk and stair-ascent trials for a training subject with a stock range of
/// motion and a new subject moving at roughly 70 percent of it, for
/// statistics-based threshold rescaling.
RomScenario scenario_rom_subjects(const ScenarioParams& params = {});

}  // namespace gaitshift
