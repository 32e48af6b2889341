#pragma once

#include <map>
#include <string>
#include <vector>

#include "gaitshift/alignment.hpp"
#include "gaitshift/detectors.hpp"
#include "gaitshift/fsm.hpp"
#include "gaitshift/kinematics.hpp"
#include "gaitshift/thresholds.hpp"

namespace gaitshift {

/// A labeled mode change in the ground truth.
struct GtTransition {
  double t = 0.0;
  LocomotionMode from = LocomotionMode::Walk;
  LocomotionMode to = LocomotionMode::Sit;
};

/// One recorded or generated trial. Ground-truth transitions are ordered and
/// every one involves Walk on one side.
struct Trial {
  std::vector<KinematicFrame> frames;
  std::vector<GtTransition> gt_transitions;
  std::string subject = "unknown";
  SystemTag system = SystemTag::EWalk;
  int index = 0;
};

/// Checks ordering, label/transition consistency and the walk-bracketing
/// topology; throws on violation.
void validate_trial(const Trial& trial);

/// Ground-truth transitions from per-frame labels (changes between labeled
/// frames). Frames without labels contribute nothing.
std::vector<GtTransition> derive_gt_transitions(const std::vector<KinematicFrame>& frames);

struct ReplayResult {
  std::vector<TransitionEvent> detections;
  std::vector<LocomotionMode> frame_states;  // machine state at each frame
  std::vector<GaitEvent> events;
};

/// Runs the full pipeline on one trial: optional misalignment correction,
/// derivative estimation, event detection, and a fresh state machine started
/// in the trial's first ground-truth state.
ReplayResult replay(const Trial& trial, const ThresholdSet& thresholds,
                    const DetectorConfig& config,
                    const MappingWeights* map_weights = nullptr);

/// Detection deadline per ground-truth transition: the second heel strike
/// strictly after the onset, or onset + fallback_window when fewer heel
/// strikes remain.
struct StepWindowRule {
  std::vector<double> hs_times;  // ascending
  double fallback_window = 2.4;  // seconds, two nominal step periods

  double deadline(double t_gt) const;
};

/// Window rule built from a replay's heel-strike events.
StepWindowRule make_step_window(const std::vector<GaitEvent>& events,
                                double nominal_step_period);

struct TransitionTally {
  std::size_t n_detected = 0;
  std::size_t n_total = 0;

  double accuracy_percent() const {
    return n_total == 0 ? 0.0
                        : 100.0 * static_cast<double>(n_detected) /
                              static_cast<double>(n_total);
  }
};

struct EvaluationReport {
  std::map<Transition, TransitionTally> per_transition;

  TransitionTally overall() const;
};

/// Greedy chronological one-to-one matching: a ground-truth transition counts
/// as detected iff an unused detection with the same endpoints lands in
/// [onset, deadline]. Duplicate detections match at most one instance.
EvaluationReport compute_accuracy(const std::vector<TransitionEvent>& detections,
                                  const std::vector<GtTransition>& gt_transitions,
                                  const StepWindowRule& window);

void merge_into(EvaluationReport& into, const EvaluationReport& from);

/// Replays each trial and pools the per-transition tallies.
EvaluationReport evaluate_trials(const std::vector<Trial>& trials,
                                 const ThresholdSet& thresholds,
                                 const DetectorConfig& config,
                                 double nominal_step_period = 1.2,
                                 const MappingWeights* map_weights = nullptr);

/// Trigger-feature samples per ground-truth transition: for each instance,
/// the first event of the transition's trigger kind at or after the onset
/// (and before the next ground-truth change) contributes its ICF value.
/// This is the per-transition population the statistics-based tuner consumes.
std::map<Transition, std::vector<double>> collect_transition_icfs(
    const Trial& trial, const DetectorConfig& config);

}  // namespace gaitshift
