#pragma once

#include <array>
#include <optional>

#include "gaitshift/kinematics.hpp"
#include "gaitshift/thresholds.hpp"
#include "gaitshift/types.hpp"

namespace gaitshift {

/// One edge of the state machine: fires on a specific ICF at a specific
/// trigger event with a strict threshold comparison.
struct TransitionRule {
  Transition id = Transition::WalkToStairAscent;
  LocomotionMode from = LocomotionMode::Walk;
  LocomotionMode to = LocomotionMode::StairAscent;
  IcfId icf = IcfId::Icf1;
  EventKind trigger = EventKind::Mhf;
  BoundType bound = BoundType::Exceed;
  double threshold = 0.0;
};

struct TransitionEvent {
  double t = 0.0;
  Transition id = Transition::WalkToStairAscent;
  LocomotionMode from = LocomotionMode::Walk;
  LocomotionMode to = LocomotionMode::StairAscent;
  double icf_value = 0.0;
  double threshold_used = 0.0;
};

/// The trigger event kind that carries each transition's feature.
EventKind trigger_for(Transition t);

/// True iff the sample satisfies the rule's strict bound test. The sample's
/// ICF id must match the rule's.
bool evaluate_rule(const TransitionRule& rule, const IcfSample& icf);

/// The six rules in declaration order; evaluation order is fixed and first
/// fire wins.
std::array<TransitionRule, 6> default_rules(const ThresholdSet& set);

/// Four-state machine over annotated gait events. One instance per trial;
/// strictly sequential. Holds no memory besides the current state.
class TransitionFsm {
 public:
  explicit TransitionFsm(const ThresholdSet& set,
                         LocomotionMode start = LocomotionMode::Walk);
  TransitionFsm(const std::array<TransitionRule, 6>& rules, LocomotionMode start);

  struct StepResult {
    LocomotionMode state = LocomotionMode::Walk;
    std::optional<TransitionEvent> fired;
  };

  /// Evaluates rules whose from-state and trigger match the event; at most
  /// one transition fires per event. Events without an ICF never fire.
  StepResult step(const GaitEvent& event);

  void reset(LocomotionMode state);
  LocomotionMode state() const { return state_; }
  const std::array<TransitionRule, 6>& rules() const { return rules_; }

 private:
  std::array<TransitionRule, 6> rules_;
  LocomotionMode state_;
};

}  // namespace gaitshift
