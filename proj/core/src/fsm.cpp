#include "gaitshift/fsm.hpp"

#include "gaitshift/errors.hpp"

namespace gaitshift {

EventKind trigger_for(Transition t) {
  switch (icf_for(t)) {
    case IcfId::Icf1: return EventKind::Mhf;
    case IcfId::Icf2: return EventKind::Hs;
    case IcfId::Icf3: return EventKind::Thr;
  }
  return EventKind::Mhf;
}

bool evaluate_rule(const TransitionRule& rule, const IcfSample& icf) {
  if (icf.id != rule.icf)
    throw InvalidInputError("ICF sample does not match the rule's feature");
  return rule.bound == BoundType::Exceed ? icf.value > rule.threshold
                                         : icf.value < rule.threshold;
}

std::array<TransitionRule, 6> default_rules(const ThresholdSet& set) {
  std::array<TransitionRule, 6> rules;
  for (std::size_t i = 0; i < kAllTransitions.size(); ++i) {
    const Transition t = kAllTransitions[i];
    rules[i] = TransitionRule{t,
                              source_mode(t),
                              target_mode(t),
                              icf_for(t),
                              trigger_for(t),
                              set[t].bound,
                              set[t].value};
  }
  return rules;
}

TransitionFsm::TransitionFsm(const ThresholdSet& set, LocomotionMode start)
    : rules_(default_rules(set)), state_(start) {}

TransitionFsm::TransitionFsm(const std::array<TransitionRule, 6>& rules,
                             LocomotionMode start)
    : rules_(rules), state_(start) {}

TransitionFsm::StepResult TransitionFsm::step(const GaitEvent& event) {
  StepResult result;
  if (event.icf) {
    for (const TransitionRule& rule : rules_) {
      if (rule.from != state_ || rule.trigger != event.kind ||
          rule.icf != event.icf->id)
        continue;
      if (evaluate_rule(rule, *event.icf)) {
        state_ = rule.to;
        result.fired = TransitionEvent{event.t,    rule.id,
                                       rule.from,  rule.to,
                                       event.icf->value, rule.threshold};
        break;
      }
    }
  }
  result.state = state_;
  return result;
}

void TransitionFsm::reset(LocomotionMode state) { state_ = state; }

}  // namespace gaitshift
