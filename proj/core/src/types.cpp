#include "gaitshift/types.hpp"

namespace gaitshift {

Transition opposite(Transition t) {
  switch (t) {
    case Transition::WalkToSit: return Transition::SitToWalk;
    case Transition::SitToWalk: return Transition::WalkToSit;
    case Transition::WalkToStairAscent: return Transition::StairAscentToWalk;
    case Transition::StairAscentToWalk: return Transition::WalkToStairAscent;
    case Transition::WalkToStairDescent: return Transition::StairDescentToWalk;
    case Transition::StairDescentToWalk: return Transition::WalkToStairDescent;
  }
  return t;
}

TransitionPair pair_of(Transition t) {
  switch (t) {
    case Transition::WalkToSit:
    case Transition::SitToWalk: return TransitionPair::SitPair;
    case Transition::WalkToStairAscent:
    case Transition::StairAscentToWalk: return TransitionPair::AscentPair;
    default: return TransitionPair::DescentPair;
  }
}

std::array<Transition, 2> transitions_of(TransitionPair pair) {
  switch (pair) {
    case TransitionPair::SitPair:
      return {Transition::WalkToSit, Transition::SitToWalk};
    case TransitionPair::AscentPair:
      return {Transition::WalkToStairAscent, Transition::StairAscentToWalk};
    default:
      return {Transition::WalkToStairDescent, Transition::StairDescentToWalk};
  }
}

IcfId icf_for(Transition t) {
  switch (pair_of(t)) {
    case TransitionPair::SitPair: return IcfId::Icf3;
    case TransitionPair::AscentPair: return IcfId::Icf1;
    default: return IcfId::Icf2;
  }
}

LocomotionMode source_mode(Transition t) {
  switch (t) {
    case Transition::SitToWalk: return LocomotionMode::Sit;
    case Transition::StairAscentToWalk: return LocomotionMode::StairAscent;
    case Transition::StairDescentToWalk: return LocomotionMode::StairDescent;
    default: return LocomotionMode::Walk;
  }
}

LocomotionMode target_mode(Transition t) { return source_mode(opposite(t)); }

std::string_view to_string(LocomotionMode m) {
  switch (m) {
    case LocomotionMode::Walk: return "walk";
    case LocomotionMode::Sit: return "sit";
    case LocomotionMode::StairAscent: return "sa";
    case LocomotionMode::StairDescent: return "sd";
  }
  return "?";
}

std::string_view to_string(Transition t) {
  switch (t) {
    case Transition::WalkToSit: return "W-S";
    case Transition::SitToWalk: return "S-W";
    case Transition::WalkToStairAscent: return "W-SA";
    case Transition::StairAscentToWalk: return "SA-W";
    case Transition::WalkToStairDescent: return "W-SD";
    case Transition::StairDescentToWalk: return "SD-W";
  }
  return "?";
}

std::string_view to_string(TransitionPair p) {
  switch (p) {
    case TransitionPair::SitPair: return "ws-sw";
    case TransitionPair::AscentPair: return "wsa-saw";
    case TransitionPair::DescentPair: return "wsd-sdw";
  }
  return "?";
}

std::string_view to_string(IcfId id) {
  switch (id) {
    case IcfId::Icf1: return "icf1";
    case IcfId::Icf2: return "icf2";
    case IcfId::Icf3: return "icf3";
  }
  return "?";
}

std::string_view to_string(BoundType b) {
  return b == BoundType::Exceed ? "exceed" : "fall_below";
}

std::string_view to_string(SystemTag s) {
  switch (s) {
    case SystemTag::EWalk: return "ewalk";
    case SystemTag::Autonomyo: return "autonomyo";
    case SystemTag::Custom: return "custom";
  }
  return "?";
}

std::optional<LocomotionMode> parse_mode(std::string_view s) {
  if (s == "walk") return LocomotionMode::Walk;
  if (s == "sit") return LocomotionMode::Sit;
  if (s == "sa") return LocomotionMode::StairAscent;
  if (s == "sd") return LocomotionMode::StairDescent;
  return std::nullopt;
}

std::optional<Transition> parse_transition(std::string_view s) {
  for (Transition t : kAllTransitions)
    if (s == to_string(t)) return t;
  return std::nullopt;
}

std::optional<TransitionPair> parse_pair(std::string_view s) {
  // CLI accepts both the short pair tag and the full name.
  if (s == "ws" || s == "ws-sw") return TransitionPair::SitPair;
  if (s == "wsa" || s == "wsa-saw") return TransitionPair::AscentPair;
  if (s == "wsd" || s == "wsd-sdw") return TransitionPair::DescentPair;
  return std::nullopt;
}

std::optional<BoundType> parse_bound(std::string_view s) {
  if (s == "exceed") return BoundType::Exceed;
  if (s == "fall_below") return BoundType::FallBelow;
  return std::nullopt;
}

std::optional<SystemTag> parse_system(std::string_view s) {
  if (s == "ewalk") return SystemTag::EWalk;
  if (s == "autonomyo") return SystemTag::Autonomyo;
  if (s == "custom") return SystemTag::Custom;
  return std::nullopt;
}

}  // namespace gaitshift
