#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gaitshift {

/// The four locomotion modes the classifier distinguishes. Walk covers level
/// walking, standing and ramp walking.
enum class LocomotionMode : std::uint8_t { Walk, Sit, StairAscent, StairDescent };

/// The six mode transitions the state machine can fire.
enum class Transition : std::uint8_t {
  WalkToSit,
  SitToWalk,
  WalkToStairAscent,
  StairAscentToWalk,
  WalkToStairDescent,
  StairDescentToWalk,
};

inline constexpr std::array<Transition, 6> kAllTransitions = {
    Transition::WalkToSit,          Transition::SitToWalk,
    Transition::WalkToStairAscent,  Transition::StairAscentToWalk,
    Transition::WalkToStairDescent, Transition::StairDescentToWalk,
};

/// Transitions are tuned in forward/backward pairs that share a feature.
enum class TransitionPair : std::uint8_t { SitPair, AscentPair, DescentPair };

/// Scalar gait features sampled at key gait moments.
/// Icf1 is the thigh angle at maximum hip flexion, Icf2 the drop between that
/// maximum and the heel-strike angle, Icf3 the thigh angular velocity sampled
/// when the angle first enters the configured band.
enum class IcfId : std::uint8_t { Icf1, Icf2, Icf3 };

/// Whether a transition fires when its feature exceeds the threshold or falls
/// below it. Strict comparison in both cases.
enum class BoundType : std::uint8_t { Exceed, FallBelow };

enum class SystemTag : std::uint8_t { EWalk, Autonomyo, Custom };

Transition opposite(Transition t);
TransitionPair pair_of(Transition t);
std::array<Transition, 2> transitions_of(TransitionPair pair);
IcfId icf_for(Transition t);
LocomotionMode source_mode(Transition t);
LocomotionMode target_mode(Transition t);

std::string_view to_string(LocomotionMode m);
std::string_view to_string(Transition t);
std::string_view to_string(TransitionPair p);
std::string_view to_string(IcfId id);
std::string_view to_string(BoundType b);
std::string_view to_string(SystemTag s);

std::optional<LocomotionMode> parse_mode(std::string_view s);
std::optional<Transition> parse_transition(std::string_view s);
std::optional<TransitionPair> parse_pair(std::string_view s);
std::optional<BoundType> parse_bound(std::string_view s);
std::optional<SystemTag> parse_system(std::string_view s);

}  // namespace gaitshift
