#include <string>

#include "doctest.h"
#include "gaitshift/types.hpp"

using namespace gaitshift;

TEST_CASE("transition topology is consistent") {
  for (Transition t : kAllTransitions) {
    CAPTURE(to_string(t));
    CHECK(opposite(opposite(t)) == t);
    CHECK(source_mode(opposite(t)) == target_mode(t));
    CHECK(target_mode(opposite(t)) == source_mode(t));
    // Every transition has Walk on exactly one side.
    const bool from_walk = source_mode(t) == LocomotionMode::Walk;
    const bool to_walk = target_mode(t) == LocomotionMode::Walk;
    CHECK(from_walk != to_walk);
    // Opposite transitions share a pair and a feature.
    CHECK(pair_of(t) == pair_of(opposite(t)));
    CHECK(icf_for(t) == icf_for(opposite(t)));
  }
}

TEST_CASE("pair membership matches the enum layout") {
  CHECK(transitions_of(TransitionPair::SitPair) ==
        std::array<Transition, 2>{Transition::WalkToSit, Transition::SitToWalk});
  CHECK(transitions_of(TransitionPair::AscentPair) ==
        std::array<Transition, 2>{Transition::WalkToStairAscent,
                                  Transition::StairAscentToWalk});
  CHECK(transitions_of(TransitionPair::DescentPair) ==
        std::array<Transition, 2>{Transition::WalkToStairDescent,
                                  Transition::StairDescentToWalk});
  for (TransitionPair p : {TransitionPair::SitPair, TransitionPair::AscentPair,
                           TransitionPair::DescentPair})
    for (Transition t : transitions_of(p)) CHECK(pair_of(t) == p);
}

TEST_CASE("each pair is gated by its own feature") {
  CHECK(icf_for(Transition::WalkToStairAscent) == IcfId::Icf1);
  CHECK(icf_for(Transition::WalkToStairDescent) == IcfId::Icf2);
  CHECK(icf_for(Transition::WalkToSit) == IcfId::Icf3);
}

TEST_CASE("enum names round-trip through parse") {
  for (LocomotionMode m : {LocomotionMode::Walk, LocomotionMode::Sit,
                           LocomotionMode::StairAscent, LocomotionMode::StairDescent})
    CHECK(parse_mode(to_string(m)) == m);
  for (Transition t : kAllTransitions) CHECK(parse_transition(to_string(t)) == t);
  for (TransitionPair p : {TransitionPair::SitPair, TransitionPair::AscentPair,
                           TransitionPair::DescentPair})
    CHECK(parse_pair(to_string(p)) == p);
  for (BoundType b : {BoundType::Exceed, BoundType::FallBelow})
    CHECK(parse_bound(to_string(b)) == b);
  for (SystemTag s : {SystemTag::EWalk, SystemTag::Autonomyo, SystemTag::Custom})
    CHECK(parse_system(to_string(s)) == s);
}

TEST_CASE("parse rejects unknown names") {
  CHECK(!parse_mode("crawl"));
  CHECK(!parse_transition(""));
  CHECK(!parse_pair("W-S"));
  CHECK(!parse_bound("above"));
  CHECK(!parse_system("exo"));
}
