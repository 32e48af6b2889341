#include "doctest.h"
#include "gaitshift/errors.hpp"
#include "gaitshift/fsm.hpp"

using namespace gaitshift;

namespace {

GaitEvent event_with(EventKind kind, IcfId id, double value, double t = 1.0) {
  GaitEvent e;
  e.kind = kind;
  e.t = t;
  IcfSample s;
  s.id = id;
  s.value = value;
  s.context = pair_for(id);
  s.t = t;
  e.icf = s;
  return e;
}

GaitEvent bare_event(EventKind kind, double t = 1.0) {
  GaitEvent e;
  e.kind = kind;
  e.t = t;
  return e;
}

}  // namespace

TEST_CASE("each transition fires from its trigger event") {
  CHECK(trigger_for(Transition::WalkToStairAscent) == EventKind::Mhf);
  CHECK(trigger_for(Transition::StairAscentToWalk) == EventKind::Mhf);
  CHECK(trigger_for(Transition::WalkToStairDescent) == EventKind::Hs);
  CHECK(trigger_for(Transition::StairDescentToWalk) == EventKind::Hs);
  CHECK(trigger_for(Transition::WalkToSit) == EventKind::Thr);
  CHECK(trigger_for(Transition::SitToWalk) == EventKind::Thr);
}

TEST_CASE("default rules mirror the threshold set in declaration order") {
  const ThresholdSet set = default_thresholds(SystemTag::EWalk);
  const auto rules = default_rules(set);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Transition t = kAllTransitions[i];
    CAPTURE(to_string(t));
    CHECK(rules[i].id == t);
    CHECK(rules[i].from == source_mode(t));
    CHECK(rules[i].to == target_mode(t));
    CHECK(rules[i].icf == icf_for(t));
    CHECK(rules[i].trigger == trigger_for(t));
    CHECK(rules[i].bound == set[t].bound);
    CHECK(rules[i].threshold == set[t].value);
  }
}

TEST_CASE("rule evaluation uses strict bounds and matching feature ids") {
  TransitionRule rule;
  rule.icf = IcfId::Icf1;
  rule.bound = BoundType::Exceed;
  rule.threshold = 50.0;

  IcfSample sample;
  sample.id = IcfId::Icf1;
  sample.value = 50.0;
  CHECK(!evaluate_rule(rule, sample));  // equality never fires
  sample.value = 50.0001;
  CHECK(evaluate_rule(rule, sample));
  sample.id = IcfId::Icf2;
  // Feeding a rule the wrong feature is a caller bug, not a quiet no-fire.
  CHECK_THROWS_AS(evaluate_rule(rule, sample), InvalidInputError);

  rule.bound = BoundType::FallBelow;
  sample.id = IcfId::Icf1;
  sample.value = 50.0;
  CHECK(!evaluate_rule(rule, sample));
  sample.value = 49.9999;
  CHECK(evaluate_rule(rule, sample));
}

TEST_CASE("the machine walks the published graph") {
  TransitionFsm fsm(default_thresholds(SystemTag::EWalk));
  CHECK(fsm.state() == LocomotionMode::Walk);

  SUBCASE("stair ascent round trip on flexion-maximum events") {
    auto r = fsm.step(event_with(EventKind::Mhf, IcfId::Icf1, 58.0));
    REQUIRE(r.fired.has_value());
    CHECK(r.fired->id == Transition::WalkToStairAscent);
    CHECK(r.fired->icf_value == 58.0);
    CHECK(r.fired->threshold_used == 50.52);
    CHECK(r.state == LocomotionMode::StairAscent);

    r = fsm.step(event_with(EventKind::Mhf, IcfId::Icf1, 25.0));
    REQUIRE(r.fired.has_value());
    CHECK(r.fired->id == Transition::StairAscentToWalk);
    CHECK(r.state == LocomotionMode::Walk);
  }

  SUBCASE("stair descent round trip on heel-strike events") {
    auto r = fsm.step(event_with(EventKind::Hs, IcfId::Icf2, 16.0));
    REQUIRE(r.fired.has_value());
    CHECK(r.fired->id == Transition::WalkToStairDescent);

    r = fsm.step(event_with(EventKind::Hs, IcfId::Icf2, 6.0));
    REQUIRE(r.fired.has_value());
    CHECK(r.fired->id == Transition::StairDescentToWalk);
    CHECK(fsm.state() == LocomotionMode::Walk);
  }

  SUBCASE("sit round trip on band-entry events") {
    auto r = fsm.step(event_with(EventKind::Thr, IcfId::Icf3, 70.0));
    REQUIRE(r.fired.has_value());
    CHECK(r.fired->id == Transition::WalkToSit);
    CHECK(r.state == LocomotionMode::Sit);

    r = fsm.step(event_with(EventKind::Thr, IcfId::Icf3, -70.0));
    REQUIRE(r.fired.has_value());
    CHECK(r.fired->id == Transition::SitToWalk);
  }

  SUBCASE("events without a feature sample never fire") {
    for (EventKind k : {EventKind::Mhf, EventKind::Hs, EventKind::Thr}) {
      const auto r = fsm.step(bare_event(k));
      CHECK(!r.fired.has_value());
      CHECK(r.state == LocomotionMode::Walk);
    }
  }

  SUBCASE("rules outside the current state are inert") {
    // Enter Sit, then present a strong ascent feature: no rule from Sit
    // listens to flexion maxima.
    fsm.step(event_with(EventKind::Thr, IcfId::Icf3, 70.0));
    const auto r = fsm.step(event_with(EventKind::Mhf, IcfId::Icf1, 60.0));
    CHECK(!r.fired.has_value());
    CHECK(r.state == LocomotionMode::Sit);
  }

  SUBCASE("values on the threshold do not fire") {
    const auto r = fsm.step(event_with(EventKind::Mhf, IcfId::Icf1, 50.52));
    CHECK(!r.fired.has_value());
  }
}

TEST_CASE("first matching rule wins and at most one fires per event") {
  // Two artificial rules from Walk listening to the same feature; the
  // declaration order decides.
  std::array<TransitionRule, 6> rules{};
  rules[0] = {Transition::WalkToStairAscent, LocomotionMode::Walk,
              LocomotionMode::StairAscent, IcfId::Icf1, EventKind::Mhf,
              BoundType::Exceed, 10.0};
  rules[1] = {Transition::WalkToStairDescent, LocomotionMode::Walk,
              LocomotionMode::StairDescent, IcfId::Icf1, EventKind::Mhf,
              BoundType::Exceed, 5.0};
  // Remaining slots: inert rules that can never fire.
  for (std::size_t i = 2; i < rules.size(); ++i) {
    rules[i] = rules[1];
    rules[i].from = LocomotionMode::Sit;
    rules[i].threshold = 1e9;
  }

  TransitionFsm fsm(rules, LocomotionMode::Walk);
  const auto r = fsm.step(event_with(EventKind::Mhf, IcfId::Icf1, 20.0));
  REQUIRE(r.fired.has_value());
  CHECK(r.fired->id == Transition::WalkToStairAscent);
  CHECK(r.state == LocomotionMode::StairAscent);

  // The same event cannot fire again from the new state.
  const auto r2 = fsm.step(event_with(EventKind::Mhf, IcfId::Icf1, 20.0));
  CHECK(!r2.fired.has_value());
}

TEST_CASE("reset rewinds the state only") {
  TransitionFsm fsm(default_thresholds(SystemTag::EWalk));
  fsm.step(event_with(EventKind::Thr, IcfId::Icf3, 70.0));
  CHECK(fsm.state() == LocomotionMode::Sit);
  fsm.reset(LocomotionMode::StairDescent);
  CHECK(fsm.state() == LocomotionMode::StairDescent);
  const auto r = fsm.step(event_with(EventKind::Hs, IcfId::Icf2, 6.0));
  REQUIRE(r.fired.has_value());
  CHECK(r.fired->id == Transition::StairDescentToWalk);
}
