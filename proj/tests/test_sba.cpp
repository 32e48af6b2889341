#include <map>
#include <vector>

#include "doctest.h"
#include "gaitshift/errors.hpp"
#include "gaitshift/sba.hpp"

using namespace gaitshift;

namespace {

IcfStats stats_of(double mean, double std, Transition t) {
  IcfStats s;
  s.mean = mean;
  s.std = std;
  s.n = 10;
  s.transition = t;
  return s;
}

}  // namespace

TEST_CASE("feature statistics use the population standard deviation") {
  const IcfStats s = compute_icf_stats({2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0},
                                       Transition::WalkToStairAscent);
  CHECK(s.mean == doctest::Approx(5.0));
  CHECK(s.std == doctest::Approx(2.0));  // population, not sample
  CHECK(s.n == 8);
  CHECK_THROWS_AS(compute_icf_stats({}, Transition::WalkToSit), InvalidInputError);
}

TEST_CASE("rescaling worked examples") {
  SUBCASE("exceed bound adds the deviation on both sides of the ratio") {
    // 50.52 * (40 + 10) / (50 + 10) = 42.1
    const SbaResult r =
        tune_sba(50.52, stats_of(50.0, 10.0, Transition::WalkToStairAscent),
                 stats_of(40.0, 10.0, Transition::WalkToStairAscent),
                 BoundType::Exceed);
    CHECK(!r.degenerate);
    CHECK(r.threshold == doctest::Approx(42.1));
  }
  SUBCASE("fall-below bound subtracts the deviation") {
    // -4.32 * (-20 - 2) / (-10 - 2) = -7.92
    const SbaResult r = tune_sba(-4.32, stats_of(-10.0, 2.0, Transition::SitToWalk),
                                 stats_of(-20.0, 2.0, Transition::SitToWalk),
                                 BoundType::FallBelow);
    CHECK(!r.degenerate);
    CHECK(r.threshold == doctest::Approx(-7.92));
  }
}

TEST_CASE("identical populations leave the threshold exactly unchanged") {
  const IcfStats same = stats_of(37.5, 4.25, Transition::WalkToStairAscent);
  const SbaResult r = tune_sba(50.52, same, same, BoundType::Exceed);
  CHECK(!r.degenerate);
  CHECK(r.threshold == 50.52);
}

TEST_CASE("degenerate statistics keep the training threshold") {
  SUBCASE("vanishing denominator") {
    // mean + std of the training population cancels to zero.
    const SbaResult r =
        tune_sba(10.0, stats_of(-2.0, 2.0, Transition::WalkToSit),
                 stats_of(5.0, 1.0, Transition::WalkToSit), BoundType::Exceed);
    CHECK(r.degenerate);
    CHECK(r.threshold == 10.0);
  }
  SUBCASE("sign-flipping ratio") {
    const SbaResult r =
        tune_sba(10.0, stats_of(5.0, 1.0, Transition::WalkToSit),
                 stats_of(-5.0, 1.0, Transition::WalkToSit), BoundType::Exceed);
    CHECK(r.degenerate);
    CHECK(r.threshold == 10.0);
  }
}

TEST_CASE("set-level rescaling touches only transitions with both stats") {
  const ThresholdSet base = default_thresholds(SystemTag::EWalk);
  std::map<Transition, IcfStats> training;
  std::map<Transition, IcfStats> subject;
  training[Transition::WalkToStairAscent] =
      stats_of(50.0, 10.0, Transition::WalkToStairAscent);
  subject[Transition::WalkToStairAscent] =
      stats_of(40.0, 10.0, Transition::WalkToStairAscent);
  // Present only on one side: must stay untouched.
  training[Transition::WalkToSit] = stats_of(30.0, 5.0, Transition::WalkToSit);

  const ApplySbaOutcome out = apply_sba(base, training, subject);
  CHECK(out.thresholds[Transition::WalkToStairAscent].value == doctest::Approx(42.1));
  CHECK(out.thresholds[Transition::WalkToSit].value == 23.32);
  CHECK(out.thresholds[Transition::StairDescentToWalk].value == 9.62);
  REQUIRE(out.tuned.size() == 1);
  CHECK(out.tuned[0] == Transition::WalkToStairAscent);
  CHECK(out.degenerate.empty());
}

TEST_CASE("set-level rescaling reports degenerate transitions") {
  const ThresholdSet base = default_thresholds(SystemTag::EWalk);
  std::map<Transition, IcfStats> training;
  std::map<Transition, IcfStats> subject;
  training[Transition::SitToWalk] = stats_of(5.0, 1.0, Transition::SitToWalk);
  subject[Transition::SitToWalk] = stats_of(-5.0, 1.0, Transition::SitToWalk);

  const ApplySbaOutcome out = apply_sba(base, training, subject);
  CHECK(out.thresholds[Transition::SitToWalk].value == -4.32);
  REQUIRE(out.degenerate.size() == 1);
  CHECK(out.degenerate[0] == Transition::SitToWalk);
  CHECK(out.tuned.empty());
}
