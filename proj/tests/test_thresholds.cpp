#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "gaitshift/errors.hpp"
#include "gaitshift/thresholds.hpp"
#include "support/oracles.hpp"

using namespace gaitshift;

namespace {

LabeledIcfSet two_clusters(double center0, double center1, std::size_t per_class,
                           double spread, unsigned seed,
                           Transition transition = Transition::WalkToStairAscent) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> noise(0.0, spread);
  LabeledIcfSet set;
  set.transition = transition;
  for (std::size_t i = 0; i < per_class; ++i) {
    set.values.push_back(center0 + noise(gen));
    set.labels.push_back(0);
    set.values.push_back(center1 + noise(gen));
    set.labels.push_back(1);
  }
  return set;
}

}  // namespace

TEST_CASE("published defaults per system") {
  const ThresholdSet ewalk = default_thresholds(SystemTag::EWalk);
  CHECK(ewalk.system == SystemTag::EWalk);
  CHECK(ewalk[Transition::WalkToSit].value == 23.32);
  CHECK(ewalk[Transition::SitToWalk].value == -4.32);
  CHECK(ewalk[Transition::WalkToStairAscent].value == 50.52);
  CHECK(ewalk[Transition::StairAscentToWalk].value == 51.21);
  CHECK(ewalk[Transition::WalkToStairDescent].value == 10.37);
  CHECK(ewalk[Transition::StairDescentToWalk].value == 9.62);
  CHECK(ewalk.thr_low == 62.0);
  CHECK(ewalk.thr_high == 75.0);

  const ThresholdSet autonomyo = default_thresholds(SystemTag::Autonomyo);
  CHECK(autonomyo[Transition::WalkToStairDescent].value == 13.37);
  CHECK(autonomyo.thr_low == 55.0);
  CHECK(autonomyo.thr_high == 70.0);
  // All other thresholds match the ewalk column.
  for (Transition t : kAllTransitions) {
    if (t == Transition::WalkToStairDescent) continue;
    CHECK(autonomyo[t].value == default_thresholds(SystemTag::EWalk)[t].value);
  }

  const ThresholdSet custom = default_thresholds(SystemTag::Custom);
  CHECK(custom.system == SystemTag::Custom);
  for (Transition t : kAllTransitions)
    CHECK(custom[t].value == default_thresholds(SystemTag::EWalk)[t].value);
}

TEST_CASE("bound convention: leaving Walk exceeds, returning falls below") {
  const ThresholdSet set = default_thresholds(SystemTag::EWalk);
  for (Transition t : kAllTransitions) {
    const bool leaves_walk = source_mode(t) == LocomotionMode::Walk;
    CHECK(default_bound(t) == (leaves_walk ? BoundType::Exceed : BoundType::FallBelow));
    CHECK(set[t].bound == default_bound(t));
  }
}

TEST_CASE("search ranges follow the tuning lattices") {
  CHECK(search_range(Transition::WalkToSit) == std::array<double, 2>{-60.0, 60.0});
  CHECK(search_range(Transition::SitToWalk) == std::array<double, 2>{-60.0, 60.0});
  CHECK(search_range(Transition::WalkToStairAscent) == std::array<double, 2>{30.0, 65.0});
  CHECK(search_range(Transition::StairDescentToWalk) == std::array<double, 2>{0.0, 25.0});
}

TEST_CASE("range validation is soft and names the offender") {
  CHECK(validate_threshold_ranges(default_thresholds(SystemTag::EWalk)).empty());
  ThresholdSet set = default_thresholds(SystemTag::EWalk);
  set[Transition::WalkToStairDescent].value = 80.0;
  const auto warnings = validate_threshold_ranges(set);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("W-SD") != std::string::npos);
}

TEST_CASE("stump training matches the exhaustive oracle") {
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    LabeledIcfSet set = two_clusters(10.0, 20.0, 15, 4.0, seed);
    const StumpFit fit = train_stump_1d(set);
    const testing::StumpOracle oracle = testing::stump_brute_force(set.values, set.labels);
    CAPTURE(seed);
    CHECK(fit.accuracy == oracle.best_accuracy);
    // The tie rule keeps the optimal midpoint closest to the grand mean.
    const double mean =
        std::accumulate(set.values.begin(), set.values.end(), 0.0) /
        static_cast<double>(set.values.size());
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& [cand, above] : oracle.optima)
      best_distance = std::min(best_distance, std::abs(cand - mean));
    CHECK(std::abs(fit.threshold - mean) == doctest::Approx(best_distance));
  }
}

TEST_CASE("stump on separated clusters splits the gap perfectly") {
  LabeledIcfSet set;
  set.values = {1.0, 2.0, 3.0, 10.0, 11.0, 12.0};
  set.labels = {0, 0, 0, 1, 1, 1};
  const StumpFit fit = train_stump_1d(set);
  CHECK(fit.accuracy == 1.0);
  CHECK(fit.class1_above);
  CHECK(fit.threshold > 3.0);
  CHECK(fit.threshold < 10.0);

  // Flipped orientation when the transition class sits below.
  for (auto& l : set.labels) l = 1 - l;
  const StumpFit flipped = train_stump_1d(set);
  CHECK(flipped.accuracy == 1.0);
  CHECK(!flipped.class1_above);
}

TEST_CASE("stump requires both classes") {
  LabeledIcfSet set;
  set.values = {1.0, 2.0};
  set.labels = {1, 1};
  CHECK_THROWS_AS(train_stump_1d(set), InvalidInputError);
}

TEST_CASE("logistic boundary lands inside the class gap") {
  const LabeledIcfSet set = two_clusters(10.0, 30.0, 20, 1.0, 7);
  const ThresholdFit fit = train_logistic_1d(set);
  CHECK(fit.class1_above);
  CHECK(!fit.overlap_warning);
  CHECK(fit.threshold > 15.0);
  CHECK(fit.threshold < 25.0);

  LabeledIcfSet reversed = set;
  for (auto& l : reversed.labels) l = 1 - l;
  const ThresholdFit flipped = train_logistic_1d(reversed);
  CHECK(!flipped.class1_above);
}

TEST_CASE("logistic flags unseparated training data") {
  const LabeledIcfSet set = two_clusters(10.0, 12.0, 30, 5.0, 13);
  CHECK(train_logistic_1d(set).overlap_warning);
}

TEST_CASE("threshold set derivation") {
  SUBCASE("no data yields the system defaults") {
    const ThresholdSet out = derive_threshold_set({}, SystemTag::Autonomyo);
    CHECK(out[Transition::WalkToStairDescent].value == 13.37);
  }
  SUBCASE("a full map trains every boundary with the default bounds") {
    std::map<Transition, LabeledIcfSet> sets;
    for (Transition t : kAllTransitions) {
      // Class geometry consistent with the bound convention: the transition
      // class lies above for exceed bounds and below for fall-below bounds.
      const bool above = default_bound(t) == BoundType::Exceed;
      sets[t] = two_clusters(above ? 10.0 : 30.0, above ? 30.0 : 10.0, 10, 1.0,
                             static_cast<unsigned>(t) + 100, t);
    }
    const ThresholdSet out = derive_threshold_set(sets, SystemTag::EWalk);
    for (Transition t : kAllTransitions) {
      CAPTURE(to_string(t));
      CHECK(out[t].bound == default_bound(t));
      CHECK(out[t].value > 12.0);
      CHECK(out[t].value < 28.0);
    }
  }
  SUBCASE("a partial map is rejected") {
    std::map<Transition, LabeledIcfSet> sets;
    sets[Transition::WalkToSit] = two_clusters(0.0, 10.0, 5, 1.0, 5);
    CHECK_THROWS_AS(derive_threshold_set(sets, SystemTag::EWalk), InvalidInputError);
  }
}
