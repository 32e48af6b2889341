#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gaitshift/detectors.hpp"
#include "gaitshift/errors.hpp"
#include "gaitshift/synthetic.hpp"
#include "gaitshift/tuning.hpp"

using namespace gaitshift;

TEST_CASE("search spaces and lattice steps per pair") {
  const SearchSpace sit = SearchSpace::for_pair(TransitionPair::SitPair);
  CHECK(sit.low == std::array<double, 2>{-60.0, -60.0});
  CHECK(sit.high == std::array<double, 2>{60.0, 60.0});
  CHECK(sit.grid_step() == 10.0);

  const SearchSpace ascent = SearchSpace::for_pair(TransitionPair::AscentPair);
  CHECK(ascent.low == std::array<double, 2>{30.0, 30.0});
  CHECK(ascent.high == std::array<double, 2>{65.0, 65.0});
  CHECK(ascent.grid_step() == 2.5);

  const SearchSpace descent = SearchSpace::for_pair(TransitionPair::DescentPair);
  CHECK(descent.low == std::array<double, 2>{0.0, 0.0});
  CHECK(descent.high == std::array<double, 2>{25.0, 25.0});
}

TEST_CASE("objective configs carry the soft limits") {
  const ObjectiveConfig ascent = ObjectiveConfig::for_pair(TransitionPair::AscentPair);
  CHECK(ascent.c1 == 0.005);
  CHECK(ascent.c2 == 0.001);
  CHECK(ascent.upper_limit == 55.0);
  CHECK(!ascent.lower_limit.has_value());

  const ObjectiveConfig descent = ObjectiveConfig::for_pair(TransitionPair::DescentPair);
  CHECK(descent.lower_limit == 5.0);
  CHECK(!descent.upper_limit.has_value());

  const ObjectiveConfig sit = ObjectiveConfig::for_pair(TransitionPair::SitPair);
  CHECK(!sit.upper_limit.has_value());
  CHECK(!sit.lower_limit.has_value());
}

TEST_CASE("regularization penalty arithmetic") {
  ObjectiveConfig config = ObjectiveConfig::for_pair(TransitionPair::AscentPair);
  // Inside the limit: free.
  CHECK(regularization_penalty({55.0, 40.0}, config) == 0.0);
  // (2e-5 / 2) * (2.5^2 + 2.5^2) = 1.25e-4.
  CHECK(regularization_penalty({57.5, 57.5}, config) == doctest::Approx(1.25e-4));
  // One axis only.
  CHECK(regularization_penalty({57.5, 50.0}, config) == doctest::Approx(6.25e-5));

  config = ObjectiveConfig::for_pair(TransitionPair::DescentPair);
  CHECK(regularization_penalty({5.0, 25.0}, config) == 0.0);
  CHECK(regularization_penalty({3.0, 7.0}, config) == doctest::Approx(4e-5));
}

TEST_CASE("frame mismatch accumulation") {
  using M = LocomotionMode;
  const ObjectiveConfig config;

  SUBCASE("perfect tracking is free") {
    const std::vector<M> gt{M::Walk, M::StairAscent, M::Walk};
    CHECK(accumulate_objective(gt, gt, M::StairAscent, config) == 0.0);
  }
  SUBCASE("ten missed class frames cost exactly ten C1") {
    const std::vector<M> gt(10, M::StairAscent);
    const std::vector<M> machine(10, M::Walk);
    CHECK(accumulate_objective(gt, machine, M::StairAscent, config) == 0.05);
  }
  SUBCASE("walk mismatches count only after the class has appeared") {
    const std::vector<M> gt{M::Walk, M::Walk, M::StairAscent, M::StairAscent,
                            M::Walk, M::Walk, M::Walk};
    const std::vector<M> machine{M::Walk, M::Walk, M::Walk, M::Walk,
                                 M::StairAscent, M::StairAscent, M::Walk};
    // Two missed class frames, then two late-return frames.
    CHECK(accumulate_objective(gt, machine, M::StairAscent, config) ==
          doctest::Approx(2 * 0.005 + 2 * 0.001));

    // Before the class ever appears, walk mismatches are free.
    const std::vector<M> gt_walk{M::Walk, M::Walk};
    const std::vector<M> machine_off{M::StairAscent, M::Walk};
    CHECK(accumulate_objective(gt_walk, machine_off, M::StairAscent, config) == 0.0);
  }
  SUBCASE("length mismatch is rejected") {
    CHECK_THROWS_AS(accumulate_objective({M::Walk}, {}, M::Sit, config),
                    InvalidInputError);
  }
}

TEST_CASE("threshold substitution touches exactly the pair") {
  const ThresholdSet base = default_thresholds(SystemTag::EWalk);
  const ThresholdSet out =
      with_pair_thresholds(base, TransitionPair::DescentPair, {7.5, 8.5});
  CHECK(out[Transition::WalkToStairDescent].value == 7.5);
  CHECK(out[Transition::StairDescentToWalk].value == 8.5);
  CHECK(out[Transition::WalkToStairAscent].value == 50.52);
  CHECK(out[Transition::WalkToSit].value == 23.32);
  // Bounds survive substitution.
  CHECK(out[Transition::WalkToStairDescent].bound == BoundType::Exceed);
}

TEST_CASE("quasi-random seeding is deterministic, seeded and in-space") {
  const SearchSpace space = SearchSpace::for_pair(TransitionPair::DescentPair);
  const auto a = quasi_random_points(space, 5, 42);
  const auto b = quasi_random_points(space, 5, 42);
  const auto c = quasi_random_points(space, 5, 43);
  CHECK(a == b);
  CHECK(a != c);
  REQUIRE(a.size() == 5);
  for (const auto& p : a) {
    CHECK(p[0] >= space.low[0]);
    CHECK(p[0] <= space.high[0]);
    CHECK(p[1] >= space.low[1]);
    CHECK(p[1] <= space.high[1]);
  }
  // Distinct points (a degenerate design would stall the surrogate).
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      CHECK((a[i][0] != a[j][0] || a[i][1] != a[j][1]));
}

TEST_CASE("acquisition minimization ties break to the lowest lattice index") {
  // A constant-mean posterior under pure exploitation scores every lattice
  // point identically.
  Eigen::MatrixXd X(2, 2);
  X << 0.2, 0.2, 0.8, 0.8;
  Eigen::VectorXd y(2);
  y << 1.0, 1.0;
  const GpModel model = gp_fit(X, y, default_hyper_for(y));
  const SearchSpace space = SearchSpace::for_pair(TransitionPair::DescentPair);

  const LatticePoint first = argmin_acquisition(model, space, 1.0, 11);
  CHECK(first.flat_index == 0);
  CHECK(first.th == std::array<double, 2>{0.0, 0.0});

  // Excluding the winner moves to the next index in row-major order.
  std::vector<bool> excluded(11 * 11, false);
  excluded[0] = true;
  const LatticePoint second = argmin_acquisition(model, space, 1.0, 11, &excluded);
  CHECK(second.flat_index == 1);
  CHECK(second.th[0] == 0.0);
  CHECK(second.th[1] == doctest::Approx(2.5));

  std::vector<bool> all(11 * 11, true);
  CHECK_THROWS_AS(argmin_acquisition(model, space, 1.0, 11, &all), InvalidInputError);
}

TEST_CASE("optimization on a convex bowl lands within one grid cell") {
  const SearchSpace space = SearchSpace::for_pair(TransitionPair::DescentPair);
  const std::array<double, 2> minimum{12.5, 10.0};
  const auto bowl = [&](const std::array<double, 2>& th) {
    const double dx = th[0] - minimum[0];
    const double dy = th[1] - minimum[1];
    return dx * dx + dy * dy;
  };

  BoConfig config;
  config.seed = 1;
  const TuneResult result = bo_optimize(bowl, space, config);
  CHECK(result.evaluations <= 30);
  CHECK(result.trace.size() == result.evaluations);
  CHECK(std::abs(result.best_th[0] - minimum[0]) <= 2.5);
  CHECK(std::abs(result.best_th[1] - minimum[1]) <= 2.5);
  // best_j is the trace minimum.
  double trace_min = result.trace.front().second;
  for (const auto& [th, j] : result.trace) trace_min = std::min(trace_min, j);
  CHECK(result.best_j == trace_min);
}

TEST_CASE("optimization is deterministic under a fixed seed") {
  const SearchSpace space = SearchSpace::for_pair(TransitionPair::AscentPair);
  const auto objective = [](const std::array<double, 2>& th) {
    return std::sin(th[0] * 0.1) + std::cos(th[1] * 0.17) + 0.01 * th[0];
  };
  BoConfig config;
  config.seed = 7;
  const TuneResult a = bo_optimize(objective, space, config);
  const TuneResult b = bo_optimize(objective, space, config);
  CHECK(a.trace == b.trace);
  CHECK(a.best_th == b.best_th);
  CHECK(a.seed == 7);
}

TEST_CASE("a budget equal to the initial design returns its best point") {
  const SearchSpace space = SearchSpace::for_pair(TransitionPair::DescentPair);
  std::size_t calls = 0;
  const auto objective = [&](const std::array<double, 2>& th) {
    ++calls;
    return th[0] + th[1];
  };
  BoConfig config;
  config.budget = config.n_init;
  const TuneResult result = bo_optimize(objective, space, config);
  CHECK(calls == config.n_init);
  CHECK(result.evaluations == config.n_init);

  config.budget = 2;  // below the initial design
  CHECK_THROWS_AS(bo_optimize(objective, space, config), InvalidInputError);
}

TEST_CASE("grid search walks the full inclusive lattice") {
  std::size_t calls = 0;
  const auto count_only = [&](const std::array<double, 2>&) {
    ++calls;
    return 1.0;
  };

  calls = 0;
  grid_search(count_only, SearchSpace::for_pair(TransitionPair::SitPair));
  CHECK(calls == 169);  // 13 x 13 at a 10-degree step

  calls = 0;
  grid_search(count_only, SearchSpace::for_pair(TransitionPair::AscentPair));
  CHECK(calls == 225);  // 15 x 15 at 2.5 degrees

  calls = 0;
  const TuneResult flat =
      grid_search(count_only, SearchSpace::for_pair(TransitionPair::DescentPair));
  CHECK(calls == 121);  // 11 x 11 at 2.5 degrees
  CHECK(flat.evaluations == 121);
  // Ties keep the first (lowest-index) lattice point.
  CHECK(flat.best_th == std::array<double, 2>{0.0, 0.0});

  // The lattice includes both endpoints.
  bool saw_high = false;
  for (const auto& [th, j] : flat.trace)
    if (th[0] == 25.0 && th[1] == 25.0) saw_high = true;
  CHECK(saw_high);

  // A quadratic picks its on-lattice minimum.
  const TuneResult quad = grid_search(
      [](const std::array<double, 2>& th) {
        const double dx = th[0] - 7.4;
        const double dy = th[1] - 17.6;
        return dx * dx + dy * dy;
      },
      SearchSpace::for_pair(TransitionPair::DescentPair));
  CHECK(quad.best_th == std::array<double, 2>{7.5, 17.5});
}

TEST_CASE("trial objectives validate their inputs") {
  ScenarioParams params;
  const Trial walk_only = generate_synthetic_trial({{LocomotionMode::Walk, 3}}, params);
  const ThresholdSet base = default_thresholds(SystemTag::EWalk);
  const DetectorConfig detector = detector_defaults(SystemTag::EWalk);
  const ObjectiveConfig config = ObjectiveConfig::for_pair(TransitionPair::DescentPair);

  SUBCASE("a trial without the pair's transition is rejected") {
    CHECK_THROWS_AS(make_trial_objective({walk_only}, base, detector,
                                         TransitionPair::DescentPair, config),
                    InvalidInputError);
  }
  SUBCASE("an unlabeled frame is rejected") {
    Trial damaged = scenario_deadline_descent(params);
    damaged.frames[10].label.reset();
    CHECK_THROWS_AS(make_trial_objective({damaged}, base, detector,
                                         TransitionPair::DescentPair, config),
                    InvalidInputError);
  }
  SUBCASE("no trials at all are rejected") {
    CHECK_THROWS_AS(make_trial_objective({}, base, detector,
                                         TransitionPair::DescentPair, config),
                    InvalidInputError);
  }
  SUBCASE("a valid trial yields a reusable objective") {
    const auto objective = make_trial_objective(
        {scenario_deadline_descent(params)}, base, detector,
        TransitionPair::DescentPair, config);
    const double j1 = objective({7.5, 7.5});
    const double j2 = objective({7.5, 7.5});
    CHECK(j1 == j2);  // cached events make evaluation pure
    CHECK(j1 >= 0.0);
    // An entry threshold above every observed drop never fires, so the
    // whole descent bout is mismatched and the cost rises.
    CHECK(objective({20.0, 20.0}) > j1);
  }
}

TEST_CASE("train/eval split keeps two instances for training") {
  std::vector<int> five{1, 2, 3, 4, 5};
  const auto [train, eval] = split_train_eval(five);
  CHECK(train == std::vector<int>{1, 2});
  CHECK(eval == std::vector<int>{3, 4, 5});

  CHECK_THROWS_AS(split_train_eval(std::vector<int>{1, 2, 3, 4}), InvalidInputError);

  // Seeded shuffles are reproducible.
  const auto [t1, e1] = split_train_eval(five, 9u);
  const auto [t2, e2] = split_train_eval(five, 9u);
  CHECK(t1 == t2);
  CHECK(e1 == e2);
  std::vector<int> merged = t1;
  merged.insert(merged.end(), e1.begin(), e1.end());
  std::sort(merged.begin(), merged.end());
  CHECK(merged == five);
}
