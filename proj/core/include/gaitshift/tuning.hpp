#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "gaitshift/errors.hpp"
#include "gaitshift/evaluation.hpp"
#include "gaitshift/gp.hpp"
#include "gaitshift/thresholds.hpp"

namespace gaitshift {

/// Two-dimensional threshold search region for one transition pair. Axis 0 is
/// the forward (leaving Walk) transition, axis 1 the return transition.
struct SearchSpace {
  TransitionPair pair = TransitionPair::DescentPair;
  std::array<double, 2> low{0.0, 0.0};
  std::array<double, 2> high{25.0, 25.0};

  static SearchSpace for_pair(TransitionPair pair);
  double grid_step() const;  // 10 degrees for the sit pair, 2.5 otherwise
};

/// Objective weights. The mismatch costs satisfy C1 > C2, and the soft limit
/// penalizes stair-ascent thresholds above 55 degrees and stair-descent
/// thresholds below 5 degrees.
struct ObjectiveConfig {
  double c1 = 0.005;
  double c2 = 0.001;
  double alpha = 2e-5;
  std::optional<double> upper_limit;
  std::optional<double> lower_limit;

  static ObjectiveConfig for_pair(TransitionPair pair);
};

/// (alpha/2) * sum of squared per-axis limit violations; zero inside the
/// allowed region and continuous at its boundary.
double regularization_penalty(const std::array<double, 2>& th,
                              const ObjectiveConfig& config);

/// Frame-mismatch cost for one trial: C1 for every frame whose ground truth
/// is the target class while the machine disagrees, and, once the target
/// class has appeared in the ground truth, C2 for every frame labeled Walk
/// where the machine is elsewhere. Sequences must have equal length.
double accumulate_objective(const std::vector<LocomotionMode>& gt,
                            const std::vector<LocomotionMode>& machine,
                            LocomotionMode target_class,
                            const ObjectiveConfig& config);

/// Builds the replay-based objective J(th) over labeled trials for one pair.
/// Detection events are independent of the thresholds, so each trial's event
/// stream is computed once and re-scored per candidate. Every trial must be
/// fully labeled and contain the pair's forward transition.
std::function<double(const std::array<double, 2>&)> make_trial_objective(
    const std::vector<Trial>& trials, const ThresholdSet& base,
    const DetectorConfig& detector, TransitionPair pair,
    const ObjectiveConfig& config);

/// Substitutes a pair's two thresholds into a base set.
ThresholdSet with_pair_thresholds(const ThresholdSet& base, TransitionPair pair,
                                  const std::array<double, 2>& th);

struct TuneResult {
  std::array<double, 2> best_th{0.0, 0.0};
  double best_j = 0.0;
  std::vector<std::pair<std::array<double, 2>, double>> trace;  // in order
  std::size_t evaluations = 0;
  unsigned seed = 0;
};

struct BoConfig {
  std::size_t budget = 30;      // total objective evaluations, seeds included
  std::size_t n_init = 5;       // quasi-random seed points
  double k = 0.5;               // acquisition exploitation weight
  unsigned seed = 0;
  std::size_t lattice = 101;    // per-axis acquisition grid resolution
  bool early_stop = false;      // stop after `stall` evaluations w/o improvement
  std::size_t stall = 10;
  bool refit_lengthscale = false;
};

/// Scrambled Halton points (bases 2 and 3) with a seeded rotation, mapped to
/// the search space.
std::vector<std::array<double, 2>> quasi_random_points(const SearchSpace& space,
                                                       std::size_t count,
                                                       unsigned seed);

/// Minimizes the acquisition over the normalized lattice, skipping excluded
/// lattice indices; ties break toward the lowest row-major index. Returns the
/// denormalized point plus its lattice index.
struct LatticePoint {
  std::array<double, 2> th{0.0, 0.0};
  std::size_t flat_index = 0;
};
LatticePoint argmin_acquisition(const GpModel& model, const SearchSpace& space,
                                double k, std::size_t resolution = 101,
                                const std::vector<bool>* excluded = nullptr);

/// Seed, then alternate surrogate fit, acquisition minimization and
/// evaluation until the budget is spent. Deterministic under a fixed seed.
TuneResult bo_optimize(const std::function<double(const std::array<double, 2>&)>& objective,
                       const SearchSpace& space, const BoConfig& config = {});

/// Evaluates the full inclusive lattice at the pair's grid step; ties break
/// toward the lowest index.
TuneResult grid_search(const std::function<double(const std::array<double, 2>&)>& objective,
                       const SearchSpace& space);

/// First two instances train, the rest evaluate; an optional seed shuffles
/// before splitting. Requires at least five instances.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_train_eval(
    std::vector<T> instances, std::optional<unsigned> shuffle_seed = std::nullopt) {
  if (instances.size() < 5)
    throw InvalidInputError("train/eval split needs at least 5 instances");
  if (shuffle_seed) {
    std::mt19937 gen(*shuffle_seed);
    std::shuffle(instances.begin(), instances.end(), gen);
  }
  std::vector<T> train(instances.begin(), instances.begin() + 2);
  std::vector<T> eval(instances.begin() + 2, instances.end());
  return {std::move(train), std::move(eval)};
}

}  // namespace gaitshift
