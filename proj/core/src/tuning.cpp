#include "gaitshift/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "gaitshift/fsm.hpp"

namespace gaitshift {
namespace {

LocomotionMode target_class_of(TransitionPair pair) {
  return target_mode(transitions_of(pair)[0]);
}

double halton(std::size_t index, std::size_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

struct CachedTrial {
  std::vector<GaitEvent> events;
  std::vector<double> frame_times;
  std::vector<LocomotionMode> labels;
  LocomotionMode start = LocomotionMode::Walk;
};

std::vector<LocomotionMode> machine_states(const CachedTrial& trial,
                                           const ThresholdSet& thresholds) {
  TransitionFsm fsm(thresholds, trial.start);
  std::vector<LocomotionMode> states(trial.frame_times.size());
  std::size_t next_event = 0;
  for (std::size_t i = 0; i < trial.frame_times.size(); ++i) {
    while (next_event < trial.events.size() &&
           trial.events[next_event].t <= trial.frame_times[i]) {
      fsm.step(trial.events[next_event]);
      ++next_event;
    }
    states[i] = fsm.state();
  }
  return states;
}

}  // namespace

SearchSpace SearchSpace::for_pair(TransitionPair pair) {
  SearchSpace space;
  space.pair = pair;
  switch (pair) {
    case TransitionPair::SitPair:
      space.low = {-60.0, -60.0};
      space.high = {60.0, 60.0};
      break;
    case TransitionPair::AscentPair:
      space.low = {30.0, 30.0};
      space.high = {65.0, 65.0};
      break;
    case TransitionPair::DescentPair:
      space.low = {0.0, 0.0};
      space.high = {25.0, 25.0};
      break;
  }
  return space;
}

double SearchSpace::grid_step() const {
  return pair == TransitionPair::SitPair ? 10.0 : 2.5;
}

ObjectiveConfig ObjectiveConfig::for_pair(TransitionPair pair) {
  ObjectiveConfig config;
  switch (pair) {
    case TransitionPair::AscentPair:
      config.upper_limit = 55.0;
      break;
    case TransitionPair::DescentPair:
      config.lower_limit = 5.0;
      break;
    case TransitionPair::SitPair:
      break;
  }
  return config;
}

double regularization_penalty(const std::array<double, 2>& th,
                              const ObjectiveConfig& config) {
  double sum_sq = 0.0;
  for (double v : th) {
    if (config.upper_limit && v > *config.upper_limit)
      sum_sq += (v - *config.upper_limit) * (v - *config.upper_limit);
    if (config.lower_limit && v < *config.lower_limit)
      sum_sq += (v - *config.lower_limit) * (v - *config.lower_limit);
  }
  return (config.alpha / 2.0) * sum_sq;
}

double accumulate_objective(const std::vector<LocomotionMode>& gt,
                            const std::vector<LocomotionMode>& machine,
                            LocomotionMode target_class,
                            const ObjectiveConfig& config) {
  if (gt.size() != machine.size())
    throw InvalidInputError("objective sequences must have equal length");
  std::size_t missed_class = 0;
  std::size_t missed_walk = 0;
  bool class_seen = false;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i] == target_class) {
      class_seen = true;
      if (machine[i] != target_class) ++missed_class;
    } else if (class_seen && gt[i] == LocomotionMode::Walk &&
               machine[i] != LocomotionMode::Walk) {
      ++missed_walk;
    }
  }
  return static_cast<double>(missed_class) * config.c1 +
         static_cast<double>(missed_walk) * config.c2;
}

ThresholdSet with_pair_thresholds(const ThresholdSet& base, TransitionPair pair,
                                  const std::array<double, 2>& th) {
  ThresholdSet out = base;
  const auto transitions = transitions_of(pair);
  out[transitions[0]].value = th[0];
  out[transitions[1]].value = th[1];
  return out;
}

std::function<double(const std::array<double, 2>&)> make_trial_objective(
    const std::vector<Trial>& trials, const ThresholdSet& base,
    const DetectorConfig& detector, TransitionPair pair,
    const ObjectiveConfig& config) {
  if (trials.empty()) throw InvalidInputError("objective needs at least one trial");
  const Transition forward = transitions_of(pair)[0];
  const LocomotionMode target = target_class_of(pair);

  auto cache = std::make_shared<std::vector<CachedTrial>>();
  for (const auto& trial : trials) {
    validate_trial(trial);
    const bool has_forward =
        std::any_of(trial.gt_transitions.begin(), trial.gt_transitions.end(),
                    [&](const GtTransition& gt) {
                      return gt.from == source_mode(forward) &&
                             gt.to == target_mode(forward);
                    });
    if (!has_forward)
      throw InvalidInputError("every trial must contain the tuned pair's transition");

    CachedTrial cached;
    const ReplayResult run = replay(trial, base, detector);
    cached.events = run.events;
    cached.frame_times.reserve(trial.frames.size());
    cached.labels.reserve(trial.frames.size());
    for (const auto& f : trial.frames) {
      if (!f.label)
        throw InvalidInputError("objective trials must be labeled on every frame");
      cached.frame_times.push_back(f.t);
      cached.labels.push_back(*f.label);
    }
    cached.start = cached.labels.front();
    cache->push_back(std::move(cached));
  }

  return [cache, base, pair, target, config](const std::array<double, 2>& th) {
    const ThresholdSet candidate = with_pair_thresholds(base, pair, th);
    double j = 0.0;
    for (const auto& trial : *cache)
      j += accumulate_objective(trial.labels, machine_states(trial, candidate),
                                target, config);
    return j + regularization_penalty(th, config);
  };
}

std::vector<std::array<double, 2>> quasi_random_points(const SearchSpace& space,
                                                       std::size_t count,
                                                       unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::array<double, 2> shift{uniform(gen), uniform(gen)};
  std::vector<std::array<double, 2>> points;
  points.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    std::array<double, 2> u{halton(i, 2), halton(i, 3)};
    std::array<double, 2> p;
    for (std::size_t d = 0; d < 2; ++d) {
      u[d] += shift[d];
      u[d] -= std::floor(u[d]);
      p[d] = space.low[d] + u[d] * (space.high[d] - space.low[d]);
    }
    points.push_back(p);
  }
  return points;
}

LatticePoint argmin_acquisition(const GpModel& model, const SearchSpace& space,
                                double k, std::size_t resolution,
                                const std::vector<bool>* excluded) {
  if (resolution < 2) throw InvalidInputError("lattice resolution must be >= 2");
  double best = std::numeric_limits<double>::infinity();
  LatticePoint out;
  bool found = false;
  Eigen::VectorXd x(2);
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      const std::size_t flat = i * resolution + j;
      if (excluded && flat < excluded->size() && (*excluded)[flat]) continue;
      x(0) = static_cast<double>(i) / static_cast<double>(resolution - 1);
      x(1) = static_cast<double>(j) / static_cast<double>(resolution - 1);
      const double a = acquisition(model, x, k);
      if (a < best) {  // strict: ties keep the lowest row-major index
        best = a;
        out.flat_index = flat;
        out.th = {space.low[0] + x(0) * (space.high[0] - space.low[0]),
                  space.low[1] + x(1) * (space.high[1] - space.low[1])};
        found = true;
      }
    }
  }
  if (!found) throw InvalidInputError("all lattice points excluded");
  return out;
}

TuneResult bo_optimize(const std::function<double(const std::array<double, 2>&)>& objective,
                       const SearchSpace& space, const BoConfig& config) {
  if (config.budget < config.n_init)
    throw InvalidInputError("budget must cover the initial design");
  if (config.n_init == 0) throw InvalidInputError("initial design must be non-empty");

  TuneResult result;
  result.seed = config.seed;
  std::vector<bool> evaluated_lattice(config.lattice * config.lattice, false);

  auto evaluate = [&](const std::array<double, 2>& th) {
    const double j = objective(th);
    result.trace.emplace_back(th, j);
    ++result.evaluations;
    return j;
  };

  for (const auto& p : quasi_random_points(space, config.n_init, config.seed))
    evaluate(p);

  std::size_t since_improvement = 0;
  double best_so_far = std::numeric_limits<double>::infinity();
  for (const auto& [th, j] : result.trace)
    best_so_far = std::min(best_so_far, j);

  while (result.evaluations < config.budget) {
    const std::size_t n = result.trace.size();
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < 2; ++d)
        X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
            (result.trace[i].first[d] - space.low[d]) /
            (space.high[d] - space.low[d]);
      y(static_cast<Eigen::Index>(i)) = result.trace[i].second;
    }
    GpHyper hyper = default_hyper_for(y);
    if (config.refit_lengthscale)
      hyper = refit_lengthscale(X, y, hyper, {0.05, 0.1, 0.2, 0.4, 0.8});
    const GpModel model = gp_fit(X, y, hyper);

    const LatticePoint next = argmin_acquisition(model, space, config.k,
                                                 config.lattice, &evaluated_lattice);
    evaluated_lattice[next.flat_index] = true;
    const double j = evaluate(next.th);

    if (j < best_so_far) {
      best_so_far = j;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (config.early_stop && since_improvement >= config.stall) break;
  }

  result.best_j = std::numeric_limits<double>::infinity();
  for (const auto& [th, j] : result.trace) {
    if (j < result.best_j) {
      result.best_j = j;
      result.best_th = th;
    }
  }
  return result;
}

TuneResult grid_search(const std::function<double(const std::array<double, 2>&)>& objective,
                       const SearchSpace& space) {
  const double step = space.grid_step();
  TuneResult result;
  result.best_j = std::numeric_limits<double>::infinity();
  // Inclusive lattice; a half-step epsilon absorbs accumulation error.
  for (double a = space.low[0]; a <= space.high[0] + step * 0.5; a += step) {
    for (double b = space.low[1]; b <= space.high[1] + step * 0.5; b += step) {
      const std::array<double, 2> th{std::min(a, space.high[0]),
                                     std::min(b, space.high[1])};
      const double j = objective(th);
      result.trace.emplace_back(th, j);
      ++result.evaluations;
      if (j < result.best_j) {
        result.best_j = j;
        result.best_th = th;
      }
    }
  }
  return result;
}

}  // namespace gaitshift
