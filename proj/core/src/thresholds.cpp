#include "gaitshift/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

void require_both_classes(const LabeledIcfSet& set) {
  if (set.values.size() != set.labels.size())
    throw InvalidInputError("labeled set values/labels length mismatch");
  if (set.values.empty()) throw InvalidInputError("labeled set is empty");
  const bool has0 = std::find(set.labels.begin(), set.labels.end(), 0) != set.labels.end();
  const bool has1 = std::find(set.labels.begin(), set.labels.end(), 1) != set.labels.end();
  if (!has0 || !has1)
    throw InvalidInputError("labeled set must contain both classes");
  for (double v : set.values)
    if (!std::isfinite(v)) throw InvalidInputError("labeled set values must be finite");
}

double accuracy_at(const LabeledIcfSet& set, double threshold, bool class1_above) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < set.values.size(); ++i) {
    const bool above = set.values[i] > threshold;
    const int predicted = (above == class1_above) ? 1 : 0;
    if (predicted == set.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(set.values.size());
}

}  // namespace

ThresholdSet default_thresholds(SystemTag system) {
  ThresholdSet set;
  set.system = system;
  set[Transition::WalkToSit] = {23.32, BoundType::Exceed};
  set[Transition::SitToWalk] = {-4.32, BoundType::FallBelow};
  set[Transition::WalkToStairAscent] = {50.52, BoundType::Exceed};
  set[Transition::StairAscentToWalk] = {51.21, BoundType::FallBelow};
  set[Transition::WalkToStairDescent] = {10.37, BoundType::Exceed};
  set[Transition::StairDescentToWalk] = {9.62, BoundType::FallBelow};
  if (system == SystemTag::Autonomyo) {
    set[Transition::WalkToStairDescent].value = 13.37;
    set.thr_low = 55.0;
    set.thr_high = 70.0;
  }
  return set;
}

BoundType default_bound(Transition t) {
  return source_mode(t) == LocomotionMode::Walk ? BoundType::Exceed
                                                : BoundType::FallBelow;
}

std::array<double, 2> search_range(Transition t) {
  switch (pair_of(t)) {
    case TransitionPair::SitPair: return {-60.0, 60.0};
    case TransitionPair::AscentPair: return {30.0, 65.0};
    default: return {0.0, 25.0};
  }
}

std::vector<std::string> validate_threshold_ranges(const ThresholdSet& set) {
  std::vector<std::string> warnings;
  for (Transition t : kAllTransitions) {
    const auto range = search_range(t);
    const double v = set[t].value;
    if (v < range[0] || v > range[1]) {
      std::ostringstream msg;
      msg << to_string(t) << " threshold " << v << " outside search range ["
          << range[0] << ", " << range[1] << "]";
      warnings.push_back(msg.str());
    }
  }
  return warnings;
}

ThresholdFit train_logistic_1d(const LabeledIcfSet& set, double lr,
                               std::size_t epochs) {
  require_both_classes(set);
  const double n = static_cast<double>(set.values.size());
  const double mean = std::accumulate(set.values.begin(), set.values.end(), 0.0) / n;
  double var = 0.0;
  for (double v : set.values) var += (v - mean) * (v - mean);
  var /= n;
  const double scale = var > 0.0 ? std::sqrt(var) : 1.0;

  double a = 0.0;
  double b = 0.0;
  for (std::size_t e = 0; e < epochs; ++e) {
    double ga = 0.0;
    double gb = 0.0;
    for (std::size_t i = 0; i < set.values.size(); ++i) {
      const double z = (set.values[i] - mean) / scale;
      const double p = 1.0 / (1.0 + std::exp(-(a * z + b)));
      const double err = p - static_cast<double>(set.labels[i]);
      ga += err * z;
      gb += err;
    }
    a -= lr * ga / n;
    b -= lr * gb / n;
  }

  ThresholdFit fit;
  fit.class1_above = a > 0.0;
  // p = 0.5 at a z + b = 0; de-standardize the boundary.
  fit.threshold = a != 0.0 ? mean - scale * b / a : mean;
  fit.overlap_warning = accuracy_at(set, fit.threshold, fit.class1_above) < 1.0;
  return fit;
}

StumpFit train_stump_1d(const LabeledIcfSet& set) {
  require_both_classes(set);
  std::vector<double> sorted = set.values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const double grand_mean =
      std::accumulate(set.values.begin(), set.values.end(), 0.0) /
      static_cast<double>(set.values.size());

  std::vector<double> candidates;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    candidates.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  if (candidates.empty()) candidates.push_back(sorted.front());

  StumpFit best;
  best.accuracy = -1.0;
  for (double cand : candidates) {
    for (bool above : {true, false}) {
      const double acc = accuracy_at(set, cand, above);
      const bool better = acc > best.accuracy;
      const bool tied = acc == best.accuracy &&
                        std::abs(cand - grand_mean) <
                            std::abs(best.threshold - grand_mean);
      if (better || tied) {
        best.threshold = cand;
        best.class1_above = above;
        best.accuracy = acc;
      }
    }
  }
  return best;
}

ThresholdSet derive_threshold_set(const std::map<Transition, LabeledIcfSet>& sets,
                                  SystemTag system) {
  ThresholdSet out = default_thresholds(system);
  if (sets.empty()) return out;
  if (sets.size() != kAllTransitions.size()) {
    std::ostringstream msg;
    msg << "threshold training needs all " << kAllTransitions.size()
        << " transitions, got " << sets.size();
    throw InvalidInputError(msg.str());
  }
  for (const auto& [transition, set] : sets) {
    const ThresholdFit fit = train_logistic_1d(set);
    out[transition] = {fit.threshold, default_bound(transition)};
  }
  return out;
}

}  // namespace gaitshift
