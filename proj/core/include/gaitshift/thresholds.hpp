#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gaitshift/types.hpp"

namespace gaitshift {

/// Binary-labeled 1-D feature samples for one transition. Label 1 marks the
/// transition class, label 0 the no-transition class.
struct LabeledIcfSet {
  std::vector<double> values;
  std::vector<int> labels;
  Transition transition = Transition::WalkToStairAscent;
};

struct ThresholdEntry {
  double value = 0.0;
  BoundType bound = BoundType::Exceed;
};

/// The six per-transition thresholds plus the system's THR band, indexed by
/// the Transition enum order.
struct ThresholdSet {
  SystemTag system = SystemTag::EWalk;
  std::array<ThresholdEntry, 6> entries{};
  double thr_low = 62.0;
  double thr_high = 75.0;

  ThresholdEntry& operator[](Transition t) {
    return entries[static_cast<std::size_t>(t)];
  }
  const ThresholdEntry& operator[](Transition t) const {
    return entries[static_cast<std::size_t>(t)];
  }
};

/// Published defaults per system. The autonomyo column differs from ewalk
/// only in the walk-to-stair-descent value and the THR band; custom reuses
/// the ewalk numbers under its own tag.
ThresholdSet default_thresholds(SystemTag system);

/// Bound convention: transitions leaving Walk fire on exceed, transitions
/// returning to Walk fire on fall-below.
BoundType default_bound(Transition t);

/// Per-axis search ranges used by the tuners; thresholds are expected to
/// stay inside them. Returns {low, high} for the transition's pair.
std::array<double, 2> search_range(Transition t);

/// Human-readable warnings for thresholds outside their search ranges.
/// Out-of-range values are legal (soft validation only).
std::vector<std::string> validate_threshold_ranges(const ThresholdSet& set);

struct ThresholdFit {
  double threshold = 0.0;
  bool class1_above = true;    // orientation of the fitted boundary
  bool overlap_warning = false;  // training data not separated by the boundary
};

/// 1-D logistic regression by full-batch gradient descent on internally
/// standardized inputs; returns the de-standardized p = 0.5 boundary.
/// Requires both classes present.
ThresholdFit train_logistic_1d(const LabeledIcfSet& set, double lr = 0.1,
                               std::size_t epochs = 5000);

struct StumpFit {
  double threshold = 0.0;
  bool class1_above = true;
  double accuracy = 0.0;
};

/// Exhaustive split over midpoints of adjacent sorted values; maximizes
/// training accuracy, ties broken toward the midpoint closest to the grand
/// mean. Requires both classes present.
StumpFit train_stump_1d(const LabeledIcfSet& set);

/// Builds a complete ThresholdSet: system defaults when no data is supplied,
/// logistic boundaries with the default bound convention when all six
/// transitions have labeled sets. A partial map is rejected.
ThresholdSet derive_threshold_set(const std::map<Transition, LabeledIcfSet>& sets,
                                  SystemTag system);

}  // namespace gaitshift
