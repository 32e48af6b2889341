#pragma once

#include <map>
#include <vector>

#include "gaitshift/thresholds.hpp"
#include "gaitshift/types.hpp"

namespace gaitshift {

/// Summary statistics of one transition's trigger-feature samples.
struct IcfStats {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  std::size_t n = 0;
  Transition transition = Transition::WalkToStairAscent;
};

/// Arithmetic mean and population standard deviation. Requires >= 1 sample.
IcfStats compute_icf_stats(const std::vector<double>& samples, Transition transition);

struct SbaResult {
  double threshold = 0.0;
  bool degenerate = false;  // stats unusable, threshold left unchanged
};

/// One-shot rescaling th_new = th_tr * (mean_new ± std_new)/(mean_tr ± std_tr)
/// with + for exceed bounds (the threshold is a lower bound on the feature)
/// and - for fall-below bounds. A near-zero or sign-flipping ratio marks the
/// result degenerate and keeps the training threshold.
SbaResult tune_sba(double th_tr, const IcfStats& training, const IcfStats& subject,
                   BoundType bound);

struct ApplySbaOutcome {
  ThresholdSet thresholds;
  std::vector<Transition> tuned;
  std::vector<Transition> degenerate;
};

/// Rescales every transition present in both stats maps; others keep their
/// base values.
ApplySbaOutcome apply_sba(const ThresholdSet& base,
                          const std::map<Transition, IcfStats>& training,
                          const std::map<Transition, IcfStats>& subject);

}  // namespace gaitshift
