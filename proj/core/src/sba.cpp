#include "gaitshift/sba.hpp"

#include <cmath>

#include "gaitshift/errors.hpp"

namespace gaitshift {

IcfStats compute_icf_stats(const std::vector<double>& samples, Transition transition) {
  if (samples.empty())
    throw InvalidInputError("ICF statistics need at least one sample");
  IcfStats stats;
  stats.transition = transition;
  stats.n = samples.size();
  const double n = static_cast<double>(samples.size());
  for (double v : samples) stats.mean += v;
  stats.mean /= n;
  for (double v : samples) stats.std += (v - stats.mean) * (v - stats.mean);
  stats.std = std::sqrt(stats.std / n);
  return stats;
}

SbaResult tune_sba(double th_tr, const IcfStats& training, const IcfStats& subject,
                   BoundType bound) {
  const double sign = bound == BoundType::Exceed ? 1.0 : -1.0;
  const double denom = training.mean + sign * training.std;
  const double numer = subject.mean + sign * subject.std;
  // A vanishing denominator or a sign-flipping ratio would invert the bound
  // geometry; keep the training threshold and flag instead.
  if (std::abs(denom) < 1e-9 || numer * denom < 0.0)
    return SbaResult{th_tr, true};
  return SbaResult{th_tr * numer / denom, false};
}

ApplySbaOutcome apply_sba(const ThresholdSet& base,
                          const std::map<Transition, IcfStats>& training,
                          const std::map<Transition, IcfStats>& subject) {
  ApplySbaOutcome out;
  out.thresholds = base;
  for (Transition t : kAllTransitions) {
    const auto tr = training.find(t);
    const auto nw = subject.find(t);
    if (tr == training.end() || nw == subject.end()) continue;
    const SbaResult result =
        tune_sba(base[t].value, tr->second, nw->second, base[t].bound);
    if (result.degenerate) {
      out.degenerate.push_back(t);
    } else {
      out.thresholds[t].value = result.threshold;
      out.tuned.push_back(t);
    }
  }
  return out;
}

}  // namespace gaitshift
