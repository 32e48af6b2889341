#include "gaitshift/evaluation.hpp"

#include <algorithm>
#include <limits>

#include "gaitshift/derivatives.hpp"
#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

std::optional<Transition> transition_between(LocomotionMode from, LocomotionMode to) {
  for (Transition t : kAllTransitions)
    if (source_mode(t) == from && target_mode(t) == to) return t;
  return std::nullopt;
}

}  // namespace

void validate_trial(const Trial& trial) {
  if (trial.frames.empty()) throw InvalidInputError("trial has no frames");
  for (std::size_t i = 1; i < trial.frames.size(); ++i)
    if (!(trial.frames[i].t > trial.frames[i - 1].t))
      throw InvalidInputError("trial timestamps must be strictly increasing");
  for (const auto& f : trial.frames)
    if (f.grf < 0.0) throw InvalidInputError("grf must be non-negative");
  for (std::size_t i = 0; i < trial.gt_transitions.size(); ++i) {
    const auto& gt = trial.gt_transitions[i];
    if (gt.from == gt.to)
      throw InvalidInputError("ground-truth transition must change mode");
    if (!transition_between(gt.from, gt.to))
      throw InvalidInputError("ground-truth transition must involve Walk");
    if (i > 0) {
      if (!(gt.t > trial.gt_transitions[i - 1].t))
        throw InvalidInputError("ground-truth transitions must be ordered");
      if (gt.from != trial.gt_transitions[i - 1].to)
        throw InvalidInputError("ground-truth transitions must chain");
    }
  }
}

std::vector<GtTransition> derive_gt_transitions(const std::vector<KinematicFrame>& frames) {
  std::vector<GtTransition> out;
  std::optional<LocomotionMode> previous;
  for (const auto& f : frames) {
    if (!f.label) continue;
    if (previous && *previous != *f.label)
      out.push_back(GtTransition{f.t, *previous, *f.label});
    previous = *f.label;
  }
  return out;
}

ReplayResult replay(const Trial& trial, const ThresholdSet& thresholds,
                    const DetectorConfig& config,
                    const MappingWeights* map_weights) {
  if (trial.frames.empty()) throw InvalidInputError("cannot replay an empty trial");

  std::vector<KinematicFrame> frames = ensure_derivatives(trial.frames, config);
  if (map_weights) {
    // Correct the angle, then rebuild its derivatives from the mapped signal.
    for (auto& f : frames) f.theta_th = apply_map(*map_weights, f);
    for (auto& f : frames) {
      f.theta_dot.reset();
      f.theta_ddot.reset();
    }
    frames = estimate_derivatives(std::move(frames), config);
  }

  ReplayResult result;
  result.events = collect_events(frames, config);

  const LocomotionMode start = trial.frames.front().label.value_or(LocomotionMode::Walk);
  TransitionFsm fsm(thresholds, start);
  result.frame_states.resize(frames.size());
  std::size_t next_event = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    while (next_event < result.events.size() &&
           result.events[next_event].t <= frames[i].t) {
      const auto step = fsm.step(result.events[next_event]);
      if (step.fired) result.detections.push_back(*step.fired);
      ++next_event;
    }
    result.frame_states[i] = fsm.state();
  }
  return result;
}

double StepWindowRule::deadline(double t_gt) const {
  std::size_t count = 0;
  for (double t : hs_times) {
    if (t > t_gt) {
      ++count;
      if (count == 2) return t;
    }
  }
  return t_gt + fallback_window;
}

StepWindowRule make_step_window(const std::vector<GaitEvent>& events,
                                double nominal_step_period) {
  StepWindowRule rule;
  rule.fallback_window = 2.0 * nominal_step_period;
  for (const auto& e : events)
    if (e.kind == EventKind::Hs) rule.hs_times.push_back(e.t);
  std::sort(rule.hs_times.begin(), rule.hs_times.end());
  return rule;
}

TransitionTally EvaluationReport::overall() const {
  TransitionTally total;
  for (const auto& [t, tally] : per_transition) {
    total.n_detected += tally.n_detected;
    total.n_total += tally.n_total;
  }
  return total;
}

EvaluationReport compute_accuracy(const std::vector<TransitionEvent>& detections,
                                  const std::vector<GtTransition>& gt_transitions,
                                  const StepWindowRule& window) {
  std::vector<TransitionEvent> ordered = detections;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const TransitionEvent& a, const TransitionEvent& b) {
                     return a.t < b.t;
                   });
  std::vector<bool> used(ordered.size(), false);

  EvaluationReport report;
  for (const auto& gt : gt_transitions) {
    const auto id = transition_between(gt.from, gt.to);
    if (!id) continue;
    auto& tally = report.per_transition[*id];
    ++tally.n_total;
    const double deadline = window.deadline(gt.t);
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      if (used[i] || ordered[i].id != *id) continue;
      if (ordered[i].t < gt.t) continue;
      if (ordered[i].t > deadline) break;  // ordered by time; nothing later fits
      used[i] = true;
      ++tally.n_detected;
      break;
    }
  }
  return report;
}

void merge_into(EvaluationReport& into, const EvaluationReport& from) {
  for (const auto& [t, tally] : from.per_transition) {
    auto& dst = into.per_transition[t];
    dst.n_detected += tally.n_detected;
    dst.n_total += tally.n_total;
  }
}

EvaluationReport evaluate_trials(const std::vector<Trial>& trials,
                                 const ThresholdSet& thresholds,
                                 const DetectorConfig& config,
                                 double nominal_step_period,
                                 const MappingWeights* map_weights) {
  EvaluationReport pooled;
  for (const auto& trial : trials) {
    validate_trial(trial);
    const ReplayResult run = replay(trial, thresholds, config, map_weights);
    const StepWindowRule window = make_step_window(run.events, nominal_step_period);
    merge_into(pooled, compute_accuracy(run.detections, trial.gt_transitions, window));
  }
  return pooled;
}

std::map<Transition, std::vector<double>> collect_transition_icfs(
    const Trial& trial, const DetectorConfig& config) {
  validate_trial(trial);
  const std::vector<KinematicFrame> frames = ensure_derivatives(trial.frames, config);
  const std::vector<GaitEvent> events = collect_events(frames, config);

  std::map<Transition, std::vector<double>> out;
  for (std::size_t g = 0; g < trial.gt_transitions.size(); ++g) {
    const auto& gt = trial.gt_transitions[g];
    const auto id = transition_between(gt.from, gt.to);
    if (!id) continue;
    const EventKind trigger = trigger_for(*id);
    const double horizon = g + 1 < trial.gt_transitions.size()
                               ? trial.gt_transitions[g + 1].t
                               : std::numeric_limits<double>::infinity();
    for (const auto& e : events) {
      if (e.t < gt.t || !e.icf) continue;
      if (e.t >= horizon) break;
      if (e.kind != trigger) continue;
      out[*id].push_back(e.icf->value);
      break;
    }
  }
  return out;
}

}  // namespace gaitshift
