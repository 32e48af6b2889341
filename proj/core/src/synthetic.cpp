#include "gaitshift/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

struct ModeShape {
  double amplitude = 0.0;
  double period = 0.0;
  double default_drop = 0.0;
};

ModeShape shape_for(LocomotionMode mode, const ScenarioParams& p) {
  switch (mode) {
    case LocomotionMode::Walk:
      return {p.walk_amplitude, p.walk_period, p.walk_drop};
    case LocomotionMode::StairAscent:
      return {p.ascent_amplitude, p.ascent_period, p.ascent_drop};
    case LocomotionMode::StairDescent:
      return {p.descent_amplitude, p.descent_period, p.descent_drop};
    case LocomotionMode::Sit:
      break;
  }
  throw InvalidInputError("sit segments have no cycle shape");
}

void validate_plan(const std::vector<SegmentSpec>& segments,
                   const ScenarioParams& p) {
  if (segments.empty()) throw InvalidInputError("scenario needs segments");
  if (segments.front().mode != LocomotionMode::Walk)
    throw InvalidInputError("scenario must start with a walk segment");
  if (p.dt <= 0.0 || p.sit_rate <= 0.0 || p.sit_dwell < 0.0)
    throw InvalidInputError("scenario timing parameters must be positive");
  if (p.stance_fraction <= 0.0 || p.stance_fraction >= 1.0)
    throw InvalidInputError("stance fraction must lie in (0, 1)");
  if (p.sit_angle <= p.base_angle)
    throw InvalidInputError("sit angle must exceed the base angle");

  for (std::size_t s = 0; s < segments.size(); ++s) {
    const SegmentSpec& seg = segments[s];
    if (seg.mode == LocomotionMode::Walk) continue;
    if (s + 1 >= segments.size() ||
        segments[s - 1].mode != LocomotionMode::Walk ||
        segments[s + 1].mode != LocomotionMode::Walk)
      throw InvalidInputError("non-walk segments must be bracketed by walk");
  }

  for (const SegmentSpec& seg : segments) {
    if (seg.mode == LocomotionMode::Sit) {
      if (!seg.cycle_drops.empty())
        throw InvalidInputError("sit segments take no cycle drops");
      continue;
    }
    if (seg.cycles == 0)
      throw InvalidInputError("walk-like segments need at least one cycle");
    if (!seg.cycle_drops.empty() && seg.cycle_drops.size() != 1 &&
        seg.cycle_drops.size() != seg.cycles)
      throw InvalidInputError("cycle drops must broadcast or match the cycle count");

    const ModeShape shape = shape_for(seg.mode, p);
    const double amplitude = seg.amplitude.value_or(shape.amplitude);
    if (amplitude <= p.base_angle)
      throw InvalidInputError("cycle amplitude must exceed the base angle");
    auto check_drop = [&](double d) {
      if (d <= 0.0 || d >= amplitude - p.base_angle)
        throw InvalidInputError("heel-strike drop must lie in (0, amplitude - base)");
    };
    if (seg.cycle_drops.empty())
      check_drop(shape.default_drop);
    else
      for (double d : seg.cycle_drops) check_drop(d);
  }
}

// Time from cycle start to the heel strike at which the angle has fallen
// `drop` below the peak, on the descending limb of the raised cosine.
double heel_strike_offset(double amplitude, double base, double drop, double period) {
  const double c = 2.0 * drop / (amplitude - base) - 1.0;
  return period * (2.0 * std::numbers::pi - std::acos(c)) /
         (2.0 * std::numbers::pi);
}

}  // namespace

Trial generate_synthetic_trial(const std::vector<SegmentSpec>& segments,
                               const ScenarioParams& params) {
  validate_plan(segments, params);

  Trial trial;
  trial.subject = params.subject;
  trial.system = params.system;

  std::vector<char> hold_grf;                       // parallel to frames
  std::vector<std::pair<double, double>> loaded;    // absolute [start, end)
  std::size_t sample = 0;

  auto emit = [&](double theta, LocomotionMode label, bool hold) {
    KinematicFrame f;
    f.t = static_cast<double>(sample) * params.dt;
    f.theta_th = theta;
    f.grf = 0.0;
    f.label = label;
    trial.frames.push_back(f);
    hold_grf.push_back(hold ? 1 : 0);
    ++sample;
  };
  auto now = [&] { return static_cast<double>(sample) * params.dt; };

  const double ramp_step = params.sit_rate * params.dt;
  LocomotionMode prev = LocomotionMode::Walk;

  for (const SegmentSpec& seg : segments) {
    if (seg.mode == LocomotionMode::Sit) {
      trial.gt_transitions.push_back({now(), prev, LocomotionMode::Sit});
      for (double th = params.base_angle + ramp_step; th < params.sit_angle;
           th += ramp_step)
        emit(th, LocomotionMode::Sit, true);
      const auto dwell = static_cast<std::size_t>(
          std::llround(params.sit_dwell / params.dt));
      for (std::size_t k = 0; k < dwell; ++k)
        emit(params.sit_angle, LocomotionMode::Sit, true);
      prev = LocomotionMode::Sit;
      continue;
    }

    if (prev == LocomotionMode::Sit) {
      // Stand-up ramp; it belongs to this segment, so ground truth flips here.
      trial.gt_transitions.push_back({now(), LocomotionMode::Sit, seg.mode});
      for (double th = params.sit_angle - ramp_step; th > params.base_angle;
           th -= ramp_step)
        emit(th, seg.mode, true);
    } else if (seg.mode != prev) {
      trial.gt_transitions.push_back({now(), prev, seg.mode});
    }

    const ModeShape shape = shape_for(seg.mode, params);
    const double amplitude = seg.amplitude.value_or(shape.amplitude);
    const auto per_cycle = static_cast<std::size_t>(
        std::llround(shape.period / params.dt));
    for (std::size_t c = 0; c < seg.cycles; ++c) {
      const double drop = seg.cycle_drops.empty() ? shape.default_drop
                          : seg.cycle_drops.size() == 1
                              ? seg.cycle_drops.front()
                              : seg.cycle_drops[c];
      const double cycle_start = now();
      const double hs = cycle_start + heel_strike_offset(amplitude, params.base_angle,
                                                         drop, shape.period);
      loaded.emplace_back(hs, hs + params.stance_fraction * shape.period);
      for (std::size_t k = 0; k < per_cycle; ++k) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(per_cycle);
        emit(params.base_angle +
                 (amplitude - params.base_angle) * (1.0 - std::cos(phase)) / 2.0,
             seg.mode, false);
      }
    }
    prev = seg.mode;
  }

  // Load pass: interval membership during cycles, carried value elsewhere.
  double held = 0.0;
  std::size_t li = 0;
  for (std::size_t i = 0; i < trial.frames.size(); ++i) {
    if (!hold_grf[i]) {
      const double t = trial.frames[i].t;
      while (li < loaded.size() && loaded[li].second <= t) ++li;
      held = (li < loaded.size() && loaded[li].first <= t) ? 1.0 : 0.0;
    }
    trial.frames[i].grf = held;
  }

  if (params.noise_std > 0.0) {
    std::mt19937 gen(params.seed);
    std::normal_distribution<double> noise(0.0, params.noise_std);
    for (auto& f : trial.frames) f.theta_th += noise(gen);
  }
  return trial;
}

Trial scenario_all_transitions(const ScenarioParams& params) {
  const std::vector<SegmentSpec> plan{
      {LocomotionMode::Walk, 3, {}, {}},
      {LocomotionMode::Sit, 0, {}, {}},
      {LocomotionMode::Walk, 3, {}, {}},
      {LocomotionMode::StairAscent, 3, {}, {}},
      {LocomotionMode::Walk, 3, {}, {}},
      {LocomotionMode::StairDescent, 3, {}, {}},
      {LocomotionMode::Walk, 3, {}, {}},
  };
  return generate_synthetic_trial(plan, params);
}

Trial scenario_delayed_descent(const ScenarioParams& params) {
  const std::vector<SegmentSpec> plan{
      {LocomotionMode::Walk, 3, {}, {}},
      {LocomotionMode::StairDescent, 4, {}, {6.0, 6.0, 16.0, 16.0}},
      {LocomotionMode::Walk, 3, {}, {}},
  };
  return generate_synthetic_trial(plan, params);
}

Trial scenario_deadline_descent(const ScenarioParams& params) {
  const std::vector<SegmentSpec> plan{
      {LocomotionMode::Walk, 3, {}, {}},
      {LocomotionMode::StairDescent, 3, {}, {6.0, 16.0, 16.0}},
      {LocomotionMode::Walk, 3, {}, {}},
  };
  return generate_synthetic_trial(plan, params);
}

std::vector<Trial> scenario_descent_subject(const ScenarioParams& params) {
  const std::vector<std::vector<double>> bout_drops{
      {8.6, 9.4, 14.6, 17.6, 20.6},   // training, ascending depths
      {9.0, 9.8, 15.0, 18.0, 21.0},   // training, ascending depths
      {10.7, 10.7, 10.7, 10.7, 10.7}, // evaluation, detectable by stock limits
      {9.5, 9.5, 9.5, 9.5, 9.5},      // evaluation, below stock limits
      {9.6, 9.6, 9.6, 9.6, 9.6},      // evaluation, below stock limits
  };
  std::vector<Trial> trials;
  trials.reserve(bout_drops.size());
  for (std::size_t i = 0; i < bout_drops.size(); ++i) {
    ScenarioParams p = params;
    p.subject = "descent-subject";
    const std::vector<SegmentSpec> plan{
        {LocomotionMode::Walk, 4, {}, {6.5}},
        {LocomotionMode::StairDescent, 5, {}, bout_drops[i]},
        {LocomotionMode::Walk, 8, {}, {6.5, 5.5, 4.5, 3.5, 6.5, 6.5, 6.5, 6.5}},
    };
    Trial t = generate_synthetic_trial(plan, p);
    t.index = i;
    trials.push_back(std::move(t));
  }
  return trials;
}

RomScenario scenario_rom_subjects(const ScenarioParams& params) {
  auto make = [&](const std::string& subject, std::size_t index, double walk_a,
                  double ascent_a) {
    ScenarioParams p = params;
    p.subject = subject;
    const std::vector<SegmentSpec> plan{
        {LocomotionMode::Walk, 3, walk_a, {}},
        {LocomotionMode::StairAscent, 3, ascent_a, {}},
        {LocomotionMode::Walk, 3, walk_a, {}},
    };
    Trial t = generate_synthetic_trial(plan, p);
    t.index = index;
    return t;
  };

  RomScenario out;
  out.training_subject.push_back(make("stock-subject", 0, 24.2, 57.0));
  out.training_subject.push_back(make("stock-subject", 1, 25.0, 58.0));
  out.training_subject.push_back(make("stock-subject", 2, 25.8, 59.0));

  out.new_subject.push_back(make("reduced-rom-subject", 0, 16.35, 39.2));
  out.new_subject.push_back(make("reduced-rom-subject", 1, 17.0, 40.0));
  out.new_subject.push_back(make("reduced-rom-subject", 2, 17.65, 40.8));
  out.new_subject.push_back(make("reduced-rom-subject", 3, 17.0, 40.0));
  out.new_subject.push_back(make("reduced-rom-subject", 4, 17.0, 40.0));
  return out;
}

}  // namespace gaitshift
