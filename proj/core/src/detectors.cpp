#include "gaitshift/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

void require_derivatives(const std::vector<KinematicFrame>& frames) {
  for (const auto& f : frames)
    if (!f.theta_dot.has_value())
      throw InvalidInputError("detector requires theta_dot on every frame");
}

// Rising GRF crossings with debounce, as sample indices.
std::vector<std::size_t> hs_indices(const std::vector<KinematicFrame>& frames,
                                    const DetectorConfig& config) {
  std::vector<std::size_t> out;
  std::size_t last = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 1; i < frames.size(); ++i) {
    const bool rising = frames[i - 1].grf < config.grf_load_threshold &&
                        frames[i].grf >= config.grf_load_threshold;
    if (!rising) continue;
    if (last != std::numeric_limits<std::size_t>::max() &&
        i - last <= config.grf_debounce)
      continue;
    out.push_back(i);
    last = i;
  }
  return out;
}

GaitEvent event_at(const std::vector<KinematicFrame>& frames, std::size_t i,
                   EventKind kind) {
  GaitEvent e;
  e.kind = kind;
  e.t = frames[i].t;
  e.theta_at_event = frames[i].theta_th;
  e.theta_dot_at_event = frames[i].theta_dot.value_or(0.0);
  return e;
}

}  // namespace

std::vector<GaitEvent> detect_mhf(const std::vector<KinematicFrame>& frames,
                                  const DetectorConfig& config) {
  require_derivatives(frames);
  const std::vector<std::size_t> hs = hs_indices(frames, config);
  std::size_t next_hs = 0;
  std::vector<GaitEvent> out;

  // Hysteresis sign tracking: velocities inside (-eps, eps) keep the last
  // state, so exact zeros at symmetric peaks or flat dwells cannot split or
  // suppress a crossing. A peak is the span from the last clearly positive
  // velocity to the first clearly negative one; the band test on the span's
  // endpoints rejects ramp corners, whose velocity steps are far larger than
  // a stride peak's.
  constexpr double kSignEps = 1e-6;
  int sign_state = 0;
  std::size_t last_positive = 0;
  bool fired_this_cycle = false;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    while (next_hs < hs.size() && hs[next_hs] <= i) {
      fired_this_cycle = false;
      ++next_hs;
    }
    const double v = *frames[i].theta_dot;
    if (v >= kSignEps) {
      sign_state = 1;
      last_positive = i;
      continue;
    }
    if (v > -kSignEps) continue;
    if (sign_state == 1 && !fired_this_cycle) {
      const double v0 = *frames[last_positive].theta_dot;
      if (std::min(std::abs(v0), std::abs(v)) <= config.mhf_velocity_band) {
        std::size_t peak = last_positive;
        for (std::size_t k = last_positive + 1; k <= i; ++k)
          if (frames[k].theta_th > frames[peak].theta_th) peak = k;
        out.push_back(event_at(frames, peak, EventKind::Mhf));
        fired_this_cycle = true;
      }
    }
    sign_state = -1;
  }
  return out;
}

std::vector<GaitEvent> detect_hs(const std::vector<KinematicFrame>& frames,
                                 const DetectorConfig& config) {
  // MHF annotation is best-effort: HS detection itself only needs grf.
  const bool have_derivatives =
      std::all_of(frames.begin(), frames.end(),
                  [](const KinematicFrame& f) { return f.theta_dot.has_value(); });
  std::vector<GaitEvent> mhf =
      have_derivatives ? detect_mhf(frames, config) : std::vector<GaitEvent>{};
  std::size_t next_mhf = 0;
  std::optional<double> last_mhf_theta;
  std::vector<GaitEvent> out;
  for (std::size_t i : hs_indices(frames, config)) {
    while (next_mhf < mhf.size() && mhf[next_mhf].t <= frames[i].t) {
      last_mhf_theta = mhf[next_mhf].theta_at_event;
      ++next_mhf;
    }
    GaitEvent e = event_at(frames, i, EventKind::Hs);
    e.prev_mhf_theta = last_mhf_theta;
    out.push_back(e);
  }
  return out;
}

std::vector<GaitEvent> detect_thr_crossing(const std::vector<KinematicFrame>& frames,
                                           const DetectorConfig& config) {
  require_derivatives(frames);
  std::vector<GaitEvent> out;
  bool armed = true;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const bool inside = frames[i].theta_th >= config.thr_low &&
                        frames[i].theta_th <= config.thr_high;
    if (inside && armed) {
      out.push_back(event_at(frames, i, EventKind::Thr));
      armed = false;
    } else if (!inside) {
      armed = true;
    }
  }
  return out;
}

std::vector<GaitEvent> collect_events(const std::vector<KinematicFrame>& frames,
                                      const DetectorConfig& config) {
  std::vector<GaitEvent> merged;
  for (auto& e : detect_mhf(frames, config)) merged.push_back(e);
  for (std::size_t i : hs_indices(frames, config))
    merged.push_back(event_at(frames, i, EventKind::Hs));
  for (auto& e : detect_thr_crossing(frames, config)) merged.push_back(e);
  std::stable_sort(merged.begin(), merged.end(),
                   [](const GaitEvent& a, const GaitEvent& b) {
                     if (a.t != b.t) return a.t < b.t;
                     return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                   });

  // Annotate in stream order. The pending MHF is consumed by the next HS and
  // dropped when a THR crossing intervenes (the leg left gait posture).
  std::optional<double> pending_mhf;
  for (auto& e : merged) {
    switch (e.kind) {
      case EventKind::Mhf:
        pending_mhf = e.theta_at_event;
        e.icf = IcfSample{IcfId::Icf1, e.theta_at_event,
                          pair_for(IcfId::Icf1), e.t};
        break;
      case EventKind::Hs:
        e.prev_mhf_theta = pending_mhf;
        if (pending_mhf)
          e.icf = IcfSample{IcfId::Icf2, *pending_mhf - e.theta_at_event,
                            pair_for(IcfId::Icf2), e.t};
        pending_mhf.reset();
        break;
      case EventKind::Thr:
        pending_mhf.reset();
        e.icf = IcfSample{IcfId::Icf3, e.theta_dot_at_event,
                          pair_for(IcfId::Icf3), e.t};
        break;
    }
  }
  return merged;
}

IcfSeries extract_icf(const std::vector<GaitEvent>& events) {
  IcfSeries out;
  std::optional<double> pending_mhf;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::Mhf:
        pending_mhf = e.theta_at_event;
        out.samples.push_back(
            IcfSample{IcfId::Icf1, e.theta_at_event, pair_for(IcfId::Icf1), e.t});
        break;
      case EventKind::Hs:
        if (pending_mhf) {
          out.samples.push_back(IcfSample{IcfId::Icf2,
                                          *pending_mhf - e.theta_at_event,
                                          pair_for(IcfId::Icf2), e.t});
        } else {
          ++out.skipped_hs;
        }
        pending_mhf.reset();
        break;
      case EventKind::Thr:
        pending_mhf.reset();
        out.samples.push_back(IcfSample{IcfId::Icf3, e.theta_dot_at_event,
                                        pair_for(IcfId::Icf3), e.t});
        break;
    }
  }
  return out;
}

}  // namespace gaitshift
