#pragma once

#include <vector>

#include "gaitshift/kinematics.hpp"

namespace gaitshift {

/// Emits one MHF per gait cycle where theta_dot transitions from positive to
/// negative, with near-zero samples (|v| < 1e-6) treated as sign-preserving
/// so flat peaks neither split nor suppress a crossing. The slower endpoint
/// of the transition span must lie inside the velocity band; the event is
/// placed at the theta maximum over that span. The per-cycle latch resets at
/// each heel strike. Requires derivatives present.
std::vector<GaitEvent> detect_mhf(const std::vector<KinematicFrame>& frames,
                                  const DetectorConfig& config);

/// Emits HS at each rising crossing of grf through grf_load_threshold,
/// suppressed for grf_debounce samples after an emission. Each event records
/// the most recent MHF angle when one exists.
std::vector<GaitEvent> detect_hs(const std::vector<KinematicFrame>& frames,
                                 const DetectorConfig& config);

/// Emits a THR event at the first sample where theta_th enters
/// [thr_low, thr_high] (including a trial that starts inside the band) and
/// re-arms only after the angle leaves the band. Records theta_dot at entry.
std::vector<GaitEvent> detect_thr_crossing(const std::vector<KinematicFrame>& frames,
                                           const DetectorConfig& config);

/// Runs all three detectors and merges their events chronologically, with
/// ICF annotations attached: Icf1 on MHF, Icf3 on THR, and Icf2 on HS when a
/// same-cycle MHF is available. The pending MHF is consumed by the next HS
/// and invalidated by an intervening THR crossing, so a sit traverse never
/// pairs its flexion peak with the first walking heel strike.
std::vector<GaitEvent> collect_events(const std::vector<KinematicFrame>& frames,
                                      const DetectorConfig& config);

struct IcfSeries {
  std::vector<IcfSample> samples;
  std::size_t skipped_hs = 0;  // HS events with no usable same-cycle MHF
};

/// Pulls the ICF samples out of a chronologically ordered event stream,
/// applying the same pairing rule as collect_events.
IcfSeries extract_icf(const std::vector<GaitEvent>& events);

}  // namespace gaitshift
