#pragma once

#include <optional>
#include <vector>

#include "gaitshift/types.hpp"

namespace gaitshift {

/// One time-step of the thigh kinematic stream. Derivatives are optional on
/// input; they are derived from theta_th when absent, never mixed per signal.
struct KinematicFrame {
  double t = 0.0;          // seconds, strictly increasing within a trial
  double theta_th = 0.0;   // degrees, flexion positive
  std::optional<double> theta_dot;   // deg/s
  std::optional<double> theta_ddot;  // deg/s^2
  double grf = 0.0;        // normalized load, >= 0
  std::optional<LocomotionMode> label;  // ground truth when known
};

/// Key gait moments the detectors emit.
enum class EventKind : std::uint8_t { Mhf, Hs, Thr };

std::string_view to_string(EventKind k);

/// Scalar feature sampled at a key gait moment. Icf1 is theta at MHF, Icf2 the
/// MHF-to-HS drop, Icf3 the angular velocity at the THR-band entry.
struct IcfSample {
  IcfId id = IcfId::Icf1;
  double value = 0.0;            // degrees (Icf1/Icf2) or deg/s (Icf3)
  TransitionPair context = TransitionPair::AscentPair;
  double t = 0.0;
};

/// Pair of transitions fed by each feature: Icf1 gates the stair-ascent pair,
/// Icf2 the stair-descent pair, Icf3 the sit pair.
TransitionPair pair_for(IcfId id);

/// A detected key moment. MHF events carry theta at the flexion maximum, HS
/// events additionally carry the preceding MHF angle so the drop is
/// computable, THR events carry theta_dot at band entry.
struct GaitEvent {
  EventKind kind = EventKind::Mhf;
  double t = 0.0;
  double theta_at_event = 0.0;
  double theta_dot_at_event = 0.0;
  std::optional<double> prev_mhf_theta;  // HS only
  std::optional<IcfSample> icf;
};

/// Tunables for the three event detectors and derivative smoothing.
struct DetectorConfig {
  double mhf_velocity_band = 5.0;  // deg/s half-width around zero, > 0
  double thr_low = 62.0;           // degrees, THR band per system
  double thr_high = 75.0;
  double grf_load_threshold = 0.2;  // normalized load
  std::size_t grf_debounce = 5;     // samples suppressed after an HS
  std::size_t smoothing_window = 5; // moving-average width, <= 1 disables
};

/// System presets: the THR band is [62, 75] for ewalk and [55, 70] for
/// autonomyo; custom keeps the ewalk band.
DetectorConfig detector_defaults(SystemTag system);

void validate_detector_config(const DetectorConfig& config);

}  // namespace gaitshift
