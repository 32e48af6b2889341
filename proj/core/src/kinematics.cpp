#include "gaitshift/kinematics.hpp"

#include "gaitshift/errors.hpp"

namespace gaitshift {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Mhf: return "mhf";
    case EventKind::Hs: return "hs";
    case EventKind::Thr: return "thr";
  }
  return "?";
}

TransitionPair pair_for(IcfId id) {
  switch (id) {
    case IcfId::Icf1: return TransitionPair::AscentPair;
    case IcfId::Icf2: return TransitionPair::DescentPair;
    case IcfId::Icf3: return TransitionPair::SitPair;
  }
  return TransitionPair::AscentPair;
}

DetectorConfig detector_defaults(SystemTag system) {
  DetectorConfig config;
  if (system == SystemTag::Autonomyo) {
    config.thr_low = 55.0;
    config.thr_high = 70.0;
  }
  return config;
}

void validate_detector_config(const DetectorConfig& config) {
  if (!(config.mhf_velocity_band > 0.0))
    throw InvalidInputError("mhf_velocity_band must be positive");
  if (!(config.thr_low < config.thr_high))
    throw InvalidInputError("thr range must satisfy low < high");
  if (!(config.grf_load_threshold >= 0.0))
    throw InvalidInputError("grf_load_threshold must be non-negative");
}

}  // namespace gaitshift
