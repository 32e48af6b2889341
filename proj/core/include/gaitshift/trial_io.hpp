#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gaitshift/alignment.hpp"
#include "gaitshift/evaluation.hpp"
#include "gaitshift/fsm.hpp"
#include "gaitshift/thresholds.hpp"
#include "gaitshift/tuning.hpp"

namespace gaitshift {

/// Stream CSV with header `t,theta_th,theta_dot,theta_ddot,grf,label`.
/// Columns are matched by name; `t`, `theta_th` and `grf` are required,
/// the rest optional, unknown names ignored. An empty cell leaves an
/// optional field unset. Malformed rows raise DataFormatError carrying the
/// physical line number (the header is line 1). Ground-truth transitions
/// are recovered from the label column when present.
Trial read_trial_csv(std::istream& in, const std::string& name = "<stream>");
Trial load_trial_csv(const std::string& path);

/// Writes only the columns at least one frame populates; unset optional
/// cells stay empty. Numbers round-trip exactly.
void write_trial_csv(const Trial& trial, std::ostream& out);
void save_trial_csv(const Trial& trial, const std::string& path);

/// Detection log, one row per fired transition: `t,from,to,icf,threshold`.
void write_detections_csv(const std::vector<TransitionEvent>& events,
                          std::ostream& out);
void save_detections_csv(const std::vector<TransitionEvent>& events,
                         const std::string& path);

/// Stable JSON form of a threshold set: system tag, the angular band used by
/// the range trigger, then one value/bound object per transition in fixed
/// declaration order. Byte-stable for unchanged inputs.
std::string thresholds_to_json(const ThresholdSet& set);
ThresholdSet thresholds_from_json(const std::string& text);
void save_thresholds_json(const ThresholdSet& set, const std::string& path);
ThresholdSet load_thresholds_json(const std::string& path);

std::string weights_to_json(const MappingWeights& weights);
MappingWeights weights_from_json(const std::string& text);
void save_weights_json(const MappingWeights& weights, const std::string& path);
MappingWeights load_weights_json(const std::string& path);

std::string mapping_report_to_json(const MappingFitReport& report);
std::string tune_result_to_json(const TuneResult& result);
std::string evaluation_report_to_json(const EvaluationReport& report);

/// Per-transition feature samples: `transition,value`.
void write_icf_csv(const std::map<Transition, std::vector<double>>& icfs,
                   std::ostream& out);
std::map<Transition, std::vector<double>> read_icf_csv(
    std::istream& in, const std::string& name = "<stream>");
void save_icf_csv(const std::map<Transition, std::vector<double>>& icfs,
                  const std::string& path);
std::map<Transition, std::vector<double>> load_icf_csv(const std::string& path);

/// Class-labeled feature samples for boundary training:
/// `transition,value,label` with label 0 or 1.
void write_labeled_icf_csv(const std::map<Transition, LabeledIcfSet>& sets,
                           std::ostream& out);
std::map<Transition, LabeledIcfSet> read_labeled_icf_csv(
    std::istream& in, const std::string& name = "<stream>");

}  // namespace gaitshift
