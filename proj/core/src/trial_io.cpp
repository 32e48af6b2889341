#include "gaitshift/trial_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, std::size_t row) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DataFormatError("not a number: '" + s + "'", row);
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  return out;
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Trial read_trial_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line))
    throw DataFormatError("empty input '" + name + "'", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv(line);
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header.size(); ++i) columns[header[i]] = i;
  for (const char* required : {"t", "theta_th", "grf"})
    if (!columns.count(required))
      throw DataFormatError(std::string("missing column '") + required + "'", 1);

  auto cell = [&](const std::vector<std::string>& fields, const char* column)
      -> std::optional<std::string> {
    const auto it = columns.find(column);
    if (it == columns.end() || it->second >= fields.size()) return std::nullopt;
    if (fields[it->second].empty()) return std::nullopt;
    return fields[it->second];
  };

  Trial trial;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() > header.size())
      throw DataFormatError("more fields than header columns", row);

    KinematicFrame frame;
    const auto t = cell(fields, "t");
    const auto theta = cell(fields, "theta_th");
    const auto grf = cell(fields, "grf");
    if (!t || !theta || !grf)
      throw DataFormatError("missing required cell", row);
    frame.t = parse_double(*t, row);
    frame.theta_th = parse_double(*theta, row);
    frame.grf = parse_double(*grf, row);
    if (const auto v = cell(fields, "theta_dot"))
      frame.theta_dot = parse_double(*v, row);
    if (const auto v = cell(fields, "theta_ddot"))
      frame.theta_ddot = parse_double(*v, row);
    if (const auto v = cell(fields, "label")) {
      const auto mode = parse_mode(*v);
      if (!mode) throw DataFormatError("unknown label '" + *v + "'", row);
      frame.label = *mode;
    }
    trial.frames.push_back(frame);
  }
  if (trial.frames.empty())
    throw DataFormatError("no data rows in '" + name + "'", row);

  const bool all_labeled =
      std::all_of(trial.frames.begin(), trial.frames.end(),
                  [](const KinematicFrame& f) { return f.label.has_value(); });
  if (all_labeled) trial.gt_transitions = derive_gt_transitions(trial.frames);
  return trial;
}

Trial load_trial_csv(const std::string& path) {
  auto in = open_input(path);
  return read_trial_csv(in, path);
}

void write_trial_csv(const Trial& trial, std::ostream& out) {
  const auto any_of_frames = [&](auto member) {
    return std::any_of(trial.frames.begin(), trial.frames.end(),
                       [&](const KinematicFrame& f) { return (f.*member).has_value(); });
  };
  const bool has_dot = any_of_frames(&KinematicFrame::theta_dot);
  const bool has_ddot = any_of_frames(&KinematicFrame::theta_ddot);
  const bool has_label = any_of_frames(&KinematicFrame::label);

  out << "t,theta_th";
  if (has_dot) out << ",theta_dot";
  if (has_ddot) out << ",theta_ddot";
  out << ",grf";
  if (has_label) out << ",label";
  out << "\n";

  for (const KinematicFrame& f : trial.frames) {
    out << format_double(f.t) << ',' << format_double(f.theta_th);
    if (has_dot) out << ',' << (f.theta_dot ? format_double(*f.theta_dot) : "");
    if (has_ddot) out << ',' << (f.theta_ddot ? format_double(*f.theta_ddot) : "");
    out << ',' << format_double(f.grf);
    if (has_label) out << ',' << (f.label ? to_string(*f.label) : "");
    out << "\n";
  }
}

void save_trial_csv(const Trial& trial, const std::string& path) {
  auto out = open_output(path);
  write_trial_csv(trial, out);
}

void write_detections_csv(const std::vector<TransitionEvent>& events,
                          std::ostream& out) {
  out << "t,from,to,icf,threshold\n";
  for (const TransitionEvent& e : events)
    out << format_double(e.t) << ',' << to_string(e.from) << ','
        << to_string(e.to) << ',' << format_double(e.icf_value) << ','
        << format_double(e.threshold_used) << "\n";
}

void save_detections_csv(const std::vector<TransitionEvent>& events,
                         const std::string& path) {
  auto out = open_output(path);
  write_detections_csv(events, out);
}

std::string thresholds_to_json(const ThresholdSet& set) {
  ordered_json j;
  j["system"] = to_string(set.system);
  j["thr_range"] = {set.thr_low, set.thr_high};
  ordered_json entries;
  for (Transition t : kAllTransitions) {
    const ThresholdEntry& e = set[t];
    entries[to_string(t)] = {{"value", e.value}, {"bound", to_string(e.bound)}};
  }
  j["thresholds"] = entries;
  return j.dump(2) + "\n";
}

ThresholdSet thresholds_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  ThresholdSet set;
  try {
    const auto system = parse_system(j.at("system").get<std::string>());
    if (!system) throw InvalidInputError("unknown system tag");
    set.system = *system;
    const auto& range = j.at("thr_range");
    if (!range.is_array() || range.size() != 2)
      throw InvalidInputError("thr_range must be a two-element array");
    set.thr_low = range[0].get<double>();
    set.thr_high = range[1].get<double>();
    for (Transition t : kAllTransitions) {
      const auto& entry = j.at("thresholds").at(to_string(t));
      set[t].value = entry.at("value").get<double>();
      const auto bound = parse_bound(entry.at("bound").get<std::string>());
      if (!bound) throw InvalidInputError("unknown bound kind");
      set[t].bound = *bound;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed threshold file: ") + e.what());
  }
  return set;
}

void save_thresholds_json(const ThresholdSet& set, const std::string& path) {
  open_output(path) << thresholds_to_json(set);
}

ThresholdSet load_thresholds_json(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return thresholds_from_json(buf.str());
}

std::string weights_to_json(const MappingWeights& weights) {
  ordered_json j;
  j["weights"] = weights.w;
  return j.dump(2) + "\n";
}

MappingWeights weights_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  MappingWeights weights;
  try {
    const auto& arr = j.at("weights");
    if (!arr.is_array() || arr.size() != kMappingBasisSize)
      throw InvalidInputError("weights must hold exactly 7 numbers");
    for (std::size_t i = 0; i < kMappingBasisSize; ++i)
      weights.w[i] = arr[i].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed weights file: ") + e.what());
  }
  return weights;
}

void save_weights_json(const MappingWeights& weights, const std::string& path) {
  open_output(path) << weights_to_json(weights);
}

MappingWeights load_weights_json(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return weights_from_json(buf.str());
}

std::string mapping_report_to_json(const MappingFitReport& report) {
  ordered_json j;
  j["rmse_before"] = report.rmse_before;
  j["rmse_after"] = report.rmse_after;
  j["residual_gradient_norm"] = report.residual_gradient_norm;
  j["n_samples"] = report.n_samples;
  j["mhf_mean_before"] = report.mhf_mean_before;
  j["mhf_mean_after"] = report.mhf_mean_after;
  j["mhf_mean_reference"] = report.mhf_mean_reference;
  return j.dump(2) + "\n";
}

std::string tune_result_to_json(const TuneResult& result) {
  ordered_json j;
  j["best_th"] = result.best_th;
  j["best_j"] = result.best_j;
  j["evaluations"] = result.evaluations;
  j["seed"] = result.seed;
  ordered_json trace = ordered_json::array();
  for (const auto& [th, value] : result.trace)
    trace.push_back({{"th", th}, {"j", value}});
  j["trace"] = trace;
  return j.dump(2) + "\n";
}

std::string evaluation_report_to_json(const EvaluationReport& report) {
  ordered_json j;
  const TransitionTally all = report.overall();
  j["overall"] = {{"detected", all.n_detected},
                  {"total", all.n_total},
                  {"accuracy", all.accuracy_percent()}};
  ordered_json per = ordered_json::object();
  for (Transition t : kAllTransitions) {
    const auto it = report.per_transition.find(t);
    if (it == report.per_transition.end()) continue;
    per[to_string(t)] = {{"detected", it->second.n_detected},
                         {"total", it->second.n_total},
                         {"accuracy", it->second.accuracy_percent()}};
  }
  j["per_transition"] = per;
  return j.dump(2) + "\n";
}

void write_icf_csv(const std::map<Transition, std::vector<double>>& icfs,
                   std::ostream& out) {
  out << "transition,value\n";
  for (const auto& [t, values] : icfs)
    for (double v : values)
      out << to_string(t) << ',' << format_double(v) << "\n";
}

std::map<Transition, std::vector<double>> read_icf_csv(std::istream& in,
                                                       const std::string& name) {
  std::string line;
  if (!std::getline(in, line))
    throw DataFormatError("empty input '" + name + "'", 1);
  std::map<Transition, std::vector<double>> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() < 2) throw DataFormatError("expected transition,value", row);
    const auto t = parse_transition(fields[0]);
    if (!t) throw DataFormatError("unknown transition '" + fields[0] + "'", row);
    out[*t].push_back(parse_double(fields[1], row));
  }
  return out;
}

void save_icf_csv(const std::map<Transition, std::vector<double>>& icfs,
                  const std::string& path) {
  auto out = open_output(path);
  write_icf_csv(icfs, out);
}

std::map<Transition, std::vector<double>> load_icf_csv(const std::string& path) {
  auto in = open_input(path);
  return read_icf_csv(in, path);
}

void write_labeled_icf_csv(const std::map<Transition, LabeledIcfSet>& sets,
                           std::ostream& out) {
  out << "transition,value,label\n";
  for (const auto& [t, set] : sets)
    for (std::size_t i = 0; i < set.values.size(); ++i)
      out << to_string(t) << ',' << format_double(set.values[i]) << ','
          << set.labels[i] << "\n";
}

std::map<Transition, LabeledIcfSet> read_labeled_icf_csv(
    std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line))
    throw DataFormatError("empty input '" + name + "'", 1);
  std::map<Transition, LabeledIcfSet> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() < 3)
      throw DataFormatError("expected transition,value,label", row);
    const auto t = parse_transition(fields[0]);
    if (!t) throw DataFormatError("unknown transition '" + fields[0] + "'", row);
    LabeledIcfSet& set = out[*t];
    set.transition = *t;
    set.values.push_back(parse_double(fields[1], row));
    const std::string& label = fields[2];
    if (label != "0" && label != "1")
      throw DataFormatError("label must be 0 or 1", row);
    set.labels.push_back(label == "1" ? 1 : 0);
  }
  return out;
}

}  // namespace gaitshift
