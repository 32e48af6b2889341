// Batch front end for the transition-detection library. Subcommands cover
// synthetic data generation, misalignment fitting, stream replay, accuracy
// evaluation, threshold training and tuning, and plot-data export.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaitshift/alignment.hpp"
#include "gaitshift/derivatives.hpp"
#include "gaitshift/detectors.hpp"
#include "gaitshift/errors.hpp"
#include "gaitshift/evaluation.hpp"
#include "gaitshift/sba.hpp"
#include "gaitshift/synthetic.hpp"
#include "gaitshift/thresholds.hpp"
#include "gaitshift/trial_io.hpp"
#include "gaitshift/tuning.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace gaitshift;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Effective settings shared by every subcommand. Precedence is
/// flags > config file > built-in defaults for the selected system.
struct RunConfig {
  SystemTag system = SystemTag::EWalk;
  DetectorConfig detector = detector_defaults(SystemTag::EWalk);
  TransitionPair pair = TransitionPair::DescentPair;
  std::size_t budget = 30;
  unsigned seed = 0;
  std::string thresholds_path;
  std::string map_path;
};

ordered_json config_to_json(const RunConfig& config) {
  ordered_json j;
  j["system"] = to_string(config.system);
  j["pair"] = to_string(config.pair);
  j["budget"] = config.budget;
  j["seed"] = config.seed;
  j["detector"] = {{"mhf_velocity_band", config.detector.mhf_velocity_band},
                   {"thr_low", config.detector.thr_low},
                   {"thr_high", config.detector.thr_high},
                   {"grf_load_threshold", config.detector.grf_load_threshold},
                   {"grf_debounce", config.detector.grf_debounce},
                   {"smoothing_window", config.detector.smoothing_window}};
  j["thresholds"] = config.thresholds_path;
  j["map"] = config.map_path;
  return j;
}

/// Values present in `j` override `config`. The system tag is resolved by
/// the caller before this runs, so detector overrides land on the right
/// per-system defaults.
void apply_config_json(const ordered_json& j, RunConfig& config) {
  if (j.contains("pair")) {
    const auto pair = parse_pair(j.at("pair").get<std::string>());
    if (!pair) throw UsageError("unknown pair in config file");
    config.pair = *pair;
  }
  if (j.contains("budget")) config.budget = j.at("budget").get<std::size_t>();
  if (j.contains("seed")) config.seed = j.at("seed").get<unsigned>();
  if (j.contains("detector")) {
    const ordered_json& d = j.at("detector");
    if (d.contains("mhf_velocity_band"))
      config.detector.mhf_velocity_band = d.at("mhf_velocity_band").get<double>();
    if (d.contains("thr_low")) config.detector.thr_low = d.at("thr_low").get<double>();
    if (d.contains("thr_high"))
      config.detector.thr_high = d.at("thr_high").get<double>();
    if (d.contains("grf_load_threshold"))
      config.detector.grf_load_threshold = d.at("grf_load_threshold").get<double>();
    if (d.contains("grf_debounce"))
      config.detector.grf_debounce = d.at("grf_debounce").get<std::size_t>();
    if (d.contains("smoothing_window"))
      config.detector.smoothing_window = d.at("smoothing_window").get<std::size_t>();
  }
  if (j.contains("thresholds"))
    config.thresholds_path = j.at("thresholds").get<std::string>();
  if (j.contains("map")) config.map_path = j.at("map").get<std::string>();
}

void require_readable(const std::string& path) {
  if (!fs::exists(path))
    throw DataFormatError("input file does not exist: '" + path + "'");
}

/// Raw flag values captured by CLI11; only flags the user actually passed
/// override the config file.
struct FlagValues {
  std::string config_path, system, pair;
  std::size_t budget = 0;
  unsigned seed = 0;
  std::string thresholds_path, map_path;
  bool dump_config = false;
};

void add_common_flags(CLI::App* cmd, FlagValues& flags) {
  cmd->add_option("--config", flags.config_path,
                  "JSON settings file; explicit flags win over it");
  cmd->add_option("--system", flags.system, "system tag: ewalk, autonomyo, custom");
  cmd->add_option("--pair", flags.pair,
                  "transition pair: ws-sw, wsa-saw, wsd-sdw (ws/wsa/wsd for short)");
  cmd->add_option("--budget", flags.budget, "objective evaluation budget");
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--thresholds", flags.thresholds_path, "threshold-set JSON");
  cmd->add_option("--map", flags.map_path, "alignment weights JSON");
  cmd->add_flag("--dump-config", flags.dump_config,
                "print the effective settings as JSON and exit");
}

TransitionPair parse_pair_flag(const std::string& s) {
  if (const auto pair = parse_pair(s)) return *pair;
  if (s == "ws") return TransitionPair::SitPair;
  if (s == "wsa") return TransitionPair::AscentPair;
  if (s == "wsd") return TransitionPair::DescentPair;
  throw UsageError("unknown pair '" + s + "'");
}

/// Builds the effective config from built-in defaults, then the config file,
/// then explicit flags. The system tag is fixed first so the detector
/// defaults it implies are in place before any detector override applies.
RunConfig resolve_config(const CLI::App* cmd, const FlagValues& flags) {
  ordered_json file_json;
  bool have_file = false;
  if (cmd->count("--config")) {
    require_readable(flags.config_path);
    std::ifstream in(flags.config_path);
    try {
      file_json = ordered_json::parse(in);
    } catch (const ordered_json::exception& e) {
      throw DataFormatError("config file '" + flags.config_path + "': " + e.what());
    }
    have_file = true;
  }

  RunConfig config;
  if (cmd->count("--system")) {
    const auto tag = parse_system(flags.system);
    if (!tag) throw UsageError("unknown system '" + flags.system + "'");
    config.system = *tag;
  } else if (have_file && file_json.contains("system")) {
    const auto tag = parse_system(file_json.at("system").get<std::string>());
    if (!tag) throw UsageError("unknown system in config file");
    config.system = *tag;
  }
  config.detector = detector_defaults(config.system);

  if (have_file) apply_config_json(file_json, config);
  if (cmd->count("--pair")) config.pair = parse_pair_flag(flags.pair);
  if (cmd->count("--budget")) config.budget = flags.budget;
  if (cmd->count("--seed")) config.seed = flags.seed;
  if (cmd->count("--thresholds")) config.thresholds_path = flags.thresholds_path;
  if (cmd->count("--map")) config.map_path = flags.map_path;
  return config;
}

/// Shared post-resolution handling: --dump-config prints and short-circuits.
bool maybe_dump_config(const RunConfig& config, const FlagValues& flags) {
  if (!flags.dump_config) return false;
  std::cout << config_to_json(config).dump(2) << "\n";
  return true;
}

ThresholdSet thresholds_for(const RunConfig& config) {
  if (config.thresholds_path.empty()) return default_thresholds(config.system);
  require_readable(config.thresholds_path);
  return load_thresholds_json(config.thresholds_path);
}

std::optional<MappingWeights> map_for(const RunConfig& config) {
  if (config.map_path.empty()) return std::nullopt;
  require_readable(config.map_path);
  return load_weights_json(config.map_path);
}

Trial load_trial_checked(const std::string& path) {
  require_readable(path);
  return load_trial_csv(path);
}

// ---------------------------------------------------------------------------
// synth

int run_synth(const RunConfig& config, const std::string& scenario,
              double noise, const std::string& out) {
  ScenarioParams params;
  params.system = config.system;
  params.noise_std = noise;
  params.seed = config.seed;

  const auto save_many = [&](const std::vector<Trial>& trials,
                             const std::string& stem) {
    for (const Trial& t : trials)
      save_trial_csv(t, out + "-" + stem + std::to_string(t.index) + ".csv");
  };

  if (scenario == "all") {
    save_trial_csv(scenario_all_transitions(params), out);
  } else if (scenario == "delayed-descent") {
    save_trial_csv(scenario_delayed_descent(params), out);
  } else if (scenario == "deadline-descent") {
    save_trial_csv(scenario_deadline_descent(params), out);
  } else if (scenario == "descent-subject") {
    save_many(scenario_descent_subject(params), "");
  } else if (scenario == "rom-subjects") {
    const RomScenario rom = scenario_rom_subjects(params);
    save_many(rom.training_subject, "train-");
    save_many(rom.new_subject, "new-");
  } else {
    throw UsageError("unknown scenario '" + scenario + "'");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// run-fsm / evaluate

int run_fsm_cmd(const RunConfig& config, const std::string& in,
                const std::string& out) {
  const Trial trial = load_trial_checked(in);
  const auto weights = map_for(config);
  const ReplayResult result = replay(trial, thresholds_for(config), config.detector,
                                     weights ? &*weights : nullptr);
  save_detections_csv(result.detections, out);
  return kExitOk;
}

int run_evaluate(const RunConfig& config, const std::vector<std::string>& inputs,
                 const std::string& report_path, const std::string& icf_out) {
  std::vector<Trial> trials;
  for (const std::string& path : inputs) trials.push_back(load_trial_checked(path));
  if (trials.empty()) throw UsageError("evaluate needs at least one --in trial");

  const auto weights = map_for(config);
  const EvaluationReport report =
      evaluate_trials(trials, thresholds_for(config), config.detector,
                      1.2, weights ? &*weights : nullptr);
  {
    std::ofstream out(report_path);
    if (!out) throw DataFormatError("cannot write '" + report_path + "'");
    out << evaluation_report_to_json(report);
  }
  if (!icf_out.empty()) {
    std::map<Transition, std::vector<double>> pooled;
    for (const Trial& t : trials)
      for (const auto& [tr, values] : collect_transition_icfs(t, config.detector))
        pooled[tr].insert(pooled[tr].end(), values.begin(), values.end());
    save_icf_csv(pooled, icf_out);
  }
  const TransitionTally overall = report.overall();
  std::printf("%zu/%zu transitions detected (%.1f%%)\n", overall.n_detected,
              overall.n_total, overall.accuracy_percent());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fit-map / apply-map

/// Splits a trial into heel-strike-delimited cycles with derivatives present.
std::vector<std::vector<KinematicFrame>> cycles_of(const Trial& trial,
                                                   const DetectorConfig& config) {
  const std::vector<KinematicFrame> frames = ensure_derivatives(trial.frames, config);
  const std::vector<GaitEvent> events = collect_events(frames, config);
  std::vector<std::size_t> cuts;
  for (const GaitEvent& e : events) {
    if (e.kind != EventKind::Hs) continue;
    const auto at = std::lower_bound(
        frames.begin(), frames.end(), e.t,
        [](const KinematicFrame& f, double t) { return f.t < t; });
    cuts.push_back(static_cast<std::size_t>(at - frames.begin()));
  }
  std::vector<std::vector<KinematicFrame>> cycles;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    if (cuts[c + 1] - cuts[c] < 2) continue;
    cycles.emplace_back(frames.begin() + static_cast<long>(cuts[c]),
                        frames.begin() + static_cast<long>(cuts[c + 1]));
  }
  if (cycles.empty())
    throw DataFormatError("trial '" + trial.subject +
                          "' contains no complete heel-strike-delimited cycles");
  return cycles;
}

int run_fit_map(const RunConfig& config, const std::string& measured_path,
                const std::string& reference_path, std::size_t n_points,
                const std::string& out, const std::string& report_path) {
  const Trial measured_trial = load_trial_checked(measured_path);
  const Trial reference_trial = load_trial_checked(reference_path);

  std::vector<CycleSeries> measured;
  for (const auto& cycle : cycles_of(measured_trial, config.detector))
    measured.push_back(resample_cycle(cycle, n_points));

  // Streams recorded in lockstep pair cycle for cycle; otherwise the
  // reference cycles collapse into one mean curve broadcast to all.
  std::vector<std::vector<double>> references;
  const auto ref_cycles = cycles_of(reference_trial, config.detector);
  if (ref_cycles.size() == measured.size()) {
    for (const auto& cycle : ref_cycles)
      references.push_back(resample_cycle(cycle, n_points).theta);
  } else {
    std::vector<double> mean_ref(n_points, 0.0);
    for (const auto& cycle : ref_cycles) {
      const CycleSeries r = resample_cycle(cycle, n_points);
      for (std::size_t i = 0; i < n_points; ++i) mean_ref[i] += r.theta[i];
    }
    for (double& v : mean_ref) v /= static_cast<double>(ref_cycles.size());
    references.push_back(std::move(mean_ref));
  }

  const FitOutcome fit = fit_map(measured, references);
  save_weights_json(fit.weights, out);
  if (fit.rank_deficient)
    std::fprintf(stderr,
                 "note: basis is rank deficient on this data; "
                 "minimum-norm solution written\n");

  const MappingFitReport report = evaluate_map(fit.weights, measured, references);
  if (!report_path.empty()) {
    std::ofstream out_stream(report_path);
    if (!out_stream) throw DataFormatError("cannot write '" + report_path + "'");
    out_stream << mapping_report_to_json(report);
  }
  std::printf("rmse %.3f -> %.3f deg over %zu samples\n", report.rmse_before,
              report.rmse_after, report.n_samples);
  return kExitOk;
}

int run_apply_map(const RunConfig& config, const std::string& in,
                  const std::string& out) {
  const auto weights = map_for(config);
  if (!weights) throw UsageError("apply-map requires --map");
  Trial trial = load_trial_checked(in);
  trial.frames = ensure_derivatives(std::move(trial.frames), config.detector);
  for (KinematicFrame& f : trial.frames) {
    f.theta_th = apply_map(*weights, f);
    f.theta_dot.reset();
    f.theta_ddot.reset();
  }
  trial.frames = estimate_derivatives(std::move(trial.frames), config.detector);
  save_trial_csv(trial, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train-thresholds / tune

int run_train_thresholds(const RunConfig& config, const std::string& in,
                         const std::string& out) {
  require_readable(in);
  std::ifstream stream(in);
  const auto sets = read_labeled_icf_csv(stream, in);
  const ThresholdSet derived = derive_threshold_set(sets, config.system);
  save_thresholds_json(derived, out);
  return kExitOk;
}

int run_tune_sba(const RunConfig& config, const std::string& training_path,
                 const std::string& subject_path, const std::string& out) {
  require_readable(training_path);
  require_readable(subject_path);
  const auto training_samples = load_icf_csv(training_path);
  const auto subject_samples = load_icf_csv(subject_path);

  std::map<Transition, IcfStats> training, subject;
  for (const auto& [tr, values] : training_samples)
    training[tr] = compute_icf_stats(values, tr);
  for (const auto& [tr, values] : subject_samples)
    subject[tr] = compute_icf_stats(values, tr);

  const ApplySbaOutcome outcome =
      apply_sba(thresholds_for(config), training, subject);
  save_thresholds_json(outcome.thresholds, out);
  for (const Transition t : outcome.tuned)
    std::printf("%s rescaled to %.3f\n", std::string(to_string(t)).c_str(),
                outcome.thresholds[t].value);
  for (const Transition t : outcome.degenerate)
    std::printf("%s kept at %.3f (degenerate statistics)\n",
                std::string(to_string(t)).c_str(), outcome.thresholds[t].value);
  return kExitOk;
}

int run_tune_search(const RunConfig& config, bool use_bo,
                    const std::vector<std::string>& inputs,
                    const std::string& result_path, const std::string& tuned_out) {
  std::vector<Trial> trials;
  for (const std::string& path : inputs) trials.push_back(load_trial_checked(path));
  if (trials.empty()) throw UsageError("tuning needs at least one --in trial");

  const ThresholdSet base = thresholds_for(config);
  const auto objective =
      make_trial_objective(trials, base, config.detector, config.pair,
                           ObjectiveConfig::for_pair(config.pair));
  const SearchSpace space = SearchSpace::for_pair(config.pair);

  TuneResult result;
  if (use_bo) {
    BoConfig bo;
    bo.budget = config.budget;
    bo.seed = config.seed;
    result = bo_optimize(objective, space, bo);
  } else {
    result = grid_search(objective, space);
  }

  {
    std::ofstream out(result_path);
    if (!out) throw DataFormatError("cannot write '" + result_path + "'");
    out << tune_result_to_json(result);
  }
  if (!tuned_out.empty())
    save_thresholds_json(with_pair_thresholds(base, config.pair, result.best_th),
                         tuned_out);
  std::printf("best (%.3f, %.3f) with objective %.6f after %zu evaluations\n",
              result.best_th[0], result.best_th[1], result.best_j,
              result.evaluations);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// export-plots

/// Classifies a results-directory JSON file by its top-level keys.
enum class ArtifactKind { TuneResult, EvaluationReport, Thresholds, Unknown };

ArtifactKind classify(const ordered_json& j) {
  if (!j.is_object()) return ArtifactKind::Unknown;
  if (j.contains("trace") && j.contains("best_th")) return ArtifactKind::TuneResult;
  if (j.contains("overall") && j.contains("per_transition"))
    return ArtifactKind::EvaluationReport;
  if (j.contains("thresholds") && j.contains("system"))
    return ArtifactKind::Thresholds;
  return ArtifactKind::Unknown;
}

int run_export_plots(const std::string& results_dir, const std::string& out_dir) {
  if (!fs::is_directory(results_dir))
    throw DataFormatError("results directory '" + results_dir + "' does not exist");
  fs::create_directories(out_dir);

  struct Surface {
    std::string name;
    ordered_json j;
  };
  std::vector<Surface> tune_results;
  std::vector<Surface> reports, threshold_sets;

  std::vector<fs::path> entries;
  for (const auto& entry : fs::directory_iterator(results_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      entries.push_back(entry.path());
  std::sort(entries.begin(), entries.end());

  for (const fs::path& path : entries) {
    std::ifstream in(path);
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const ordered_json::exception&) {
      continue;  // not plot input
    }
    const std::string stem = path.stem().string();
    switch (classify(j)) {
      case ArtifactKind::TuneResult: tune_results.push_back({stem, j}); break;
      case ArtifactKind::EvaluationReport: reports.push_back({stem, j}); break;
      case ArtifactKind::Thresholds: threshold_sets.push_back({stem, j}); break;
      case ArtifactKind::Unknown: break;
    }
  }
  if (tune_results.empty() && reports.empty() && threshold_sets.empty())
    throw DataFormatError("no recognized result artifacts in '" + results_dir + "'");

  // One objective-surface CSV per tuning run: the evaluated lattice/trace.
  for (const Surface& s : tune_results) {
    std::ofstream out(fs::path(out_dir) / (s.name + "-surface.csv"));
    out << "th0,th1,objective\n";
    for (const auto& point : s.j.at("trace"))
      out << point.at("th")[0].dump() << ',' << point.at("th")[1].dump() << ','
          << point.at("j").dump() << "\n";
  }

  // Minima and evaluation counts side by side for optimizer comparisons.
  if (!tune_results.empty()) {
    std::ofstream out(fs::path(out_dir) / "optimizer-comparison.csv");
    out << "source,best_th0,best_th1,best_objective,evaluations\n";
    for (const Surface& s : tune_results)
      out << s.name << ',' << s.j.at("best_th")[0].dump() << ','
          << s.j.at("best_th")[1].dump() << ',' << s.j.at("best_j").dump() << ','
          << s.j.at("evaluations").dump() << "\n";
  }

  // Accuracy bars, one row per (run, transition) plus the overall row.
  if (!reports.empty()) {
    std::ofstream out(fs::path(out_dir) / "accuracy-bars.csv");
    out << "source,transition,detected,total,accuracy\n";
    for (const Surface& s : reports) {
      const ordered_json& overall = s.j.at("overall");
      out << s.name << ",overall," << overall.at("detected").dump() << ','
          << overall.at("total").dump() << ',' << overall.at("accuracy").dump()
          << "\n";
      for (const auto& [name, tally] : s.j.at("per_transition").items())
        out << s.name << ',' << name << ',' << tally.at("detected").dump() << ','
            << tally.at("total").dump() << ',' << tally.at("accuracy").dump()
            << "\n";
    }
  }

  // Threshold tables for before/after comparisons.
  if (!threshold_sets.empty()) {
    std::ofstream out(fs::path(out_dir) / "threshold-changes.csv");
    out << "source,transition,value,bound\n";
    for (const Surface& s : threshold_sets)
      for (const auto& [name, entry] : s.j.at("thresholds").items())
        out << s.name << ',' << name << ',' << entry.at("value").dump() << ','
            << entry.at("bound").get<std::string>() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locomotion-mode transition detection and threshold tuning"};
  app.require_subcommand(1);

  // synth
  FlagValues synth_flags;
  std::string synth_scenario = "all", synth_out;
  double synth_noise = 0.0;
  CLI::App* synth = app.add_subcommand(
      "synth", "generate synthetic trials (all, delayed-descent, "
               "deadline-descent, descent-subject, rom-subjects)");
  add_common_flags(synth, synth_flags);
  synth->add_option("--scenario", synth_scenario, "scenario name");
  synth->add_option("--noise", synth_noise, "angle noise std in degrees");
  synth->add_option("--out", synth_out, "output CSV path (prefix for multi-trial)");

  // run-fsm
  FlagValues fsm_flags;
  std::string fsm_in, fsm_out;
  CLI::App* run_fsm = app.add_subcommand(
      "run-fsm", "replay a trial through the detector and state machine");
  add_common_flags(run_fsm, fsm_flags);
  run_fsm->add_option("--in", fsm_in, "trial CSV");
  run_fsm->add_option("--out", fsm_out, "detections CSV");

  // evaluate
  FlagValues eval_flags;
  std::vector<std::string> eval_inputs;
  std::string eval_report, eval_icf_out;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "score detection accuracy against ground-truth labels");
  add_common_flags(evaluate, eval_flags);
  evaluate->add_option("--in", eval_inputs, "trial CSVs");
  evaluate->add_option("--report", eval_report, "evaluation report JSON");
  evaluate->add_option("--icf-out", eval_icf_out,
                       "optional pooled trigger-feature CSV");

  // fit-map
  FlagValues fit_flags;
  std::string fit_measured, fit_reference, fit_out, fit_report;
  std::size_t fit_points = 100;
  CLI::App* fit_map_cmd = app.add_subcommand(
      "fit-map", "fit misalignment-correction weights from paired streams");
  add_common_flags(fit_map_cmd, fit_flags);
  fit_map_cmd->add_option("--measured", fit_measured, "measured trial CSV");
  fit_map_cmd->add_option("--reference", fit_reference, "reference trial CSV");
  fit_map_cmd->add_option("--cycle-samples", fit_points,
                          "samples per normalized cycle");
  fit_map_cmd->add_option("--out", fit_out, "weights JSON");
  fit_map_cmd->add_option("--fit-report", fit_report, "optional fit-report JSON");

  // apply-map
  FlagValues apply_flags;
  std::string apply_in, apply_out;
  CLI::App* apply_map_cmd = app.add_subcommand(
      "apply-map", "rewrite a trial's angle stream through fitted weights");
  add_common_flags(apply_map_cmd, apply_flags);
  apply_map_cmd->add_option("--in", apply_in, "trial CSV");
  apply_map_cmd->add_option("--out", apply_out, "corrected trial CSV");

  // train-thresholds
  FlagValues train_flags;
  std::string train_in, train_out;
  CLI::App* train = app.add_subcommand(
      "train-thresholds", "derive a threshold set from labeled feature samples");
  add_common_flags(train, train_flags);
  train->add_option("--in", train_in, "labeled feature CSV");
  train->add_option("--out", train_out, "threshold-set JSON");

  // tune (sba | bo | grid)
  FlagValues tune_flags;
  std::string tune_training, tune_subject, tune_out;
  std::vector<std::string> tune_inputs;
  std::string tune_result_path, tune_tuned_out;
  CLI::App* tune = app.add_subcommand("tune", "personalize thresholds");
  tune->require_subcommand(1);
  CLI::App* tune_sba = tune->add_subcommand(
      "sba", "rescale thresholds from population statistics");
  add_common_flags(tune_sba, tune_flags);
  tune_sba->add_option("--training", tune_training, "training-population feature CSV");
  tune_sba->add_option("--subject", tune_subject, "subject feature CSV");
  tune_sba->add_option("--out", tune_out, "tuned threshold-set JSON");
  CLI::App* tune_bo = tune->add_subcommand(
      "bo", "surrogate-guided threshold search on labeled trials");
  CLI::App* tune_grid = tune->add_subcommand(
      "grid", "exhaustive lattice threshold search on labeled trials");
  for (CLI::App* cmd : {tune_bo, tune_grid}) {
    add_common_flags(cmd, tune_flags);
    cmd->add_option("--in", tune_inputs, "labeled trial CSVs");
    cmd->add_option("--result", tune_result_path, "tuning-result JSON");
    cmd->add_option("--tuned-out", tune_tuned_out, "optional tuned threshold JSON");
  }

  // export-plots
  std::string plots_results, plots_out;
  CLI::App* export_plots = app.add_subcommand(
      "export-plots", "flatten run artifacts into plot-ready CSV series");
  export_plots->add_option("--results", plots_results, "directory of run artifacts");
  export_plots->add_option("--out", plots_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto require = [](const std::string& value, const char* flag) {
    if (value.empty())
      throw UsageError(std::string("missing required flag ") + flag);
  };

  try {
    if (synth->parsed()) {
      const RunConfig config = resolve_config(synth, synth_flags);
      if (maybe_dump_config(config, synth_flags)) return kExitOk;
      require(synth_out, "--out");
      return run_synth(config, synth_scenario, synth_noise, synth_out);
    }
    if (run_fsm->parsed()) {
      const RunConfig config = resolve_config(run_fsm, fsm_flags);
      if (maybe_dump_config(config, fsm_flags)) return kExitOk;
      require(fsm_in, "--in");
      require(fsm_out, "--out");
      return run_fsm_cmd(config, fsm_in, fsm_out);
    }
    if (evaluate->parsed()) {
      const RunConfig config = resolve_config(evaluate, eval_flags);
      if (maybe_dump_config(config, eval_flags)) return kExitOk;
      require(eval_report, "--report");
      return run_evaluate(config, eval_inputs, eval_report, eval_icf_out);
    }
    if (fit_map_cmd->parsed()) {
      const RunConfig config = resolve_config(fit_map_cmd, fit_flags);
      if (maybe_dump_config(config, fit_flags)) return kExitOk;
      require(fit_measured, "--measured");
      require(fit_reference, "--reference");
      require(fit_out, "--out");
      return run_fit_map(config, fit_measured, fit_reference, fit_points, fit_out,
                         fit_report);
    }
    if (apply_map_cmd->parsed()) {
      const RunConfig config = resolve_config(apply_map_cmd, apply_flags);
      if (maybe_dump_config(config, apply_flags)) return kExitOk;
      require(apply_in, "--in");
      require(apply_out, "--out");
      return run_apply_map(config, apply_in, apply_out);
    }
    if (train->parsed()) {
      const RunConfig config = resolve_config(train, train_flags);
      if (maybe_dump_config(config, train_flags)) return kExitOk;
      require(train_in, "--in");
      require(train_out, "--out");
      return run_train_thresholds(config, train_in, train_out);
    }
    if (tune->parsed()) {
      if (tune_sba->parsed()) {
        const RunConfig config = resolve_config(tune_sba, tune_flags);
        if (maybe_dump_config(config, tune_flags)) return kExitOk;
        require(tune_training, "--training");
        require(tune_subject, "--subject");
        require(tune_out, "--out");
        return run_tune_sba(config, tune_training, tune_subject, tune_out);
      }
      CLI::App* selected = tune_bo->parsed() ? tune_bo : tune_grid;
      const RunConfig config = resolve_config(selected, tune_flags);
      if (maybe_dump_config(config, tune_flags)) return kExitOk;
      require(tune_result_path, "--result");
      return run_tune_search(config, tune_bo->parsed(), tune_inputs,
                             tune_result_path, tune_tuned_out);
    }
    if (export_plots->parsed()) {
      require(plots_results, "--results");
      require(plots_out, "--out");
      return run_export_plots(plots_results, plots_out);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const InvalidInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const DataFormatError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
