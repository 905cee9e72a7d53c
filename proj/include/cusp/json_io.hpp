#ifndef CUSP_JSON_IO_HPP
#define CUSP_JSON_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cusp/experiments.hpp"
#include "cusp/fitness.hpp"
#include "cusp/ga.hpp"
#include "cusp/shaper.hpp"
#include "cusp/signal_gen.hpp"
#include "cusp/waveform_io.hpp"

namespace cusp {

using nlohmann::json;

// ShaperParams travel as the "k,l,m1,m2" literal everywhere.
inline void to_json(json& j, const ShaperParams& p) { j = format_params(p); }
inline void from_json(const json& j, ShaperParams& p) {
  p = parse_params(j.get<std::string>());
}

inline void to_json(json& j, const PulseSpec& s) {
  j = json{{"amplitude", s.amplitude}, {"tau", s.tau},       {"t_clk", s.t_clk},
           {"n_samples", s.n_samples}, {"onset", s.onset}};
}
inline void from_json(const json& j, PulseSpec& s) {
  s.amplitude = j.value("amplitude", s.amplitude);
  s.tau = j.value("tau", s.tau);
  s.t_clk = j.value("t_clk", s.t_clk);
  s.n_samples = j.value("n_samples", s.n_samples);
  s.onset = j.value("onset", s.onset);
  s.validate();
}

inline void to_json(json& j, const DegradationSpec& s) {
  j = json{{"delta", s.delta},
           {"serial_sigma", s.serial_sigma},
           {"parallel_amp", s.parallel_amp},
           {"threshold", s.threshold},
           {"seed", s.seed}};
}
inline void from_json(const json& j, DegradationSpec& s) {
  s.delta = j.value("delta", s.delta);
  s.serial_sigma = j.value("serial_sigma", s.serial_sigma);
  s.parallel_amp = j.value("parallel_amp", s.parallel_amp);
  s.threshold = j.value("threshold", s.threshold);
  s.seed = j.value("seed", s.seed);
  s.validate();
}

inline void to_json(json& j, const GaConfig& c) {
  j = json{{"population_size", c.population_size},
           {"elite_count", c.elite_count},
           {"mutation_prob", c.mutation_prob},
           {"max_generations", c.max_generations},
           {"target_fitness", c.target_fitness},
           {"seed", c.seed}};
}
inline void from_json(const json& j, GaConfig& c) {
  c.population_size = j.value("population_size", c.population_size);
  c.elite_count = j.value("elite_count", c.elite_count);
  c.mutation_prob = j.value("mutation_prob", c.mutation_prob);
  c.max_generations = j.value("max_generations", c.max_generations);
  c.target_fitness = j.value("target_fitness", c.target_fitness);
  c.seed = j.value("seed", c.seed);
  c.validate();
}

inline void to_json(json& j, const EvolutionResult& r) {
  j = json{{"best_params", r.best_params},
           {"best_fitness", r.best_fitness},
           {"generations", r.generations},
           {"evaluations", r.evaluations},
           {"wall_time", r.wall_time},
           {"fitness_trace", r.fitness_trace},
           {"seed", r.seed}};
}
inline void from_json(const json& j, EvolutionResult& r) {
  j.at("best_params").get_to(r.best_params);
  j.at("best_fitness").get_to(r.best_fitness);
  j.at("generations").get_to(r.generations);
  j.at("evaluations").get_to(r.evaluations);
  j.at("wall_time").get_to(r.wall_time);
  j.at("fitness_trace").get_to(r.fitness_trace);
  j.at("seed").get_to(r.seed);
}

inline void to_json(json& j, const StatsSummary& s) {
  j = json{{"min", s.min}, {"q1", s.q1},   {"median", s.median},
           {"q3", s.q3},   {"max", s.max}, {"mean", s.mean}};
}

inline void to_json(json& j, const ConvergenceStats& s) {
  j = json{{"runs", s.runs},
           {"successes", s.successes},
           {"generations", s.generations},
           {"wall_time", s.wall_time}};
}

inline void to_json(json& j, const LinearFit& f) {
  j = json{{"slope", f.slope},
           {"intercept", f.intercept},
           {"slope_ci_95", f.slope_ci_95},
           {"pearson_r", f.pearson_r},
           {"significant", f.significant}};
}

inline void to_json(json& j, const SweepPoint& p) {
  j = json{{"d_amplitude_pct", p.d_amplitude_pct},
           {"d_tau_pct", p.d_tau_pct},
           {"rel_error_pct", p.rel_error_pct},
           {"fitness", p.fitness},
           {"generations", p.generations}};
}

inline void to_json(json& j, const SweepStats& s) {
  j = json{{"points", s.points},
           {"mean_error", s.mean_error},
           {"std_error", s.std_error},
           {"error_vs_magnitude", s.error_vs_magnitude}};
}

inline void to_json(json& j, const Histogram& h) {
  j = json{{"bin_edges", h.bin_edges}, {"counts", h.counts}};
}

/// Synthetic stand-in for a recorded event set.
struct SyntheticEnsembleSpec {
  std::size_t n_events = 1000;
  PulseSpec pulse;
  double amplitude_sigma_frac = 0.03;
  std::uint64_t seed = 0;
};

inline void to_json(json& j, const SyntheticEnsembleSpec& s) {
  j = json{{"n_events", s.n_events},
           {"pulse", s.pulse},
           {"amplitude_sigma_frac", s.amplitude_sigma_frac},
           {"seed", s.seed}};
}
inline void from_json(const json& j, SyntheticEnsembleSpec& s) {
  s.n_events = j.value("n_events", s.n_events);
  if (j.contains("pulse")) j.at("pulse").get_to(s.pulse);
  s.amplitude_sigma_frac = j.value("amplitude_sigma_frac", s.amplitude_sigma_frac);
  s.seed = j.value("seed", s.seed);
}

/// Either a path to recorded events (directory of CSVs or an
/// event_id,n,value CSV) or a synthetic ensemble spec.
struct EventSource {
  std::string path;  // empty means synthetic
  SyntheticEnsembleSpec synthetic;
};

inline void to_json(json& j, const EventSource& s) {
  if (!s.path.empty())
    j = json{{"path", s.path}};
  else
    j = json{{"synthetic", s.synthetic}};
}
inline void from_json(const json& j, EventSource& s) {
  if (j.contains("path")) {
    j.at("path").get_to(s.path);
  } else if (j.contains("synthetic")) {
    j.at("synthetic").get_to(s.synthetic);
  } else {
    throw std::invalid_argument("events must specify 'path' or 'synthetic'");
  }
}

inline void to_json(json& j, const ScratchConfig& c) {
  j = json{{"experiment", "scratch"},
           {"pulse", c.pulse},
           {"ref_params", c.ref_params},
           {"v_fullscale", c.v_fullscale},
           {"fitness", fitness_kind_name(c.kind)},
           {"ga", c.ga},
           {"runs", c.runs}};
}
inline void from_json(const json& j, ScratchConfig& c) {
  if (j.contains("pulse")) j.at("pulse").get_to(c.pulse);
  if (j.contains("ref_params")) j.at("ref_params").get_to(c.ref_params);
  c.v_fullscale = j.value("v_fullscale", c.v_fullscale);
  if (j.contains("fitness")) c.kind = parse_fitness_kind(j.at("fitness").get<std::string>());
  if (j.contains("ga")) j.at("ga").get_to(c.ga);
  c.runs = j.value("runs", c.runs);
}

struct DegenerationConfig {
  EventSource events;
  ShaperParams ref_params{63, 31, 19, 2};
  DegradationSpec degradation;
  GaConfig ga;
  double v_fullscale = 20.0;
  FitnessKind kind = FitnessKind::F2;
  std::size_t calibration_index = 0;
  std::size_t bins = 128;
};

inline void to_json(json& j, const DegenerationConfig& c) {
  j = json{{"experiment", "degeneration"},
           {"events", c.events},
           {"ref_params", c.ref_params},
           {"degradation", c.degradation},
           {"ga", c.ga},
           {"v_fullscale", c.v_fullscale},
           {"fitness", fitness_kind_name(c.kind)},
           {"calibration_index", c.calibration_index},
           {"bins", c.bins}};
}
inline void from_json(const json& j, DegenerationConfig& c) {
  j.at("events").get_to(c.events);
  if (j.contains("ref_params")) j.at("ref_params").get_to(c.ref_params);
  if (j.contains("degradation")) j.at("degradation").get_to(c.degradation);
  if (j.contains("ga")) j.at("ga").get_to(c.ga);
  c.v_fullscale = j.value("v_fullscale", c.v_fullscale);
  if (j.contains("fitness")) c.kind = parse_fitness_kind(j.at("fitness").get<std::string>());
  c.calibration_index = j.value("calibration_index", c.calibration_index);
  c.bins = j.value("bins", c.bins);
}

struct SweepConfig {
  PulseSpec pulse;
  ShaperParams ref_params{63, 31, 19, 2};
  std::vector<double> amplitude_pct{-30, -15, 0, 15, 30};
  std::vector<double> tau_pct{-30, -15, 0, 15, 30};
  GaConfig ga;
  double v_fullscale = 20.0;
  FitnessKind kind = FitnessKind::F2;

  /// Full cartesian grid of (amplitude, tau) variations.
  std::vector<std::pair<double, double>> grid() const {
    std::vector<std::pair<double, double>> g;
    g.reserve(amplitude_pct.size() * tau_pct.size());
    for (double da : amplitude_pct)
      for (double dt : tau_pct) g.emplace_back(da, dt);
    return g;
  }
};

inline void to_json(json& j, const SweepConfig& c) {
  j = json{{"experiment", "sweep"},
           {"pulse", c.pulse},
           {"ref_params", c.ref_params},
           {"amplitude_pct", c.amplitude_pct},
           {"tau_pct", c.tau_pct},
           {"ga", c.ga},
           {"v_fullscale", c.v_fullscale},
           {"fitness", fitness_kind_name(c.kind)}};
}
inline void from_json(const json& j, SweepConfig& c) {
  if (j.contains("pulse")) j.at("pulse").get_to(c.pulse);
  if (j.contains("ref_params")) j.at("ref_params").get_to(c.ref_params);
  if (j.contains("amplitude_pct")) j.at("amplitude_pct").get_to(c.amplitude_pct);
  if (j.contains("tau_pct")) j.at("tau_pct").get_to(c.tau_pct);
  if (j.contains("ga")) j.at("ga").get_to(c.ga);
  c.v_fullscale = j.value("v_fullscale", c.v_fullscale);
  if (j.contains("fitness")) c.kind = parse_fitness_kind(j.at("fitness").get<std::string>());
}

/// Materialize an event source into actual waveforms.
inline std::vector<RealWaveform> resolve_events(const EventSource& src) {
  if (!src.path.empty()) return load_events(src.path);
  return gen_event_ensemble(src.synthetic.n_events, src.synthetic.pulse,
                            src.synthetic.amplitude_sigma_frac, src.synthetic.seed);
}

}  // namespace cusp

#endif  // CUSP_JSON_IO_HPP
