#ifndef CUSP_EXPERIMENTS_HPP
#define CUSP_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cusp/fitness.hpp"
#include "cusp/ga.hpp"
#include "cusp/shaper.hpp"
#include "cusp/signal_gen.hpp"
#include "cusp/stats.hpp"

namespace cusp {

/// Signed peak-height error of a restored output against the reference
/// output, in percent.
template <typename T>
double relative_error(const Waveform<T>& s_restored, const Waveform<T>& s_ref) {
  double ref = static_cast<double>(peak(s_ref).second);
  if (ref == 0.0) throw std::invalid_argument("relative_error: zero reference peak");
  double got = static_cast<double>(peak(s_restored).second);
  return 100.0 * (got - ref) / ref;
}

struct ConvergenceStats {
  std::size_t runs = 0;
  std::size_t successes = 0;
  StatsSummary generations;
  StatsSummary wall_time;  // seconds
};

struct ScratchConfig {
  PulseSpec pulse;
  ShaperParams ref_params{63, 31, 19, 2};
  double v_fullscale = 20.0;
  FitnessKind kind = FitnessKind::F2;
  GaConfig ga;
  std::size_t runs = 20;
};

struct ScratchResult {
  ConvergenceStats stats;
  std::vector<EvolutionResult> results;  // one per run, seeds derived from ga.seed
};

/// Experiment set 1: repeated evolutions from scratch against a synthetic
/// reference, each run with its own derived seed.
inline ScratchResult run_scratch(const ScratchConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  cfg.ga.validate();
  const IntWaveform v = quantize(gen_exponential(cfg.pulse), cfg.v_fullscale);
  const IntWaveform s_ref = shape(v, cfg.ref_params);

  ScratchResult out;
  out.results.reserve(cfg.runs);
  std::vector<double> gens, times;
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    GaConfig ga = cfg.ga;
    ga.seed = derive_seed(cfg.ga.seed, r);
    EvolutionResult res = evolve(ga, [&](const ShaperParams& p) {
      return evaluate(p, v, s_ref, cfg.kind);
    });
    if (res.converged(ga.target_fitness)) ++out.stats.successes;
    gens.push_back(static_cast<double>(res.generations));
    times.push_back(res.wall_time);
    out.results.push_back(std::move(res));
  }
  out.stats.runs = cfg.runs;
  out.stats.generations = summarize(gens);
  out.stats.wall_time = summarize(times);
  return out;
}

struct DegenerationResult {
  ShaperParams regenerated;
  double fitness = 0.0;  // best fitness reached during calibration
  EvolutionResult evolution;
  double calibration_rel_error = 0.0;  // restored calibration event vs reference output, percent
  std::vector<double> original_peaks;  // reference shaper on original events
  std::vector<double> damaged_peaks;   // reference shaper on degraded events
  std::vector<double> restored_peaks;  // regenerated shaper on degraded events
  std::vector<IntWaveform> restored_outputs;
};

/// Experiment set 2: degrade a designated calibration event, evolve the
/// shaper against the reference output of the original event, then apply
/// the regenerated shaper to the whole degraded event set.
inline DegenerationResult run_degeneration(const std::vector<RealWaveform>& events,
                                           const ShaperParams& ref_params,
                                           const DegradationSpec& deg, const GaConfig& ga,
                                           double v_fullscale = 20.0,
                                           FitnessKind kind = FitnessKind::F2,
                                           std::size_t calibration_index = 0) {
  if (events.empty()) throw std::invalid_argument("empty event set");
  if (calibration_index >= events.size())
    throw std::invalid_argument("calibration_index out of range");
  deg.validate();
  ga.validate();

  // Per-event noise realizations share the degradation master seed.
  auto degrade_event = [&](std::size_t e) {
    DegradationSpec d = deg;
    d.seed = derive_seed(deg.seed, e);
    return degrade(events[e], d);
  };

  const IntWaveform v_cal = quantize(events[calibration_index], v_fullscale);
  const IntWaveform s_ref = shape(v_cal, ref_params);
  const IntWaveform v_deg_cal = quantize(degrade_event(calibration_index), v_fullscale);

  DegenerationResult out;
  out.evolution = evolve(ga, [&](const ShaperParams& p) {
    return evaluate(p, v_deg_cal, s_ref, kind);
  });
  out.regenerated = out.evolution.best_params;
  out.fitness = out.evolution.best_fitness;

  const IntWaveform restored_cal = shape(v_deg_cal, out.regenerated);
  out.calibration_rel_error = relative_error(restored_cal, s_ref);

  out.restored_outputs.reserve(events.size());
  for (std::size_t e = 0; e < events.size(); ++e) {
    const IntWaveform v_orig = quantize(events[e], v_fullscale);
    const IntWaveform v_deg = quantize(degrade_event(e), v_fullscale);
    out.original_peaks.push_back(static_cast<double>(peak(shape(v_orig, ref_params)).second));
    out.damaged_peaks.push_back(static_cast<double>(peak(shape(v_deg, ref_params)).second));
    IntWaveform restored = shape(v_deg, out.regenerated);
    out.restored_peaks.push_back(static_cast<double>(peak(restored).second));
    out.restored_outputs.push_back(std::move(restored));
  }
  return out;
}

struct SweepPoint {
  double d_amplitude_pct = 0.0;  // variation in A, percent
  double d_tau_pct = 0.0;        // variation in tau, percent
  double rel_error_pct = 0.0;    // restored peak vs reference output
  double fitness = 0.0;
  std::size_t generations = 0;
  std::vector<double> fitness_trace;  // best per generation, not serialized
};

struct SweepStats {
  std::vector<SweepPoint> points;
  double mean_error = 0.0;
  double std_error = 0.0;
  LinearFit error_vs_magnitude;  // |error| is not used; signed error vs variation magnitude
};

/// Experiment set 3: degrade the synthetic reference by amplitude and
/// time-constant variations, re-evolve per point, and report the peak
/// relative errors with a correlation analysis against the degradation
/// magnitude.
inline SweepStats run_sweep(const PulseSpec& pulse, const ShaperParams& ref_params,
                            const std::vector<std::pair<double, double>>& variations_pct,
                            const GaConfig& ga, double v_fullscale = 20.0,
                            FitnessKind kind = FitnessKind::F2) {
  if (variations_pct.empty()) throw std::invalid_argument("empty variation list");
  ga.validate();
  const IntWaveform v_ref = quantize(gen_exponential(pulse), v_fullscale);
  const IntWaveform s_ref = shape(v_ref, ref_params);

  SweepStats out;
  out.points.reserve(variations_pct.size());
  std::vector<double> mags, errs;
  for (std::size_t i = 0; i < variations_pct.size(); ++i) {
    auto [da, dtau] = variations_pct[i];
    PulseSpec varied = pulse;
    varied.amplitude = pulse.amplitude * (1.0 + da / 100.0);
    varied.tau = pulse.tau * (1.0 + dtau / 100.0);
    const IntWaveform v = quantize(gen_exponential(varied), v_fullscale);

    GaConfig point_ga = ga;
    point_ga.seed = derive_seed(ga.seed, i);
    EvolutionResult res = evolve(point_ga, [&](const ShaperParams& p) {
      return evaluate(p, v, s_ref, kind);
    });

    SweepPoint pt;
    pt.d_amplitude_pct = da;
    pt.d_tau_pct = dtau;
    pt.rel_error_pct = relative_error(shape(v, res.best_params), s_ref);
    pt.fitness = res.best_fitness;
    pt.generations = res.generations;
    pt.fitness_trace = std::move(res.fitness_trace);
    mags.push_back(std::sqrt(da * da + dtau * dtau));
    errs.push_back(pt.rel_error_pct);
    out.points.push_back(pt);
  }

  double m = 0.0;
  for (double e : errs) m += e;
  m /= static_cast<double>(errs.size());
  double var = 0.0;
  for (double e : errs) var += (e - m) * (e - m);
  out.mean_error = m;
  out.std_error = errs.size() > 1
                      ? std::sqrt(var / static_cast<double>(errs.size() - 1))
                      : 0.0;
  bool mags_vary = std::any_of(mags.begin(), mags.end(),
                               [&](double x) { return x != mags.front(); });
  if (errs.size() >= 3 && mags_vary) out.error_vs_magnitude = linear_fit(mags, errs);
  return out;
}

/// Shape every event with the given params and return the peak heights
/// (in bus units).
inline std::vector<double> shaped_peaks(const std::vector<RealWaveform>& events,
                                        const ShaperParams& params,
                                        double v_fullscale = 20.0,
                                        const ArithmeticPolicy& pol = {}) {
  std::vector<double> peaks;
  peaks.reserve(events.size());
  for (const auto& e : events)
    peaks.push_back(static_cast<double>(peak(shape(quantize(e, v_fullscale), params, pol)).second));
  return peaks;
}

/// Pulse-height histogram of an event set under one shaper configuration.
/// The default range is [0, 1.2 * max peak] of this event set; pass an
/// explicit range when comparing histograms across configurations.
inline Histogram build_histogram(const std::vector<RealWaveform>& events,
                                 const ShaperParams& params, std::size_t bins,
                                 double v_fullscale = 20.0,
                                 std::optional<std::pair<double, double>> range = std::nullopt) {
  if (events.empty()) throw std::invalid_argument("empty event set");
  std::vector<double> peaks = shaped_peaks(events, params, v_fullscale);
  double lo = 0.0, hi = 0.0;
  if (range) {
    lo = range->first;
    hi = range->second;
  } else {
    double mx = *std::max_element(peaks.begin(), peaks.end());
    hi = 1.2 * mx;
    if (!(hi > lo)) hi = lo + 1.0;  // all-zero peaks
  }
  return make_histogram(peaks, bins, lo, hi);
}

}  // namespace cusp

#endif  // CUSP_EXPERIMENTS_HPP
