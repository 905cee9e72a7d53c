#ifndef CUSP_SIGNAL_GEN_HPP
#define CUSP_SIGNAL_GEN_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cusp/shaper.hpp"

namespace cusp {

/// Derive a decorrelated per-stream seed from a master seed (splitmix64).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Synthetic detector-preamplifier pulse: zero before the onset, then an
/// exponential decay A*exp(-t/tau).
struct PulseSpec {
  double amplitude = 20.0;   // volts
  double tau = 200e-6;       // seconds
  double t_clk = 20e-6;      // seconds
  std::size_t n_samples = 72;
  std::size_t onset = 0;

  void validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (!(t_clk > 0.0)) throw std::invalid_argument("t_clk must be positive");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (onset >= n_samples) throw std::invalid_argument("onset must be < n_samples");
  }
};

/// Attenuation plus serial/parallel noise settings of the sensor
/// degradation model.
struct DegradationSpec {
  double delta = 1.0;        // attenuation in (0,1]
  double serial_sigma = 0.0; // std of the white Gaussian component
  double parallel_amp = 0.0; // RMS of the 1/f^2 component
  double threshold = 1.0;    // gate: only samples above it are degraded
  std::uint64_t seed = 0;

  void validate() const {
    if (!(delta > 0.0) || delta > 1.0)
      throw std::invalid_argument("delta must be in (0,1]");
    if (serial_sigma < 0.0) throw std::invalid_argument("serial_sigma must be >= 0");
    if (parallel_amp < 0.0) throw std::invalid_argument("parallel_amp must be >= 0");
  }
};

inline RealWaveform gen_exponential(const PulseSpec& spec) {
  spec.validate();
  RealWaveform w;
  w.sample_period = spec.t_clk;
  w.samples.assign(spec.n_samples, 0.0);
  for (std::size_t n = spec.onset; n < spec.n_samples; ++n) {
    double t = static_cast<double>(n - spec.onset) * spec.t_clk;
    w.samples[n] = spec.amplitude * std::exp(-t / spec.tau);
  }
  return w;
}

/// n i.i.d. Gaussian(0, sigma^2) samples, reproducible per seed.
inline RealWaveform gen_white_noise(std::size_t n, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  RealWaveform w;
  w.samples.assign(n, 0.0);
  if (sigma == 0.0 || n == 0) return w;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma);
  for (auto& x : w.samples) x = dist(rng);
  return w;
}

/// 1/f^2 (Brownian) noise: integrated white Gaussian increments, mean
/// removed, rescaled to the requested RMS.
inline RealWaveform gen_one_over_f2_noise(std::size_t n, double rms, std::uint64_t seed) {
  if (rms < 0.0) throw std::invalid_argument("rms must be >= 0");
  RealWaveform w;
  w.samples.assign(n, 0.0);
  if (rms == 0.0 || n == 0) return w;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  double acc = 0.0;
  for (auto& x : w.samples) {
    acc += dist(rng);
    x = acc;
  }
  double mean = 0.0;
  for (double x : w.samples) mean += x;
  mean /= static_cast<double>(n);
  double power = 0.0;
  for (auto& x : w.samples) {
    x -= mean;
    power += x * x;
  }
  double cur = std::sqrt(power / static_cast<double>(n));
  if (cur == 0.0) return w;  // degenerate walk, leave as zeros
  for (auto& x : w.samples) x *= rms / cur;
  return w;
}

/// Sensor degradation: samples above the threshold become
/// delta*v + (1-delta) + serial noise + parallel noise, the rest pass
/// through unchanged.
inline RealWaveform degrade(const RealWaveform& v, const DegradationSpec& spec) {
  spec.validate();
  const std::size_t n = v.size();
  RealWaveform serial = gen_white_noise(n, spec.serial_sigma, derive_seed(spec.seed, 0));
  RealWaveform parallel = gen_one_over_f2_noise(n, spec.parallel_amp, derive_seed(spec.seed, 1));
  RealWaveform out;
  out.sample_period = v.sample_period;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = v.samples[i];
    if (x > spec.threshold)
      x = spec.delta * x + (1.0 - spec.delta) + serial.samples[i] + parallel.samples[i];
    out.samples.push_back(x);
  }
  return out;
}

/// Synthetic stand-in event ensemble: exponential pulses whose amplitudes
/// are Gaussian-distributed around the nominal amplitude.
inline std::vector<RealWaveform> gen_event_ensemble(std::size_t n_events,
                                                    const PulseSpec& nominal,
                                                    double amplitude_sigma_frac,
                                                    std::uint64_t seed) {
  nominal.validate();
  if (amplitude_sigma_frac < 0.0)
    throw std::invalid_argument("amplitude_sigma_frac must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(nominal.amplitude,
                                        amplitude_sigma_frac * nominal.amplitude);
  std::vector<RealWaveform> events;
  events.reserve(n_events);
  for (std::size_t i = 0; i < n_events; ++i) {
    PulseSpec spec = nominal;
    spec.amplitude = dist(rng);
    events.push_back(gen_exponential(spec));
  }
  return events;
}

}  // namespace cusp

#endif  // CUSP_SIGNAL_GEN_HPP
