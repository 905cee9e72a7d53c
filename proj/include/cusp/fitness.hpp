#ifndef CUSP_FITNESS_HPP
#define CUSP_FITNESS_HPP

#include <cmath>
#include <limits>
#include <string>

#include "cusp/shaper.hpp"

namespace cusp {

enum class FitnessKind { F1, F2, F3 };

inline FitnessKind parse_fitness_kind(const std::string& s) {
  if (s == "f1" || s == "F1") return FitnessKind::F1;
  if (s == "f2" || s == "F2") return FitnessKind::F2;
  if (s == "f3" || s == "F3") return FitnessKind::F3;
  throw std::invalid_argument("unknown fitness kind '" + s + "' (expected f1|f2|f3)");
}

inline std::string fitness_kind_name(FitnessKind k) {
  switch (k) {
    case FitnessKind::F1: return "f1";
    case FitnessKind::F2: return "f2";
    case FitnessKind::F3: return "f3";
  }
  return "?";
}

/// Fitness assigned to individuals whose shaping overflows the
/// accumulator model.
inline constexpr double kWorstFitness = std::numeric_limits<double>::infinity();

namespace detail {
template <typename T>
void require_same_length(const Waveform<T>& a, const Waveform<T>& b) {
  if (a.samples.size() != b.samples.size())
    throw std::invalid_argument("length mismatch: " + std::to_string(a.samples.size()) +
                                " vs " + std::to_string(b.samples.size()));
}
}  // namespace detail

/// F1: absolute difference of the peak heights.
template <typename T>
double f1(const Waveform<T>& s, const Waveform<T>& s_ref) {
  detail::require_same_length(s, s_ref);
  return std::abs(static_cast<double>(peak(s).second) -
                  static_cast<double>(peak(s_ref).second));
}

/// F2: cumulative absolute error between the two signals.
template <typename T>
double f2(const Waveform<T>& s, const Waveform<T>& s_ref) {
  detail::require_same_length(s, s_ref);
  double acc = 0.0;
  for (std::size_t n = 0; n < s.samples.size(); ++n)
    acc += std::abs(static_cast<double>(s.samples[n]) -
                    static_cast<double>(s_ref.samples[n]));
  return acc;
}

/// F3 = F1 + F2.
template <typename T>
double f3(const Waveform<T>& s, const Waveform<T>& s_ref) {
  return f1(s, s_ref) + f2(s, s_ref);
}

template <typename T>
double fitness(FitnessKind kind, const Waveform<T>& s, const Waveform<T>& s_ref) {
  switch (kind) {
    case FitnessKind::F1: return f1(s, s_ref);
    case FitnessKind::F2: return f2(s, s_ref);
    case FitnessKind::F3: return f3(s, s_ref);
  }
  throw std::logic_error("unreachable");
}

/// Shape the input with the candidate params and score it against the
/// reference output. An overflow maps to the worst fitness instead of
/// aborting, so the search survives pathological chromosomes.
inline double evaluate(const ShaperParams& params, const IntWaveform& v,
                       const IntWaveform& s_ref, FitnessKind kind,
                       const ArithmeticPolicy& pol = {}) {
  detail::require_same_length(v, s_ref);
  try {
    IntWaveform s = shape(v, params, pol);
    return fitness(kind, s, s_ref);
  } catch (const overflow_error&) {
    return kWorstFitness;
  }
}

}  // namespace cusp

#endif  // CUSP_FITNESS_HPP
