#ifndef CUSP_SHAPER_HPP
#define CUSP_SHAPER_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cusp {

/// Thrown when an intermediate value exceeds the configured accumulator
/// width under OverflowMode::trap.
class overflow_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The four evolvable shaper parameters with their hardware bit widths:
/// k and l are 6-bit unsigned delays, m1 and m2 are 14-bit two's
/// complement gains.
struct ShaperParams {
  int k = 0;
  int l = 0;
  int m1 = 0;
  int m2 = 0;

  static constexpr int kMin = 0, kMax = 63;
  static constexpr int mMin = -8192, mMax = 8191;

  bool is_valid() const {
    return k >= kMin && k <= kMax && l >= kMin && l <= kMax &&
           m1 >= mMin && m1 <= mMax && m2 >= mMin && m2 <= mMax;
  }

  void validate() const {
    if (k < kMin || k > kMax) throw std::invalid_argument("k out of range [0,63]");
    if (l < kMin || l > kMax) throw std::invalid_argument("l out of range [0,63]");
    if (m1 < mMin || m1 > mMax) throw std::invalid_argument("m1 out of range [-8192,8191]");
    if (m2 < mMin || m2 > mMax) throw std::invalid_argument("m2 out of range [-8192,8191]");
  }

  bool operator==(const ShaperParams&) const = default;
};

/// A sampled signal. T is std::int64_t for the fixed-point bus model or
/// double for the real-valued reference path. Samples at n < 0 are
/// implicitly zero.
template <typename T>
struct Waveform {
  std::vector<T> samples;
  double sample_period = 0.0;  // seconds

  std::size_t size() const { return samples.size(); }
};

using IntWaveform = Waveform<std::int64_t>;
using RealWaveform = Waveform<double>;

/// 14-bit signed input bus limits.
constexpr std::int64_t kBusMin = -8192;
constexpr std::int64_t kBusMax = 8191;

enum class OverflowMode { trap, saturate, wrap };

/// Width and overflow behavior of the internal accumulators.
struct ArithmeticPolicy {
  int accumulator_bits = 48;
  OverflowMode overflow_mode = OverflowMode::trap;

  void validate() const {
    if (accumulator_bits < 40 || accumulator_bits > 120)
      throw std::invalid_argument("accumulator_bits must be in [40,120]");
  }
};

namespace detail {

using wide_t = __int128;

inline std::int64_t narrow(wide_t x, const ArithmeticPolicy& pol) {
  const wide_t lo = -(wide_t(1) << (pol.accumulator_bits - 1));
  const wide_t hi = (wide_t(1) << (pol.accumulator_bits - 1)) - 1;
  if (x >= lo && x <= hi) return static_cast<std::int64_t>(x);
  switch (pol.overflow_mode) {
    case OverflowMode::trap:
      throw overflow_error("accumulator overflow at " +
                           std::to_string(pol.accumulator_bits) + " bits");
    case OverflowMode::saturate:
      return static_cast<std::int64_t>(x < lo ? lo : hi);
    case OverflowMode::wrap: {
      const unsigned __int128 span = (unsigned __int128)(1) << pol.accumulator_bits;
      unsigned __int128 u = (unsigned __int128)(x - lo) % span;
      return static_cast<std::int64_t>((wide_t)u + lo);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

/// Streaming state of one shaper instance: the two delay pipelines and
/// the three accumulators, all zero at reset.
template <typename T>
struct ShaperState {
  std::vector<T> delay_v;   // last k input samples (ring buffer)
  std::vector<T> delay_d1;  // last l values of d1 (ring buffer)
  std::size_t head_v = 0;
  std::size_t head_d1 = 0;
  T prev_v{};
  T acc_p{};
  T acc_q{};
  T acc_s{};
};

template <typename T>
ShaperState<T> make_state(const ShaperParams& params) {
  params.validate();
  ShaperState<T> st;
  st.delay_v.assign(static_cast<std::size_t>(params.k), T{});
  st.delay_d1.assign(static_cast<std::size_t>(params.l), T{});
  return st;
}

namespace detail {

// Push x through a zero-initialized ring buffer of length len and return
// the value delayed by len samples. len == 0 means no delay.
template <typename T>
T delay_push(std::vector<T>& buf, std::size_t& head, T x) {
  if (buf.empty()) return x;
  T out = buf[head];
  buf[head] = x;
  head = (head + 1) % buf.size();
  return out;
}

}  // namespace detail

/// One recurrence step in integer fixed-point arithmetic. Every
/// intermediate is checked against the accumulator width per the policy.
inline std::int64_t step(ShaperState<std::int64_t>& st, std::int64_t v_n,
                         const ShaperParams& params, const ArithmeticPolicy& pol) {
  using detail::narrow;
  using detail::wide_t;
  const std::int64_t v_nk = detail::delay_push(st.delay_v, st.head_v, v_n);
  const std::int64_t d_k = narrow(wide_t(v_n) - v_nk, pol);
  const std::int64_t d_1 = narrow(wide_t(v_n) - st.prev_v, pol);
  st.prev_v = v_n;
  const std::int64_t d_1l = detail::delay_push(st.delay_d1, st.head_d1, d_1);
  const std::int64_t kd = narrow(wide_t(params.k) * d_1l, pol);
  st.acc_p = narrow(wide_t(st.acc_p) + d_k - kd, pol);
  const std::int64_t m2p = narrow(wide_t(params.m2) * st.acc_p, pol);
  st.acc_q = narrow(wide_t(st.acc_q) + m2p, pol);
  const std::int64_t m1p = narrow(wide_t(params.m1) * st.acc_p, pol);
  st.acc_s = narrow(wide_t(st.acc_s) + st.acc_q + m1p, pol);
  return st.acc_s;
}

/// One recurrence step in exact floating-point arithmetic.
inline double step(ShaperState<double>& st, double v_n, const ShaperParams& params) {
  const double v_nk = detail::delay_push(st.delay_v, st.head_v, v_n);
  const double d_k = v_n - v_nk;
  const double d_1 = v_n - st.prev_v;
  st.prev_v = v_n;
  const double d_1l = detail::delay_push(st.delay_d1, st.head_d1, d_1);
  st.acc_p += d_k - params.k * d_1l;
  st.acc_q += params.m2 * st.acc_p;
  st.acc_s += st.acc_q + params.m1 * st.acc_p;
  return st.acc_s;
}

/// Bit-accurate shaping of an integer waveform: converts an exponential
/// pulse into a symmetrical cusp-like pulse of the same length.
inline IntWaveform shape(const IntWaveform& v, const ShaperParams& params,
                         const ArithmeticPolicy& pol = {}) {
  params.validate();
  pol.validate();
  for (std::int64_t x : v.samples)
    if (x < kBusMin || x > kBusMax)
      throw std::invalid_argument("input sample exceeds the 14-bit bus");
  auto st = make_state<std::int64_t>(params);
  IntWaveform s;
  s.sample_period = v.sample_period;
  s.samples.reserve(v.size());
  for (std::int64_t x : v.samples) s.samples.push_back(step(st, x, params, pol));
  return s;
}

/// Same recurrences evaluated without width limits; the verification
/// reference for shape().
inline RealWaveform shape_oracle(const RealWaveform& v, const ShaperParams& params) {
  params.validate();
  auto st = make_state<double>(params);
  RealWaveform s;
  s.sample_period = v.sample_period;
  s.samples.reserve(v.size());
  for (double x : v.samples) s.samples.push_back(step(st, x, params));
  return s;
}

/// Ideal m1/m2 gain ratio for a decay time constant tau sampled at t_clk.
inline double gain_ratio(double tau, double t_clk) {
  if (!(tau > 0.0) || !(t_clk > 0.0))
    throw std::domain_error("gain_ratio requires tau > 0 and t_clk > 0");
  return 1.0 / std::expm1(t_clk / tau);
}

/// Delay coupling k = 2l + 1.
inline int k_from_l(int l) {
  if (l < 0 || 2 * l + 1 > ShaperParams::kMax)
    throw std::out_of_range("l must be in [0,31] so that k = 2l+1 <= 63");
  return 2 * l + 1;
}

/// Maximum sample and its first index; the pulse-height measurement.
template <typename T>
std::pair<std::size_t, T> peak(const Waveform<T>& w) {
  if (w.samples.empty()) throw std::invalid_argument("peak of empty waveform");
  std::size_t idx = 0;
  T best = w.samples[0];
  for (std::size_t i = 1; i < w.samples.size(); ++i) {
    if (w.samples[i] > best) {
      best = w.samples[i];
      idx = i;
    }
  }
  return {idx, best};
}

/// Map a real-valued waveform (volts) onto the signed 14-bit input bus.
inline IntWaveform quantize(const RealWaveform& v, double v_fullscale = 20.0) {
  if (!(v_fullscale > 0.0)) throw std::invalid_argument("v_fullscale must be positive");
  IntWaveform out;
  out.sample_period = v.sample_period;
  out.samples.reserve(v.size());
  for (double x : v.samples) {
    double scaled = std::round(x / v_fullscale * static_cast<double>(kBusMax));
    if (scaled < static_cast<double>(kBusMin)) scaled = static_cast<double>(kBusMin);
    if (scaled > static_cast<double>(kBusMax)) scaled = static_cast<double>(kBusMax);
    out.samples.push_back(static_cast<std::int64_t>(scaled));
  }
  return out;
}

/// Parse the CLI/JSON literal "k,l,m1,m2" into validated params.
inline ShaperParams parse_params(const std::string& text) {
  ShaperParams p;
  int* fields[4] = {&p.k, &p.l, &p.m1, &p.m2};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t end = text.find(',', pos);
    if ((i < 3) != (end != std::string::npos))
      throw std::invalid_argument("params must be four comma-separated integers");
    std::string tok = text.substr(pos, end == std::string::npos ? end : end - pos);
    try {
      std::size_t used = 0;
      *fields[i] = std::stoi(tok, &used);
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
      if (used != tok.size() || tok.empty()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid integer in params: '" + tok + "'");
    }
    pos = end == std::string::npos ? text.size() : end + 1;
  }
  p.validate();
  return p;
}

inline std::string format_params(const ShaperParams& p) {
  return std::to_string(p.k) + "," + std::to_string(p.l) + "," +
         std::to_string(p.m1) + "," + std::to_string(p.m2);
}

}  // namespace cusp

#endif  // CUSP_SHAPER_HPP
