// Shared helpers for the test suites: an independent periodogram-slope
// estimator and small waveform builders.
#ifndef CUSP_TESTS_SUPPORT_HPP
#define CUSP_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace cusp_tests {

/// Power at integer DFT bin f via direct evaluation.
inline double dft_power(const std::vector<double>& x, std::size_t f) {
  const double w = -2.0 * M_PI * static_cast<double>(f) / static_cast<double>(x.size());
  double re = 0.0, im = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    re += x[t] * std::cos(w * static_cast<double>(t));
    im += x[t] * std::sin(w * static_cast<double>(t));
  }
  return re * re + im * im;
}

/// Log-log periodogram slope over DFT bins [lo_bin, hi_bin], estimated by
/// OLS on band-averaged powers (log-spaced bands).
inline double periodogram_slope(const std::vector<double>& x, std::size_t lo_bin,
                                std::size_t hi_bin, std::size_t bands = 20) {
  std::vector<double> log_f, log_p;
  const double llo = std::log10(static_cast<double>(lo_bin));
  const double lhi = std::log10(static_cast<double>(hi_bin));
  std::size_t prev_end = lo_bin;
  for (std::size_t b = 0; b < bands; ++b) {
    auto end = static_cast<std::size_t>(
        std::round(std::pow(10.0, llo + (lhi - llo) * static_cast<double>(b + 1) /
                                            static_cast<double>(bands))));
    if (end <= prev_end) end = prev_end + 1;
    double p = 0.0, fc = 0.0;
    std::size_t n = 0;
    for (std::size_t f = prev_end; f < end && f <= hi_bin; ++f) {
      p += dft_power(x, f);
      fc += static_cast<double>(f);
      ++n;
    }
    if (n > 0 && p > 0.0) {
      log_f.push_back(std::log10(fc / static_cast<double>(n)));
      log_p.push_back(std::log10(p / static_cast<double>(n)));
    }
    prev_end = end;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < log_f.size(); ++i) {
    mx += log_f[i];
    my += log_p[i];
  }
  mx /= static_cast<double>(log_f.size());
  my /= static_cast<double>(log_f.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_f.size(); ++i) {
    sxx += (log_f[i] - mx) * (log_f[i] - mx);
    sxy += (log_f[i] - mx) * (log_p[i] - my);
  }
  return sxy / sxx;
}

}  // namespace cusp_tests

#endif  // CUSP_TESTS_SUPPORT_HPP
