#ifndef CUSP_STATS_HPP
#define CUSP_STATS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace cusp {

/// Five-number-plus-mean summary of a sample.
struct StatsSummary {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0, mean = 0.0;
};

/// Linearly interpolated quantile of a sorted sample (R type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (sorted.size() == 1) return sorted[0];
  double h = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline StatsSummary summarize(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("summary of empty sample");
  std::sort(xs.begin(), xs.end());
  StatsSummary s;
  s.min = xs.front();
  s.max = xs.back();
  s.q1 = quantile_sorted(xs, 0.25);
  s.median = quantile_sorted(xs, 0.5);
  s.q3 = quantile_sorted(xs, 0.75);
  double acc = 0.0;
  for (double x : xs) acc += x;
  s.mean = acc / static_cast<double>(xs.size());
  return s;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_ci_95 = 0.0;  // half-width of the 95% confidence interval
  double pearson_r = 0.0;
  bool significant = false;  // two-sided no-correlation test at alpha = 0.05
};

/// Ordinary least squares y on x with a t-based 95% CI on the slope and a
/// Pearson correlation significance test. r is defined as 0 when y has
/// zero variance.
inline LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("linear_fit: length mismatch");
  const std::size_t n = xs.size();
  if (n < 3) throw std::invalid_argument("linear_fit needs at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: x has zero variance");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double df = static_cast<double>(n - 2);
  const boost::math::students_t tdist(df);
  const double tcrit = boost::math::quantile(tdist, 0.975);
  double rss = syy - fit.slope * sxy;
  if (rss < 0.0) rss = 0.0;  // clamp rounding on exact fits
  fit.slope_ci_95 = tcrit * std::sqrt(rss / df / sxx);
  if (syy == 0.0) {
    fit.pearson_r = 0.0;
    fit.significant = false;
    return fit;
  }
  fit.pearson_r = sxy / std::sqrt(sxx * syy);
  double r2 = fit.pearson_r * fit.pearson_r;
  if (r2 >= 1.0) {
    fit.significant = true;
  } else {
    double t = fit.pearson_r * std::sqrt(df / (1.0 - r2));
    fit.significant = std::abs(t) > tcrit;
  }
  return fit;
}

/// Equal-width histogram over [lo, hi]; values outside the range are
/// clamped into the edge bins so total counts always equal the sample
/// count.
struct Histogram {
  std::vector<double> bin_edges;  // size bins + 1, monotone
  std::vector<std::size_t> counts;

  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }

  std::size_t mode_bin() const {
    if (counts.empty()) throw std::logic_error("empty histogram");
    return static_cast<std::size_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
  }
};

inline Histogram make_histogram(const std::vector<double>& values, std::size_t bins,
                                double lo, double hi) {
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("histogram range must be non-empty");
  Histogram h;
  h.bin_edges.reserve(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins));
  h.counts.assign(bins, 0);
  for (double v : values) {
    double f = (v - lo) / (hi - lo) * static_cast<double>(bins);
    auto b = static_cast<long long>(std::floor(f));
    if (b < 0) b = 0;
    if (b >= static_cast<long long>(bins)) b = static_cast<long long>(bins) - 1;
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

}  // namespace cusp

#endif  // CUSP_STATS_HPP
