#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tobit {

/// Lower empirical quantile: order statistic at index ceil(q * n), 1-based.
inline double lower_empirical_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size(), std::max<std::size_t>(rank, 1)) - 1];
}

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// CDF of |Z|, Z standard normal.
inline double half_normal_cdf(double x) {
  return x <= 0.0 ? 0.0 : std::erf(x / std::sqrt(2.0));
}

/// Kolmogorov distance between the empirical CDF of a sample and a
/// reference CDF.
template <class Cdf>
double kolmogorov_distance(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
  }
  return ks;
}

}  // namespace tobit
