#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace icgrad {

// Median with the even-size mean-of-middle-two convention.
double median(std::vector<double> values);

// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
double sample_std(std::span<const double> values);

// Two-sided Kolmogorov-Smirnov distance between the sample and a CDF.
template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

}  // namespace icgrad
