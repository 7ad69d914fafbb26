#pragma once

#include <cstdint>
#include <span>

namespace lemni {

/// Point estimate with standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// Streaming count / mean / sum of squared deviations (Welford), min, max.
/// merge() is Chan's pairwise combination: exact in exact arithmetic and
/// deterministic for a fixed merge order.
class SummaryAccumulator {
 public:
  void add(double x);
  void merge(const SummaryAccumulator& other);

  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }
  double min() const { return min_; }
  double max() const { return max_; }
  /// m2 / (count - 1); 0 for count < 2.
  double variance() const;
  double stddev() const;
  /// stddev / sqrt(count).
  double standard_error() const;
  Estimate estimate() const { return {mean(), standard_error()}; }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

SummaryAccumulator merge_summaries(const SummaryAccumulator& a, const SummaryAccumulator& b);

/// Median of `blocks` contiguous block means (the last block absorbs the
/// remainder). The SE is sqrt(pi/2) * sd(block means) / sqrt(blocks), the
/// large-sample SE of a median of roughly normal block means.
/// Requires values.size() >= blocks >= 1.
Estimate median_of_means(std::span<const double> values, int blocks = 32);

/// Fraction of successes with binomial SE sqrt(p (1 - p) / trials).
Estimate binomial_estimate(std::int64_t successes, std::int64_t trials);

}  // namespace lemni
