#include "lemni/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lemni {

void SummaryAccumulator::add(double x) {
  if (count_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void SummaryAccumulator::merge(const SummaryAccumulator& o) {
  if (o.count_ == 0) return;
  if (count_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(o.count_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  count_ += o.count_;
  min_ = std::min(min_, o.min_);
  max_ = std::max(max_, o.max_);
}

double SummaryAccumulator::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double SummaryAccumulator::stddev() const { return std::sqrt(variance()); }

double SummaryAccumulator::standard_error() const {
  return count_ < 1 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_));
}

SummaryAccumulator merge_summaries(const SummaryAccumulator& a, const SummaryAccumulator& b) {
  SummaryAccumulator out = a;
  out.merge(b);
  return out;
}

Estimate median_of_means(std::span<const double> values, int blocks) {
  if (blocks < 1 || values.size() < static_cast<std::size_t>(blocks))
    throw std::invalid_argument("median_of_means: need at least one value per block");
  const std::size_t per = values.size() / static_cast<std::size_t>(blocks);
  std::vector<double> means;
  SummaryAccumulator spread;
  for (int b = 0; b < blocks; ++b) {
    const std::size_t lo = per * static_cast<std::size_t>(b);
    const std::size_t hi = (b + 1 == blocks) ? values.size() : lo + per;
    SummaryAccumulator acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(values[i]);
    means.push_back(acc.mean());
    spread.add(acc.mean());
  }
  std::sort(means.begin(), means.end());
  const std::size_t h = means.size() / 2;
  const double median = means.size() % 2 ? means[h] : 0.5 * (means[h - 1] + means[h]);
  const double se = std::sqrt(std::numbers::pi / 2.0) * spread.stddev() / std::sqrt(static_cast<double>(blocks));
  return {median, se};
}

Estimate binomial_estimate(std::int64_t successes, std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("binomial_estimate: trials must be >= 1");
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

}  // namespace lemni
