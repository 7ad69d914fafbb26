#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lemni/sampling.hpp"
#include "lemni/stats.hpp"

namespace lemni {

/// Law of Y(r) = r - Re(1/(r - X)), X uniform on the disc, 0 < r < 1.
/// The CDF is explicit outside (left_cut, right_cut):
///   F(t) = 1 / (4 (r - t)^2)       for t <= r - 1/(1 + r),
///   F(t) = 1 - 1 / (4 (r - t)^2)   for t >= r + 1/(1 - r).
struct TailLaw {
  explicit TailLaw(double r);

  double r;
  double left_cut;
  double right_cut;

  bool in_tail(double t) const { return t <= left_cut || t >= right_cut; }
  /// Throws MiddleRangeUnsupported strictly between the cuts.
  double cdf(double t) const;
};

/// Throws std::domain_error unless 0 < r < 1.
double cdf_y_tail(double r, double t);

/// r - Re(1/(r - x)); x must differ from r.
double y_value(double r, std::complex<double> x);

/// One draw of Y(r); exactly two uniforms per attempt, redrawn on the
/// (measure-zero) event X == r.
double sample_y(double r, RngStream& stream);

/// n * [1/(4 (a - r)^2) - 1/(4 (b - r)^2)]. Throws std::domain_error if
/// a < right_cut or b < a.
double single_jump_prediction(double r, std::int64_t n, double a, double b);

/// `trials` independent sums W_n(r) = Y_1 + ... + Y_n, drawn in order from `stream`.
std::vector<double> sample_walks(double r, std::int64_t n, std::int64_t trials, RngStream& stream);

/// Fraction of walks in [a, b] with binomial SE.
Estimate interval_fraction(const std::vector<double>& walks, double a, double b);

/// sample_walks followed by interval_fraction.
Estimate walk_interval_prob_mc(double r, std::int64_t n, double a, double b, std::int64_t trials,
                               RngStream& stream);

/// Monte Carlo E[Y 1{|Y| <= m}] and E[Y^2 1{|Y| <= m}] from one shared sample.
struct TruncatedMoments {
  double m = 0.0;
  Estimate mean;
  Estimate second;
};
TruncatedMoments truncated_moments(double r, double m, std::int64_t samples, RngStream& stream);

}  // namespace lemni
