#include "lemni/heavytail.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lemni/errors.hpp"

namespace lemni {

namespace {

void check_r(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("heavytail: r must lie in (0, 1)");
}

}  // namespace

TailLaw::TailLaw(double r_) : r(r_), left_cut(r_ - 1.0 / (1.0 + r_)), right_cut(r_ + 1.0 / (1.0 - r_)) {
  check_r(r_);
}

double TailLaw::cdf(double t) const {
  const double d = r - t;
  if (t <= left_cut) return 1.0 / (4.0 * d * d);
  if (t >= right_cut) return 1.0 - 1.0 / (4.0 * d * d);
  throw MiddleRangeUnsupported("cdf_y_tail: t = " + std::to_string(t) + " lies in (" +
                               std::to_string(left_cut) + ", " + std::to_string(right_cut) + ")");
}

double cdf_y_tail(double r, double t) { return TailLaw(r).cdf(t); }

double y_value(double r, std::complex<double> x) {
  const double dr = r - x.real();
  const double di = -x.imag();
  return r - dr / (dr * dr + di * di);
}

double sample_y(double r, RngStream& stream) {
  for (;;) {
    const DiscPoint x = sample_unit_disc(stream);
    const double dr = r - x.re;
    const double di = -x.im;
    const double d2 = dr * dr + di * di;
    if (d2 > 0.0) return r - dr / d2;
  }
}

double single_jump_prediction(double r, std::int64_t n, double a, double b) {
  const TailLaw law(r);
  if (a < law.right_cut)
    throw std::domain_error("single_jump_prediction: a = " + std::to_string(a) +
                            " is below the right cut " + std::to_string(law.right_cut));
  if (b < a) throw std::domain_error("single_jump_prediction: b < a");
  const double da = a - r;
  const double db = b - r;
  return static_cast<double>(n) * (1.0 / (4.0 * da * da) - 1.0 / (4.0 * db * db));
}

std::vector<double> sample_walks(double r, std::int64_t n, std::int64_t trials, RngStream& stream) {
  check_r(r);
  if (n < 1 || trials < 1) throw std::invalid_argument("sample_walks: n and trials must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(trials));
  for (auto& v : w) {
    double s = 0.0;
    for (std::int64_t k = 0; k < n; ++k) s += sample_y(r, stream);
    v = s;
  }
  return w;
}

Estimate interval_fraction(const std::vector<double>& walks, double a, double b) {
  if (b < a) throw std::invalid_argument("interval_fraction: b < a");
  std::int64_t hits = 0;
  for (double v : walks) hits += (v >= a && v <= b);
  return binomial_estimate(hits, static_cast<std::int64_t>(walks.size()));
}

Estimate walk_interval_prob_mc(double r, std::int64_t n, double a, double b, std::int64_t trials,
                               RngStream& stream) {
  return interval_fraction(sample_walks(r, n, trials, stream), a, b);
}

TruncatedMoments truncated_moments(double r, double m, std::int64_t samples, RngStream& stream) {
  check_r(r);
  SummaryAccumulator first, second;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double y = sample_y(r, stream);
    const bool keep = std::abs(y) <= m;
    first.add(keep ? y : 0.0);
    second.add(keep ? y * y : 0.0);
  }
  return {m, first.estimate(), second.estimate()};
}

}  // namespace lemni
