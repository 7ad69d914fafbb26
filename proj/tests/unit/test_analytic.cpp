#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lemni/analytic.hpp"
#include "lemni/errors.hpp"
#include "lemni/quadrature.hpp"
#include "lemni/sampling.hpp"
#include "lemni/stats.hpp"
#include "oracles.hpp"

using namespace lemni;

namespace {

constexpr double kPi = std::numbers::pi;
const double kClosedVar = (kPi * kPi - 6.0) / 12.0;

// Third central moment of log|r - X| from the angular expansion: at fixed
// rho, log|r - rho e^{it}| = log M + F(t) with E F = 0, E F^2 = Li_2(q^2)/2
// (series here) and E F^3 from the Fourier triple sum; the radial integral
// uses composite Simpson on [0, r] and [r, 1]. The kink at rho = r makes
// Simpson second order, so two step sizes are combined by Richardson.
double li2_series(double x) {
  double s = 0.0, p = 1.0;
  for (int k = 1; k < 200000; ++k) {
    p *= x;
    const double t = p / (static_cast<double>(k) * k);
    s += t;
    if (t < 1e-17) break;
  }
  return s;
}

double third_moment_oracle(double r, int intervals) {
  const double u = 0.5 * (r * r - 1.0);
  auto f = [&](double rho) {
    if (rho == 0.0) return 0.0;
    const double big = std::max(r, rho), small = std::min(r, rho);
    const double q = small / big;
    const double d = std::log(big) - u;
    const double ef2 = 0.5 * li2_series(q * q);
    const double ef3 = oracle::fourier_third_moment(q, 3000);
    return 2.0 * rho * (d * d * d + 3.0 * d * ef2 + ef3);
  };
  auto simpson = [&](double a, double b) {
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
  };
  return simpson(0.0, r) + simpson(r, 1.0);
}

}  // namespace

TEST_CASE("dilogarithm") {
  CHECK(dilog(0.0) == 0.0);
  CHECK(dilog(1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-15));
  CHECK(std::abs(dilog(0.5) - (kPi * kPi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0))) < 1e-14);
  for (double x : {0.1, 0.3, 0.49, 0.51, 0.7, 0.9}) CHECK(std::abs(dilog(x) - li2_series(x)) < 1e-12);
  // Reflection: Li2(x) + Li2(1 - x) = pi^2/6 - log x log(1 - x).
  for (double x : {0.05, 0.25, 0.6, 0.95})
    CHECK(std::abs(dilog(x) + dilog(1 - x) - (kZeta2 - std::log(x) * std::log(1 - x))) < 1e-14);
  CHECK_THROWS_AS(dilog(-0.1), std::domain_error);
  CHECK_THROWS_AS(dilog(1.1), std::domain_error);
}

TEST_CASE("variance of log|1 - X|") {
  CHECK(std::abs(var_log_one_minus_x() - kClosedVar) < 1e-12);
  CHECK(std::abs(var_log_one_minus_x() - 0.3224670334) < 1e-10);
  auto f = [](double rho) { return dilog(rho * rho) * rho; };
  const double a = integrate_fixed(f, 0.0, 1.0, 1000);
  const double b = integrate_fixed(f, 0.0, 1.0, 10000);
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("Monte Carlo variance of log|1 - X|") {
  RngStream s(2, 0);
  SummaryAccumulator acc;
  const int N = 1000000;
  for (int i = 0; i < N; ++i) acc.add(std::log(std::abs(1.0 - sample_unit_disc(s).value())));
  // SE of the sample variance from the fourth central moment.
  RngStream s2(2, 0);
  SummaryAccumulator dev2;
  for (int i = 0; i < N; ++i) {
    const double d = std::log(std::abs(1.0 - sample_unit_disc(s2).value())) - acc.mean();
    dev2.add(d * d);
  }
  CHECK(std::abs(acc.variance() - kClosedVar) < 3 * dev2.standard_error());
}

TEST_CASE("limit constants") {
  CHECK(std::abs(limit_constant() - 0.4530881696) < 1e-9);
  CHECK(std::abs(limit_constant() - std::sqrt(2.0 / kPi * var_log_one_minus_x())) < 1e-12);
  CHECK(std::abs(limit_constant() * limit_constant() * kPi + 1.0 - kZeta2) < 1e-12);
  CHECK(std::abs(area_limit_constant() - 2.0 * kPi * std::sqrt(0.5 * (kZeta2 - 1.0)) /
                                             std::sqrt(2.0 * kPi)) < 1e-12);
  CHECK(std::abs(area_limit_constant() - 1.4234184650) < 1e-9);
}

TEST_CASE("moment table at the endpoints") {
  const MomentTable one = moments_log_dist(1.0);
  CHECK(one.u == 0.0);
  CHECK(std::abs(one.sigma * one.sigma - 0.5 * (kZeta2 - 1.0)) < 1e-9);
  const MomentTable half = moments_log_dist(0.5);
  CHECK(half.u == -0.375);
  const MomentTable zero = moments_log_dist(0.0);
  // log|X| has P(log|X| <= x) = e^{2x}: mean -1/2, variance 1/4, third -1/4.
  CHECK(std::abs(zero.sigma - 0.5) < 1e-9);
  CHECK(std::abs(zero.gamma3 + 0.25) < 1e-8);
  CHECK_THROWS_AS(moments_log_dist(1.5), std::domain_error);
}

TEST_CASE("second moment: polar quadrature vs Fourier form") {
  for (double r : {0.1, 0.4, 0.7, 0.95, 1.0}) {
    const MomentTable m = moments_log_dist(r);
    const double second = second_moment_fourier(r);
    CAPTURE(r);
    CHECK(std::abs(m.sigma * m.sigma + m.u * m.u - second) < 1e-6);
  }
}

TEST_CASE("third moment: polar quadrature vs Fourier triple sum") {
  for (double r : {0.3, 0.7}) {
    const double coarse = third_moment_oracle(r, 200);
    const double fine = third_moment_oracle(r, 400);
    const double want = (4.0 * fine - coarse) / 3.0;
    CAPTURE(r);
    CHECK(std::abs(moments_log_dist(r).gamma3 - want) < 5e-6);
  }
}

TEST_CASE("moments at r = 0.7 match Monte Carlo") {
  const double r = 0.7;
  const MomentTable m = moments_log_dist(r);
  RngStream s(3, 0);
  const int N = 10000000;
  SummaryAccumulator d2, d3;
  for (int i = 0; i < N; ++i) {
    const double d = std::log(std::abs(r - sample_unit_disc(s).value())) - m.u;
    d2.add(d * d);
    d3.add(d * d * d);
  }
  CHECK(std::abs(d2.mean() - m.sigma * m.sigma) < 3 * d2.standard_error());
  CHECK(std::abs(d3.mean() - m.gamma3) < 3 * d3.standard_error());
}

TEST_CASE("sigma is continuous and bounded below") {
  for (double r = 0.5; r < 0.999; r += 0.05) {
    const double a = moments_log_dist(r).sigma;
    const double b = moments_log_dist(r + 1e-3).sigma;
    CHECK(std::abs(a - b) < 1e-2);
    CHECK(a > 0.4);
  }
}

TEST_CASE("lower tail of log|r - X|") {
  for (double r : {0.2, 0.5, 0.9}) {
    const double cut = std::log1p(-r);
    CHECK(log_dist_lower_cdf(r, cut) == doctest::Approx((1 - r) * (1 - r)));
    CHECK_THROWS_AS(log_dist_lower_cdf(r, cut + 1e-6), std::domain_error);
    RngStream s(4, static_cast<std::uint64_t>(r * 10));
    const int N = 1000000;
    std::vector<double> v(N);
    for (auto& x : v) x = std::log(std::abs(r - sample_unit_disc(s).value()));
    std::sort(v.begin(), v.end());
    double sup = 0.0;
    for (int k = 0; k < N && v[k] <= cut; ++k) {
      const double F = log_dist_lower_cdf(r, v[k]);
      sup = std::max({sup, std::abs(F - static_cast<double>(k + 1) / N), std::abs(F - static_cast<double>(k) / N)});
    }
    // DKW at level 1e-3.
    CAPTURE(r);
    CHECK(sup < std::sqrt(std::log(2.0 / 1e-3) / (2.0 * N)));
  }
}

TEST_CASE("normal cdf") {
  CHECK(phi(0.0) == 0.5);
  CHECK(std::abs(phi(1.959963985) - 0.975) < 1e-9);
  for (double x : {-2.5, -1.0, 0.3, 1.7, 2.9}) {
    CHECK(std::abs(phi(x) + phi(-x) - 1.0) < 1e-15);
    CHECK(std::abs(phi(x) - 0.5 * (1.0 + oracle::erf_series(x / std::sqrt(2.0)))) < 1e-13);
  }
}

TEST_CASE("edgeworth area") {
  const double big = edgeworth_area(1000000, 2.0, 0.0, false) * 1000.0;
  CHECK(std::abs(big / area_limit_constant() - 1.0) < 0.01);

  const double a2 = edgeworth_area(100, 2.0, 0.0, false);
  const double a3 = edgeworth_area(1000, 2.0, 0.0, false);
  const double a4 = edgeworth_area(10000, 2.0, 0.0, false);
  CHECK(a2 > a3);
  CHECK(a3 > a4);

  const double hi = edgeworth_area(400, 2.0, std::log(800.0) / 400.0, false);
  const double lo = edgeworth_area(400, 2.0, std::log(100.0) / 400.0, false);
  CHECK(std::isfinite(hi));
  CHECK(hi < lo);

  const double with_q1 = edgeworth_area(400, 2.0, 0.0, true);
  CHECK(std::abs(with_q1 - edgeworth_area(400, 2.0, 0.0, false)) < 0.05 * with_q1);

  CHECK_THROWS_AS(edgeworth_area(1, 2.0, 0.0, false), ConfigError);
  CHECK_THROWS_AS(edgeworth_area(100, 0.0, 0.0, false), ConfigError);
  CHECK_THROWS_AS(edgeworth_area(100, 2.0, -1.0, false), ConfigError);
}
