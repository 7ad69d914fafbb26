#include "lemni/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lemni/errors.hpp"
#include "lemni/quadrature.hpp"

namespace lemni {

namespace {

double dilog_series(double x) {
  double term = x, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= x;
  }
  return sum;
}

constexpr double kInnerTol = 1e-11;
constexpr double kOuterTol = 1e-9;

// (1/pi) int_0^1 int_0^{2 pi} g(log|r - rho e^{it}|) rho dt drho, using the
// symmetry t -> -t to integrate over [0, pi] only.
template <class G>
double polar_average(double r, G g) {
  auto inner = [&](double rho) {
    auto integrand = [&](double t) {
      const double re = r - rho * std::cos(t);
      const double im = rho * std::sin(t);
      return g(0.5 * std::log(re * re + im * im));
    };
    QuadOptions o;
    o.abs_tol = kInnerTol;
    o.initial_panels = 2;
    return integrate_adaptive(integrand, 0.0, std::numbers::pi, o).value;
  };
  auto outer = [&](double rho) { return rho * inner(rho); };
  QuadOptions o;
  o.abs_tol = 0.5 * kOuterTol;
  double total = 0.0;
  if (r > 0.0) total += integrate_adaptive(outer, 0.0, r, o).value;
  if (r < 1.0) total += integrate_adaptive(outer, r, 1.0, o).value;
  return 2.0 * total / std::numbers::pi;
}

}  // namespace

double dilog(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("dilog: argument outside [0, 1]");
  if (x == 1.0) return kZeta2;
  if (x <= 0.5) return dilog_series(x);
  return kZeta2 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
}

double var_log_one_minus_x() {
  QuadOptions o;
  o.abs_tol = 1e-13;
  const double v =
      integrate_adaptive([](double rho) { return dilog(rho * rho) * rho; }, 0.0, 1.0, o).value;
  const double closed = (std::numbers::pi * std::numbers::pi - 6.0) / 12.0;
  if (std::abs(v - closed) > 1e-9)
    throw std::logic_error("var_log_one_minus_x: quadrature " + std::to_string(v) +
                           " disagrees with closed form");
  return v;
}

double limit_constant() { return std::sqrt((kZeta2 - 1.0) / std::numbers::pi); }

double area_limit_constant() { return std::sqrt(std::numbers::pi * (kZeta2 - 1.0)); }

MomentTable compute_moments_log_dist(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("moments_log_dist: r outside [0, 1]");
  MomentTable t;
  t.r = r;
  t.u = 0.5 * (r * r - 1.0);
  const double u = t.u;
  const double m2 = polar_average(r, [u](double l) { return (l - u) * (l - u); });
  t.gamma3 = polar_average(r, [u](double l) { return (l - u) * (l - u) * (l - u); });
  t.sigma = std::sqrt(m2);
  return t;
}

MomentTable moments_log_dist(double r) {
  static std::mutex mutex;
  static std::map<double, MomentTable> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
  }
  const MomentTable t = compute_moments_log_dist(r);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(r, t);
  return t;
}

double second_moment_fourier(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("second_moment_fourier: r outside [0, 1]");
  auto f = [r](double rho) {
    const double big = std::max(r, rho);
    const double small = std::min(r, rho);
    const double q = small / big;
    const double lb = std::log(big);
    return 2.0 * rho * (lb * lb + 0.5 * dilog(q * q));
  };
  QuadOptions o;
  o.abs_tol = 1e-12;
  double total = 0.0;
  if (r > 0.0) total += integrate_adaptive(f, 0.0, r, o).value;
  if (r < 1.0) total += integrate_adaptive(f, r, 1.0, o).value;
  return total;
}

double log_dist_lower_cdf(double r, double x) {
  if (x > std::log1p(-r)) throw std::domain_error("log_dist_lower_cdf: x above log(1 - r)");
  return std::exp(2.0 * x);
}

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double edgeworth_area(std::size_t n, double kappa, double c_n, bool include_q1) {
  if (n < 2) throw ConfigError("edgeworth_area: n must be >= 2");
  if (!(kappa > 0.0)) throw ConfigError("edgeworth_area: kappa must be > 0");
  if (!(c_n >= 0.0)) throw ConfigError("edgeworth_area: c_n must be >= 0");
  const double nn = static_cast<double>(n);
  const double sqrt_n = std::sqrt(nn);
  const double r0 = std::max(0.0, 1.0 - kappa * std::sqrt(std::log(nn) / nn));
  const double q1_scale = 1.0 / (6.0 * std::sqrt(2.0 * std::numbers::pi));
  auto integrand = [&](double r) {
    const MomentTable m = moments_log_dist(r);
    const double c = sqrt_n * (c_n - m.u) / m.sigma;
    double v = 0.5 * std::erfc(c / std::numbers::sqrt2);
    if (include_q1) {
      const double s3 = m.sigma * m.sigma * m.sigma;
      v += -m.gamma3 * q1_scale / s3 * (c * c - 1.0) * std::exp(-0.5 * c * c) / sqrt_n;
    }
    return v * r;
  };
  QuadOptions o;
  o.rel_tol = 1e-6;
  o.abs_tol = 1e-15;
  o.initial_panels = 4;
  return 2.0 * std::numbers::pi * integrate_adaptive(integrand, r0, 1.0, o).value;
}

}  // namespace lemni
