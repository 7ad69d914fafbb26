#include "lemni/kacrice.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "lemni/components.hpp"
#include "lemni/errors.hpp"

namespace lemni {

DerivLogs derivative_logs(const RootedPolynomial& poly, cplx z) {
  const auto& x = poly.roots();
  const std::size_t n = x.size();
  std::size_t k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double d2 = std::norm(z - x[j]);
    if (d2 < best) {
      best = d2;
      k = j;
    }
  }
  cplx s{0.0, 0.0}, r{0.0, 0.0};
  double mant = 1.0;
  int expo = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    const cplx w = z - x[j];
    const cplx inv = reciprocal(w);
    s += inv;
    r += inv * inv;
    mant *= std::norm(w);
    if (mant > 1e150 || mant < 1e-150) {
      int e = 0;
      mant = std::frexp(mant, &e);
      expo += e;
    }
  }
  const double log_q = 0.5 * (std::log(mant) + expo * std::numbers::ln2);
  const cplx d = z - x[k];
  const cplx p1 = 1.0 + d * s;
  const cplx p2 = 2.0 * s + d * (s * s - r);
  return {log_q + std::log(std::abs(p1)), log_q + std::log(std::abs(p2))};
}

namespace {

struct CellIntegrator {
  const RootedPolynomial& poly;
  double eps;
  double log_norm;  // log(pi eps^2)
  int max_levels;

  double cell(cplx c, double wx, double wy, int level) const {
    const DerivLogs dl = derivative_logs(poly, c);
    if (dl.log_p2 == -std::numeric_limits<double>::infinity()) return 0.0;
    const double half_diag = 0.5 * std::hypot(wx, wy);
    const double p1 = std::exp(std::min(dl.log_p1, 700.0));
    const double p2 = std::exp(std::min(dl.log_p2, 700.0));
    const double spread = 2.0 * p2 * half_diag;
    if (p1 - spread >= eps) return 0.0;
    if (p1 + spread < eps || level >= max_levels) {
      if (!(p1 < eps)) return 0.0;
      const double log_val = 2.0 * dl.log_p2 - log_norm;
      if (log_val > 700.0) throw std::overflow_error("epsilon_count: integrand overflows");
      return std::exp(log_val) * wx * wy;
    }
    const double sx = wx / 4.0, sy = wy / 4.0;
    double sum = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const cplx sub{c.real() + (b - 1.5) * sx, c.imag() + (a - 1.5) * sy};
        sum += cell(sub, sx, sy, level + 1);
      }
    return sum;
  }
};

}  // namespace

double epsilon_count(const RootedPolynomial& poly, const Rect& region, double eps, int grid,
                     const EpsCountOptions& options) {
  if (!(eps > 0.0)) throw ConfigError("epsilon_count: eps must be > 0");
  if (grid < 256) throw ConfigError("epsilon_count: grid must be >= 256");
  if (!(region.x1 > region.x0 && region.y1 > region.y0))
    throw ConfigError("epsilon_count: empty region");
  const CellIntegrator integ{poly, eps, std::log(std::numbers::pi * eps * eps), options.max_levels};
  const double wx = (region.x1 - region.x0) / grid;
  const double wy = (region.y1 - region.y0) / grid;
  std::vector<double> rows(static_cast<std::size_t>(grid), 0.0);
  auto run_rows = [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      const double y = region.y0 + (i + 0.5) * wy;
      double s = 0.0;
      for (int j = 0; j < grid; ++j) s += integ.cell({region.x0 + (j + 0.5) * wx, y}, wx, wy, 0);
      rows[static_cast<std::size_t>(i)] = s;
    }
  };
  const int threads = std::clamp(options.threads, 1, grid);
  if (threads == 1) {
    run_rows(0, grid);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < threads; ++t) {
      const int i0 = static_cast<int>(static_cast<long long>(grid) * t / threads);
      const int i1 = static_cast<int>(static_cast<long long>(grid) * (t + 1) / threads);
      pool.emplace_back([&, i0, i1] {
        try {
          run_rows(i0, i1);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  double total = 0.0;
  for (double v : rows) total += v;
  return total;
}

OnSample make_on_sample(DiscPoint x0, std::vector<cplx> rest, double inner_radius) {
  const cplx z = x0.value();
  cplx s{0.0, 0.0}, r{0.0, 0.0};
  double log_q = 0.0;
  for (const cplx& x : rest) {
    const cplx w = z - x;
    if (std::norm(w) == 0.0) throw std::domain_error("make_on_sample: X0 coincides with a root");
    const cplx inv = reciprocal(w);
    s += inv;
    r += inv * inv;
    log_q += 0.5 * std::log(std::norm(w));
  }
  if (std::norm(s) == 0.0) throw std::domain_error("make_on_sample: S_n(X0) == 0");
  OnSample out{x0, RootedPolynomial(std::move(rest)), s, r, log_q, false, false, 0};
  const double m = std::abs(z);
  out.in_annulus = m > inner_radius && m < 1.0;
  // |S| < |Q| compared as logs: |Q| overflows for large n.
  out.in_event = out.in_annulus && std::log(std::abs(s)) < log_q &&
                 std::abs(z + reciprocal(s)) < 1.0;
  return out;
}

OnSample sample_on_event(std::size_t n, double kappa, RngStream& stream) {
  if (n < 3) throw ConfigError("sample_on_event: n must be >= 3");
  const double inner = annulus_inner_radius(n, kappa);
  int resamples = 0;
  for (;;) {
    const DiscPoint x0 = sample_unit_disc(stream);
    std::vector<cplx> rest(n - 1);
    for (auto& v : rest) v = sample_unit_disc(stream).value();
    try {
      OnSample out = make_on_sample(x0, std::move(rest), inner);
      out.resamples = resamples;
      return out;
    } catch (const std::domain_error&) {
      ++resamples;
    }
  }
}

double mn_integrand(const OnSample& s) {
  if (!s.in_event) return 0.0;
  const double log_d = 0.5 * std::log(std::norm(s.x0.value() - s.poly_rest.root(0)));
  const double log_s = 0.5 * std::log(std::norm(s.s_n));
  return std::exp(-4.0 * (log_d + log_s));
}

double t0_integrand(const OnSample& s) {
  if (!s.in_event) return 0.0;
  return std::norm(1.0 + s.r_n * reciprocal(s.s_n * s.s_n));
}

OnEstimates estimate_p_on_and_mn(std::size_t n, double kappa, std::int64_t trials,
                                 RngStream& stream) {
  if (trials < 1) throw ConfigError("estimate_p_on_and_mn: trials must be >= 1");
  std::int64_t events = 0, annulus = 0;
  SummaryAccumulator mn;
  OnEstimates out;
  for (std::int64_t t = 0; t < trials; ++t) {
    const OnSample s = sample_on_event(n, kappa, stream);
    events += s.in_event;
    annulus += s.in_annulus;
    out.resamples += s.resamples;
    mn.add(mn_integrand(s));
  }
  out.p_on = binomial_estimate(events, trials);
  out.annulus_fraction = binomial_estimate(annulus, trials);
  out.m_n = mn.estimate();
  return out;
}

T0Estimate estimate_t0(std::size_t n, double kappa, std::int64_t trials, RngStream& stream) {
  if (trials < 32) throw ConfigError("estimate_t0: trials must be >= 32");
  std::vector<double> values(static_cast<std::size_t>(trials));
  SummaryAccumulator acc;
  for (auto& v : values) {
    v = t0_integrand(sample_on_event(n, kappa, stream));
    acc.add(v);
  }
  return {acc.estimate(), median_of_means(values, 32), acc.max()};
}

}  // namespace lemni
