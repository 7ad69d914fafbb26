#pragma once

#include <cstdint>
#include <vector>

#include "lemni/polyeval.hpp"
#include "lemni/stats.hpp"

namespace lemni {

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
};

/// log|P'(z)| and log|P''(z)| from the exact factorization around the
/// nearest root x_k, d = z - x_k:
///   P'  = Q_k (1 + d S_k),   P'' = Q_k (2 S_k + d (S_k^2 - R_k)),
/// with S_k, R_k, Q_k over the other roots. Finite at the roots themselves.
/// For n == 1, P'' = 0 and log_p2 = -infinity.
struct DerivLogs {
  double log_p1 = 0.0;
  double log_p2 = 0.0;
};
DerivLogs derivative_logs(const RootedPolynomial& poly, cplx z);

struct EpsCountOptions {
  int max_levels = 3;  ///< refinement depth; each level splits a cell 4 x 4
  int threads = 1;     ///< rows split across threads; result independent of it
};

/// (1 / (pi eps^2)) int_region |P''|^2 1{|P'| < eps} dA, which counts the
/// zeros of P' in the region as eps -> 0.
///
/// Midpoint rule on a grid x grid base mesh. A cell with center c and
/// half-diagonal h is taken as entirely inside (outside) the indicator when
/// |P'(c)| + 2|P''(c)| h < eps (|P'(c)| - 2|P''(c)| h >= eps); any other cell
/// is split 4 x 4, down to max_levels. Throws ConfigError for eps <= 0 or
/// grid < 256 and std::overflow_error if the integrand leaves double range.
double epsilon_count(const RootedPolynomial& poly, const Rect& region, double eps, int grid,
                     const EpsCountOptions& options = {});

/// One draw of the conditioned-root configuration: X0, then n - 1 further
/// roots X_2 .. X_n (stored as poly_rest).
struct OnSample {
  DiscPoint x0;
  RootedPolynomial poly_rest;
  cplx s_n;              ///< sum 1/(X0 - X_k)
  cplx r_n;              ///< sum 1/(X0 - X_k)^2
  double log_q = 0.0;    ///< sum log|X0 - X_k|
  bool in_annulus = false;
  bool in_event = false;
  int resamples = 0;     ///< redraws caused by S_n(X0) == 0
};

/// Sums and event flags for given X0 and other roots. Throws
/// std::domain_error if S_n(X0) == 0 or X0 coincides with a root.
OnSample make_on_sample(DiscPoint x0, std::vector<cplx> rest, double inner_radius);

/// Draws X0 then n - 1 roots from `stream`. in_annulus iff inner < |X0| < 1
/// with inner = annulus_inner_radius(n, kappa); in_event iff in_annulus,
/// log|S_n| < log_q and |X0 + 1/S_n| < 1. Throws ConfigError for n < 3.
OnSample sample_on_event(std::size_t n, double kappa, RngStream& stream);

/// Integrand of M_n: |(X0 - X_2) S_n|^{-4} on the event, else 0.
double mn_integrand(const OnSample& s);

/// Integrand of T_n(0): |1 + R_n / S_n^2|^2 on the event, else 0.
double t0_integrand(const OnSample& s);

struct OnEstimates {
  Estimate p_on;
  Estimate m_n;
  Estimate annulus_fraction;
  std::int64_t resamples = 0;
};

/// P(O_n) (binomial SE) and M_n (plain mean and SE) from one shared sample.
OnEstimates estimate_p_on_and_mn(std::size_t n, double kappa, std::int64_t trials,
                                 RngStream& stream);

struct T0Estimate {
  Estimate mean;             ///< plain mean
  Estimate median_of_means;  ///< 32 blocks
  double max_value = 0.0;
};

T0Estimate estimate_t0(std::size_t n, double kappa, std::int64_t trials, RngStream& stream);

}  // namespace lemni
