#pragma once

#include <cstddef>

namespace lemni {

inline constexpr double kZeta2 = 1.6449340668482264;  // pi^2 / 6

/// Li_2(x) for x in [0, 1], absolute error below 1e-14. The power series is
/// used up to x = 1/2 and the reflection
///   Li_2(x) = pi^2/6 - log(x) log(1 - x) - Li_2(1 - x)
/// above. Throws std::domain_error outside [0, 1].
double dilog(double x);

/// Var(log|1 - X|) for X uniform on the disc, computed as the quadrature
/// int_0^1 Li_2(rho^2) rho d(rho). Throws std::logic_error if the result
/// strays more than 1e-9 from (pi^2 - 6) / 12.
double var_log_one_minus_x();

/// sqrt((zeta(2) - 1) / pi).
double limit_constant();

/// sqrt(pi (zeta(2) - 1)), the large-n limit of sqrt(n) E[area outside].
double area_limit_constant();

/// Law of log|r - X|, X uniform on the disc.
struct MomentTable {
  double r = 0.0;
  double u = 0.0;       ///< mean, (r^2 - 1) / 2
  double sigma = 0.0;   ///< standard deviation
  double gamma3 = 0.0;  ///< third central moment
};

/// u from the closed form; the second and third central moments by adaptive
/// polar quadrature of (1/pi) int_0^1 int_0^{2 pi} g(log|r - rho e^{it}|) rho dt drho,
/// with the radial integral split at rho = r. Results are memoized per r
/// (thread-safe). Throws std::domain_error for r outside [0, 1] and
/// QuadratureError on non-convergence.
MomentTable moments_log_dist(double r);

/// Same as moments_log_dist without the cache.
MomentTable compute_moments_log_dist(double r);

/// Second moment E[(log|r - X|)^2] from the angular Fourier series,
///   int_0^1 2 rho [ (log M)^2 + Li_2((m / M)^2) / 2 ] d(rho),  M = max(r, rho), m = min(r, rho).
/// Independent of the polar quadrature; used to validate it.
double second_moment_fourier(double r);

/// P(log|r - X| <= x) = e^{2x}, valid for x <= log(1 - r). Throws
/// std::domain_error above that cut.
double log_dist_lower_cdf(double r, double x);

/// Standard normal CDF.
double phi(double x);

/// 2 pi int_{r0}^{1} [ 1 - Phi(C) + include_q1 * Q1(C) / sqrt(n) ] r dr where
///   r0 = max(0, 1 - kappa sqrt(log n / n)),
///   C  = sqrt(n) (c_n - u(r)) / sigma(r),
///   Q1(x) = -gamma3(r) / (6 sqrt(2 pi) sigma(r)^3) (x^2 - 1) e^{-x^2 / 2}.
/// Relative tolerance 1e-6. Throws ConfigError for n < 2, kappa <= 0 or
/// c_n < 0; propagates QuadratureError.
double edgeworth_area(std::size_t n, double kappa, double c_n, bool include_q1);

}  // namespace lemni
