#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lemni/sampling.hpp"

namespace lemni {

using cplx = std::complex<double>;

/// Distance below which z is treated as sitting on a root.
inline constexpr double kRootCoincidence = 1e-300;

/// Monic polynomial P(z) = prod_k (z - x_k) held by its roots only.
///
/// Roots are pairwise distinct (separation > 1e-15) and, unless the
/// caller opts out with RootDomain::AnyFinite, strictly inside the unit disc.
/// The object is immutable after construction.
enum class RootDomain { OpenDisc, AnyFinite };

class RootedPolynomial {
 public:
  /// Throws std::invalid_argument if a root is non-finite, outside the open
  /// disc (OpenDisc only), closer than 1e-15 to another root, or if `roots`
  /// is empty.
  explicit RootedPolynomial(std::vector<cplx> roots, RootDomain domain = RootDomain::OpenDisc);

  /// Draws n successive disc points from `stream`.
  static RootedPolynomial sample(std::size_t n, RngStream& stream);

  std::size_t degree() const { return roots_.size(); }
  const std::vector<cplx>& roots() const { return roots_; }
  const cplx& root(std::size_t k) const { return roots_[k]; }

  /// Same polynomial with every root multiplied by `phase` (|phase| = 1).
  RootedPolynomial rotated(cplx phase) const;

 private:
  std::vector<cplx> roots_;
  RootDomain domain_;
};

/// Root indices excluded from a sum. Typically empty, {0} or {0, 1}.
using SkipSet = std::span<const std::size_t>;

/// log|P(z)| as the sequential sum of log|z - x_k| in root order. Returns
/// -infinity when z is within 1e-300 of a root.
double log_abs_p(const RootedPolynomial& poly, cplx z);

/// Same value as log_abs_p but takes one logarithm per call: the product
/// of |z - x_k|^2 is carried as mantissa and binary exponent. Used by the
/// pixel and Monte Carlo kernels.
double log_abs_p_fast(const RootedPolynomial& poly, cplx z);

/// sum_{k not in skip} 1 / (z - x_k). Throws std::domain_error if z sits on
/// a non-skipped root.
cplx s_sum(const RootedPolynomial& poly, cplx z, SkipSet skip = {});

/// sum_{k not in skip} 1 / (z - x_k)^2.
cplx r_sum(const RootedPolynomial& poly, cplx z, SkipSet skip = {});

/// sum_{k != skip_index} log|z - x_k|, i.e. log|P(z) / (z - x_skip)|.
double log_abs_q(const RootedPolynomial& poly, cplx z, std::size_t skip_index);

/// One pass over the roots returning everything the Newton-type kernels need.
struct RootSums {
  cplx s;                  ///< sum 1/(z - x_k)
  cplx r;                  ///< sum 1/(z - x_k)^2
  double min_dist = 0.0;   ///< min_k |z - x_k|
  std::size_t nearest = 0; ///< argmin
};
RootSums root_sums(const RootedPolynomial& poly, cplx z);

/// 1/w without the inf/nan bookkeeping of std::complex division.
inline cplx reciprocal(cplx w) {
  const double d = w.real() * w.real() + w.imag() * w.imag();
  return {w.real() / d, -w.imag() / d};
}

/// Roots as "re,im" lines with 17 significant digits.
void write_roots_csv(std::ostream& out, const RootedPolynomial& poly);
RootedPolynomial read_roots_csv(std::istream& in);

}  // namespace lemni
