#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lemni/critpoints.hpp"
#include "lemni/polyeval.hpp"

namespace lemni {

/// |log|P(b)|| below this is counted by sign but reported as a near-tie.
inline constexpr double kAmbiguousCriticalValue = 1e-9;

/// 1 - kappa * sqrt(log n / n). May be <= 0 (the annulus then covers the
/// whole disc) and equals 1 at n == 1.
double annulus_inner_radius(std::size_t n, double kappa);

struct ComponentReport {
  int components = 1;          ///< always 1 + n_crit_outside
  int components_annulus = 1;
  int n_crit_outside = 0;
  int n_ambiguous = 0;         ///< critical values with |log|P|| < 1e-9
  std::vector<double> crit_log_values;  ///< log|P(b_j)| in critical-set order
  double annulus_inner_radius = 0.0;
};

/// Components of {log|P| < 0}: one plus the number of critical points whose
/// critical value has log|P| > 0. `kappa` sets the annulus used for the
/// components_annulus field. Throws std::invalid_argument unless
/// crit.converged.
ComponentReport count_components(const RootedPolynomial& poly, const CriticalSet& crit,
                                 double kappa = 2.0);

/// 1 + #{j : log|P(b_j)| > 0 and inner < |b_j| < 1}.
int count_components_annulus(const RootedPolynomial& poly, const CriticalSet& crit,
                             double kappa);

/// Whether log|P| < 0 at `boundary_points` equally spaced points of the
/// circle of radius annulus_inner_radius(n, kappa). By the maximum principle
/// this certifies (on the grid) that the closed disc of that radius lies in
/// the lemniscate. Throws ConfigError if the radius is <= 0 or
/// boundary_points < 256.
bool inradius_holds(const RootedPolynomial& poly, double kappa, int boundary_points);

/// Same check on the circle of an explicit radius in (0, 1].
bool inradius_holds_at_radius(const RootedPolynomial& poly, double radius, int boundary_points);

/// Default circle resolution for inradius_holds: max(1024, 4n).
int default_boundary_points(std::size_t n);

/// Number of `samples` uniform disc points drawn from `stream` with log|P| > 0.
std::int64_t count_outside(const RootedPolynomial& poly, std::int64_t samples, RngStream& stream);

/// pi * count_outside / samples, an unbiased estimate of the area of the
/// disc outside the lemniscate.
double area_outside_mc(const RootedPolynomial& poly, std::int64_t samples, RngStream& stream);

}  // namespace lemni
