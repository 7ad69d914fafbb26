#include "lemni/components.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lemni/errors.hpp"

namespace lemni {

double annulus_inner_radius(std::size_t n, double kappa) {
  const double nn = static_cast<double>(n);
  return 1.0 - kappa * std::sqrt(std::log(nn) / nn);
}

namespace {

void require_converged(const CriticalSet& crit) {
  if (!crit.converged) throw std::invalid_argument("component count needs a converged critical set");
}

bool in_annulus(cplx b, double inner) {
  const double m = std::abs(b);
  return m > inner && m < 1.0;
}

}  // namespace

ComponentReport count_components(const RootedPolynomial& poly, const CriticalSet& crit,
                                 double kappa) {
  require_converged(crit);
  ComponentReport rep;
  rep.annulus_inner_radius = annulus_inner_radius(poly.degree(), kappa);
  rep.crit_log_values.reserve(crit.points.size());
  for (const cplx& b : crit.points) {
    const double v = log_abs_p(poly, b);
    rep.crit_log_values.push_back(v);
    if (std::abs(v) < kAmbiguousCriticalValue) ++rep.n_ambiguous;
    if (v > 0.0) {
      ++rep.n_crit_outside;
      if (in_annulus(b, rep.annulus_inner_radius)) ++rep.components_annulus;
    }
  }
  rep.components = 1 + rep.n_crit_outside;
  return rep;
}

int count_components_annulus(const RootedPolynomial& poly, const CriticalSet& crit,
                             double kappa) {
  return count_components(poly, crit, kappa).components_annulus;
}

int default_boundary_points(std::size_t n) {
  return static_cast<int>(std::max<std::size_t>(1024, 4 * n));
}

bool inradius_holds_at_radius(const RootedPolynomial& poly, double radius, int boundary_points) {
  if (boundary_points < 256)
    throw ConfigError("inradius: boundary_points must be >= 256, got " +
                      std::to_string(boundary_points));
  if (!(radius > 0.0))
    throw ConfigError("inradius: circle radius " + std::to_string(radius) + " is not positive");
  const double step = 2.0 * std::numbers::pi / boundary_points;
  for (int k = 0; k < boundary_points; ++k) {
    const cplx w = std::polar(radius, step * k);
    if (!(log_abs_p_fast(poly, w) < 0.0)) return false;
  }
  return true;
}

bool inradius_holds(const RootedPolynomial& poly, double kappa, int boundary_points) {
  return inradius_holds_at_radius(poly, annulus_inner_radius(poly.degree(), kappa), boundary_points);
}

std::int64_t count_outside(const RootedPolynomial& poly, std::int64_t samples, RngStream& stream) {
  if (samples < 1) throw std::invalid_argument("area_outside_mc: samples must be >= 1");
  std::int64_t outside = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const DiscPoint p = sample_unit_disc(stream);
    if (log_abs_p_fast(poly, p.value()) > 0.0) ++outside;
  }
  return outside;
}

double area_outside_mc(const RootedPolynomial& poly, std::int64_t samples, RngStream& stream) {
  const std::int64_t outside = count_outside(poly, samples, stream);
  return std::numbers::pi * static_cast<double>(outside) / static_cast<double>(samples);
}

}  // namespace lemni
