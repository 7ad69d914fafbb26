#include "lemni/critpoints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace lemni {

namespace {

constexpr double kRootProximity = 1e-14;
constexpr int kProximitySweeps = 3;

cplx random_direction(RngStream& stream) {
  const double angle = 2.0 * std::numbers::pi * stream.uniform();
  return {std::cos(angle), std::sin(angle)};
}

// Smallest pairwise distance, by a sweep over points sorted on re.
double min_pairwise_distance(const std::vector<cplx>& pts) {
  if (pts.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pts[a].real() < pts[b].real(); });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const cplx a = pts[order[i]];
      const cplx b = pts[order[j]];
      if (b.real() - a.real() >= best) break;
      best = std::min(best, std::abs(a - b));
    }
  }
  return best;
}

struct Attempt {
  std::vector<cplx> z;
  std::vector<double> residual;
  int sweeps = 0;
  bool collided = false;
};

Attempt run_sweeps(const RootedPolynomial& poly, std::vector<cplx> z,
                   const SolverOptions& opt, RngStream& stream) {
  const std::size_t m = z.size();
  Attempt out;
  std::vector<char> done(m, 0);
  std::vector<int> near_root(m, 0);
  out.residual.assign(m, std::numeric_limits<double>::infinity());

  for (int sweep = 0; sweep < opt.max_iters; ++sweep) {
    out.sweeps = sweep + 1;
    bool moved = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      const RootSums rs = root_sums(poly, z[i]);
      if (rs.min_dist < kRootProximity) {
        if (++near_root[i] >= kProximitySweeps) {
          out.collided = true;
          out.z = std::move(z);
          return out;
        }
      } else {
        near_root[i] = 0;
      }
      const double res = std::abs(rs.s) * rs.min_dist;
      if (res < opt.sweep_tol) {
        done[i] = 1;
        continue;
      }
      const cplx newton = rs.s / (rs.s * rs.s - rs.r);
      double ar = 0.0, ai = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double wr = z[i].real() - z[j].real();
        const double wi = z[i].imag() - z[j].imag();
        const double d2 = wr * wr + wi * wi;
        ar += wr / d2;
        ai -= wi / d2;
      }
      cplx step = newton / (1.0 - newton * cplx{ar, ai});
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        // Degenerate update (iterates coincide or S^2 == R): kick the point.
        step = -1e-6 * std::max(rs.min_dist, 1e-12) * random_direction(stream);
      }
      z[i] -= step;
      moved = true;
      if (std::abs(step) < 1e-14 * rs.min_dist) done[i] = 1;
    }
    if (!moved) break;
  }
  for (std::size_t i = 0; i < m; ++i) out.residual[i] = critical_residual(poly, z[i]);
  out.z = std::move(z);
  return out;
}

bool certified(const Attempt& a, const SolverOptions& opt) {
  for (std::size_t i = 0; i < a.z.size(); ++i) {
    if (!(a.residual[i] < opt.accept_tol)) return false;
    if (std::abs(a.z[i]) > 1.0 + opt.disc_slack) return false;
  }
  return min_pairwise_distance(a.z) >= opt.min_separation;
}

}  // namespace

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::NonConvergence: return "non-convergence";
    case SolverStatus::RootCollision: return "root-collision";
  }
  return "unknown";
}

double CriticalSet::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

double critical_residual(const RootedPolynomial& poly, cplx z) {
  const RootSums rs = root_sums(poly, z);
  return std::abs(rs.s) * rs.min_dist;
}

std::vector<cplx> initial_guesses(const RootedPolynomial& poly, RngStream& stream) {
  const auto& x = poly.roots();
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("initial_guesses: need n >= 2");
  std::vector<cplx> guesses;
  guesses.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) d2 = std::min(d2, std::norm(x[k] - x[j]));
    guesses.push_back(x[k] + 1e-3 * std::sqrt(d2) * random_direction(stream));
  }
  return guesses;
}

CriticalSet find_critical_points(const RootedPolynomial& poly, RngStream& stream,
                                 const SolverOptions& options) {
  CriticalSet out;
  if (poly.degree() < 2) {
    out.converged = true;
    out.status = SolverStatus::Converged;
    return out;
  }
  for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
    Attempt a = run_sweeps(poly, initial_guesses(poly, stream), options, stream);
    out.points = std::move(a.z);
    out.iterations = a.sweeps;
    out.restarts = attempt;
    if (a.collided) {
      out.residuals.clear();
      for (const auto& p : out.points) out.residuals.push_back(critical_residual(poly, p));
      out.status = SolverStatus::RootCollision;
      out.converged = false;
      continue;
    }
    out.residuals = std::move(a.residual);
    a.residual = out.residuals;
    a.z = out.points;
    if (certified(a, options)) {
      out.status = SolverStatus::Converged;
      out.converged = true;
      return out;
    }
    out.status = SolverStatus::NonConvergence;
    out.converged = false;
  }
  return out;
}

CriticalSet find_critical_points(const RootedPolynomial& poly, int max_iters, double tol,
                                 RngStream& stream) {
  SolverOptions opt;
  opt.max_iters = max_iters;
  opt.accept_tol = tol;
  opt.sweep_tol = std::min(opt.sweep_tol, tol);
  return find_critical_points(poly, stream, opt);
}

std::vector<double> pairing_distances(const RootedPolynomial& poly, const CriticalSet& crit) {
  if (!crit.converged) throw std::invalid_argument("pairing_distances: critical set not converged");
  std::vector<double> d;
  d.reserve(crit.points.size());
  for (const auto& b : crit.points) d.push_back(root_sums(poly, b).min_dist);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace lemni
