#pragma once

#include <vector>

#include "lemni/polyeval.hpp"

namespace lemni {

enum class SolverStatus { Converged, NonConvergence, RootCollision };

const char* to_string(SolverStatus s);

/// The n-1 critical points of P with per-point certificates.
///
/// residuals[j] = |S(b_j)| * min_k |b_j - x_k| where S = sum 1/(z - x_k).
/// It is O(1) for an iterate parked on a root and tiny at a true zero of P'.
struct CriticalSet {
  std::vector<cplx> points;
  std::vector<double> residuals;
  int iterations = 0;  ///< sweeps in the final attempt
  int restarts = 0;
  bool converged = false;
  SolverStatus status = SolverStatus::NonConvergence;

  double max_residual() const;
};

struct SolverOptions {
  int max_iters = 500;
  double sweep_tol = 1e-12;    ///< a point stops moving once its residual is below this
  double accept_tol = 1e-10;   ///< every residual must be below this to report convergence
  double disc_slack = 1e-9;    ///< |b| <= 1 + slack (Gauss-Lucas)
  double min_separation = 1e-12;
  int max_restarts = 5;
};

/// Certificate |S(z)| * min_k |z - x_k| at an arbitrary point.
double critical_residual(const RootedPolynomial& poly, cplx z);

/// Starting points for the solver: roots x_0 .. x_{n-2}, each moved by
/// exactly 1e-3 * d_k in a direction drawn from `stream`, where d_k is the
/// distance from x_k to its nearest other root.
std::vector<cplx> initial_guesses(const RootedPolynomial& poly, RngStream& stream);

/// Zeros of S(z) = sum_k 1/(z - x_k), i.e. the critical points of P, by
/// Gauss-Seidel Aberth sweeps. The per-point Newton correction is
/// S / (S^2 - R) with R = sum 1/(z - x_k)^2, which is P'/P'' rewritten in
/// root sums; the repulsion sum_{j != i} 1/(z_i - z_j) keeps iterates on
/// distinct zeros.
///
/// Perturbations for the starting points (and restarts) come from `stream`.
/// An iterate that stays within 1e-14 of a root for three sweeps, or an
/// attempt that fails to certify, triggers a restart; after
/// `max_restarts` the last attempt is returned with converged == false.
/// For n == 1 the result is empty and converged.
CriticalSet find_critical_points(const RootedPolynomial& poly, RngStream& stream,
                                 const SolverOptions& options = {});

CriticalSet find_critical_points(const RootedPolynomial& poly, int max_iters, double tol,
                                 RngStream& stream);

/// Distance from each critical point to its nearest root, ascending.
/// Throws std::invalid_argument for a non-converged set.
std::vector<double> pairing_distances(const RootedPolynomial& poly, const CriticalSet& crit);

}  // namespace lemni
