#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "lemni/errors.hpp"

namespace lemni {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point rule (m >= 1), nodes ascending, from Newton iteration on P_m.
/// Rules are computed once per order and cached for the process lifetime.
const GaussLegendreRule& gauss_legendre(int m);
GaussLegendreRule make_gauss_legendre(int m);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  ///< sum of |coarse - refined| over accepted panels
  long evaluations = 0;
};

/// Tolerances for integrate_adaptive. Iteration stops once the summed
/// panel error estimates fall below max(abs_tol, rel_tol * |integral|).
struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_panels = 200000;
  int order = 10;
  int initial_panels = 1;
};

namespace detail {

template <class F>
double gl_panel(F& f, double a, double b, const GaussLegendreRule& rule, long& evals) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(mid + half * rule.nodes[k]);
  evals += static_cast<long>(rule.nodes.size());
  return s * half;
}

// value = left + right; error = |whole - value|.
struct Panel {
  double a, b, left, right, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel make_panel(F& f, double a, double b, double whole, const GaussLegendreRule& rule, long& evals) {
  const double m = 0.5 * (a + b);
  const double l = gl_panel(f, a, m, rule, evals);
  const double r = gl_panel(f, m, b, rule, evals);
  return {a, b, l, r, l + r, std::abs(l + r - whole)};
}

inline std::pair<double, double> panel_totals(std::priority_queue<Panel> heap) {
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  // Sum in left-to-right order so the total does not depend on heap layout.
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double v = 0.0, e = 0.0;
  for (const auto& p : all) {
    v += p.value;
    e += p.error;
  }
  return {v, e};
}

}  // namespace detail

/// Globally adaptive composite Gauss-Legendre on [a, b]: the panel with the
/// largest error estimate is bisected until the total estimate meets the
/// tolerance. Panel errors shrink with width even at integrable endpoint
/// singularities (log, square root), so those converge too.
/// Throws QuadratureError carrying the achieved value and error estimate
/// after max_panels panels or on a non-finite result.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadOptions& opt = {}) {
  QuadResult acc;
  if (a == b) return acc;
  const GaussLegendreRule& rule = gauss_legendre(opt.order);
  const int panels = std::max(1, opt.initial_panels);
  std::priority_queue<detail::Panel> heap;
  for (int p = 0; p < panels; ++p) {
    const double x0 = a + (b - a) * p / panels;
    const double x1 = (p + 1 == panels) ? b : a + (b - a) * (p + 1) / panels;
    const double whole = detail::gl_panel(f, x0, x1, rule, acc.evaluations);
    heap.push(detail::make_panel(f, x0, x1, whole, rule, acc.evaluations));
  }
  double value = 0.0, error = 0.0;
  std::tie(value, error) = detail::panel_totals(heap);
  auto fail = [&](const std::string& why) {
    return QuadratureError("adaptive quadrature on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "] " + why + ": estimate " +
                               std::to_string(value) + ", error " + std::to_string(error),
                           value, error);
  };
  int count = static_cast<int>(heap.size());
  for (;;) {
    if (!(error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)))) {
      // Running sums drift; confirm on exact totals before stopping.
      std::tie(value, error) = detail::panel_totals(heap);
      if (!(error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)))) break;
    }
    if (!std::isfinite(value)) throw fail("produced a non-finite value");
    if (count >= opt.max_panels) throw fail("exceeded the panel budget");
    const detail::Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) throw fail("reached the panel width limit");
    const detail::Panel left = detail::make_panel(f, worst.a, m, worst.left, rule, acc.evaluations);
    const detail::Panel right = detail::make_panel(f, m, worst.b, worst.right, rule, acc.evaluations);
    heap.push(left);
    heap.push(right);
    ++count;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }
  acc.value = value;
  acc.error = error;
  return acc;
}

/// Composite rule with `panels` equal panels of an m-point rule.
template <class F>
double integrate_fixed(F&& f, double a, double b, int panels, int order = 10) {
  const GaussLegendreRule& rule = gauss_legendre(order);
  long evals = 0;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double x0 = a + (b - a) * p / panels;
    const double x1 = (p + 1 == panels) ? b : a + (b - a) * (p + 1) / panels;
    s += detail::gl_panel(f, x0, x1, rule, evals);
  }
  return s;
}

}  // namespace lemni
