#include "lemni/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lemni {

GaussLegendreRule make_gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < (m + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (m + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(k)] = -x;
    rule.nodes[static_cast<std::size_t>(m - 1 - k)] = x;
    rule.weights[static_cast<std::size_t>(k)] = w;
    rule.weights[static_cast<std::size_t>(m - 1 - k)] = w;
  }
  return rule;
}

const GaussLegendreRule& gauss_legendre(int m) {
  // std::map never moves its nodes, so returned references stay valid.
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, make_gauss_legendre(m)).first;
  return it->second;
}

}  // namespace lemni
