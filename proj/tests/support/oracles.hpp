// Independent reference computations for the tests. Nothing here calls the
// library's numeric kernels.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Coefficients of prod (z - r_k), lowest degree first.
inline std::vector<cplx> expand(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

inline std::vector<cplx> derivative(const std::vector<cplx>& c) {
  std::vector<cplx> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

inline cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
  return v;
}

struct Values {
  cplx p, p1, p2;
};

inline Values evaluate(const std::vector<cplx>& roots, cplx z) {
  const auto c = expand(roots);
  const auto d1 = derivative(c);
  const auto d2 = derivative(d1);
  return {horner(c, z), horner(d1, z), horner(d2, z)};
}

/// Roots of a z^2 + b z + c, cancellation-free form.
inline std::array<cplx, 2> quadratic(cplx a, cplx b, cplx c) {
  const cplx disc = std::sqrt(b * b - 4.0 * a * c);
  // Choose the sign that avoids subtracting nearly equal numbers.
  const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
  return {q / a, c / q};
}

/// Winding number of f around the boundary of [x0,x1] x [y0,y1], by summing
/// principal-branch argument increments over `per_side` steps per side.
inline int winding_number(const std::function<cplx(cplx)>& f, double x0, double x1, double y0,
                          double y1, int per_side) {
  std::vector<cplx> path;
  auto side = [&](cplx a, cplx b) {
    for (int k = 0; k < per_side; ++k) path.push_back(a + (b - a) * (static_cast<double>(k) / per_side));
  };
  side({x0, y0}, {x1, y0});
  side({x1, y0}, {x1, y1});
  side({x1, y1}, {x0, y1});
  side({x0, y1}, {x0, y0});
  double total = 0.0;
  cplx prev = f(path.front());
  for (std::size_t k = 1; k <= path.size(); ++k) {
    const cplx cur = f(path[k % path.size()]);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Uniform point on the unit disc by rejection from the square, driven by a
/// standard-library engine (independent of the library's generator).
inline cplx rejection_disc(std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const cplx z{u(eng), u(eng)};
    if (std::norm(z) < 1.0) return z;
  }
}

inline std::vector<cplx> random_roots(std::mt19937_64& eng, std::size_t n) {
  std::vector<cplx> r(n);
  for (auto& z : r) z = rejection_disc(eng);
  return r;
}

/// erf by its Maclaurin series (fine for |x| <= 3).
inline double erf_series(double x) {
  double term = x, sum = x;
  for (int k = 1; k < 200; ++k) {
    term *= -x * x / k;
    const double add = term / (2 * k + 1);
    sum += add;
    if (std::abs(add) < 1e-18) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

/// E_theta[F^3] for F(theta) = -sum_k q^k cos(k theta) / k, by the triple
/// product rule E[cos(j t) cos(k t) cos((j + k) t)] = 1/4:
///   -(3/4) sum_{j,k >= 1} a_j a_k a_{j+k},  a_k = q^k / k.
inline double fourier_third_moment(double q, int terms = 4000) {
  std::vector<double> a(static_cast<std::size_t>(2 * terms + 2), 0.0);
  for (int k = 1; k < static_cast<int>(a.size()); ++k) a[k] = std::pow(q, k) / k;
  double s = 0.0;
  for (int j = 1; j <= terms; ++j) {
    if (a[j] < 1e-300) break;
    for (int k = 1; k <= terms; ++k) {
      const double t = a[j] * a[k] * a[j + k];
      if (t < 1e-22 && k > j) break;
      s += t;
    }
  }
  return -0.75 * s;
}

}  // namespace oracle
